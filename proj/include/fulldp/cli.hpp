// Command layer behind the `fulldp` tool: quartic text parsing, input sources, the
// three commands and their JSON reports.
#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "fulldp/classify.hpp"
#include "fulldp/kuwata.hpp"

namespace fulldp::cli {

inline constexpr int kExitClean = 0;
inline constexpr int kExitAnomalies = 1;
inline constexpr int kExitInputError = 2;
inline constexpr int kSchemaVersion = 1;

/// Bad user input; maps to exit code 2.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Syntax error in polynomial text, with a 0-based character position.
class ParseError : public InputError {
 public:
  ParseError(const std::string& message, std::size_t position);
  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

/// Sum of signed terms in x, y, z with integer coefficients, `^` powers, `*` or
/// juxtaposition for products and parenthesized subexpressions (which may be raised to a
/// power). A leading "w^2 =" is ignored. Every surviving monomial must have degree 4.
quartic::TernaryQuartic parse_quartic(std::string_view text, const gf::FieldPtr& field);

/// 15 coefficients in monomial order, separated by ',' (prime fields) or ';'.
quartic::TernaryQuartic parse_coefficients(std::string_view text, const gf::FieldPtr& field);

struct QuarticSource {
  enum class Kind { Polynomial, Coefficients, Kuwata };
  Kind kind = Kind::Polynomial;
  std::string text;  // trimmed; also the source's label in reports
};

/// Classifies one source line: "q;l;m;n" is a Kuwata triple, text containing x, y or z
/// is a polynomial, anything else a coefficient vector.
QuarticSource classify_source(std::string_view text);

/// One source per line; blank lines and `#` comments are skipped.
std::vector<QuarticSource> read_source_file(const std::string& path);

/// "text" or "@file".
std::vector<QuarticSource> read_sources(std::string_view spec);

/// Resolves a source over the field. Kuwata triples must name the same field.
quartic::TernaryQuartic resolve(const QuarticSource& src, const gf::FieldPtr& field);

struct Options {
  gf::FieldPtr field;
  std::vector<QuarticSource> sources;  // --quartic and --extra entries, in order
  enum class Mode { Fast, Full } mode = Mode::Full;
  int workers = 0;  // 0: OpenMP default
  std::uint64_t seed = 1;
  std::size_t sample = 16;  // fast mode: distinct curves re-checked by a full line scan
  bool timing = false;
  bool details = false;  // scan-kuwata: list every audited Kuwata quartic
};

struct Outcome {
  nlohmann::json report;
  int exit_code = kExitClean;
};

Outcome cmd_audit(const Options& opt);
Outcome cmd_scan_kuwata(const Options& opt);
Outcome cmd_classify(const Options& opt);

/// Canonical text: sorted keys, two-space indent, trailing newline.
std::string dump(const nlohmann::json& report);

/// One line per curve or class: a CSV summary of the report.
std::string to_csv(const nlohmann::json& report);

// Report fragments, exposed for tests.
nlohmann::json quartic_json(const quartic::TernaryQuartic& Q);
nlohmann::json config_json(const config::ConfigReport& r);
nlohmann::json histogram_json(const config::ConfigReport& r);

}  // namespace fulldp::cli
