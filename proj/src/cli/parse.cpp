#include <algorithm>
#include <array>
#include <cctype>
#include <fstream>
#include <map>

#include "fulldp/cli.hpp"

namespace fulldp::cli {

using gf::Elem;
using gf::Field;

ParseError::ParseError(const std::string& message, std::size_t position)
    : InputError(message + " at position " + std::to_string(position)), position_(position) {}

namespace {

constexpr int kMaxExponent = 64;
constexpr int kMaxDegree = 64;

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

using Monomial = std::array<int, 3>;

struct SparsePoly {
  std::map<Monomial, Elem> terms;  // nonzero coefficients only
};

class Parser {
 public:
  Parser(std::string_view text, std::size_t offset, const Field& F) : s_(text), offset_(offset), F_(F) {}

  SparsePoly parse() {
    SparsePoly p = expr();
    skip();
    if (pos_ != s_.size()) fail(std::string("unexpected '") + s_[pos_] + "'");
    return p;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, offset_ + pos_); }

  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool peek(char c) {
    skip();
    return pos_ < s_.size() && s_[pos_] == c;
  }
  bool at_factor_start() {
    skip();
    if (pos_ >= s_.size()) return false;
    const char c = s_[pos_];
    return std::isalnum(static_cast<unsigned char>(c)) || c == '(';
  }

  SparsePoly add(SparsePoly a, const SparsePoly& b, bool negate) const {
    for (const auto& [m, c] : b.terms) {
      const Elem v = F_.add(a.terms.count(m) ? a.terms[m] : F_.zero(), negate ? F_.neg(c) : c);
      if (v.code == 0)
        a.terms.erase(m);
      else
        a.terms[m] = v;
    }
    return a;
  }

  SparsePoly mul(const SparsePoly& a, const SparsePoly& b) {
    SparsePoly out;
    for (const auto& [ma, ca] : a.terms)
      for (const auto& [mb, cb] : b.terms) {
        const Monomial m{ma[0] + mb[0], ma[1] + mb[1], ma[2] + mb[2]};
        if (m[0] + m[1] + m[2] > kMaxDegree) fail("degree exceeds " + std::to_string(kMaxDegree));
        const Elem v = F_.add(out.terms.count(m) ? out.terms[m] : F_.zero(), F_.mul(ca, cb));
        if (v.code == 0)
          out.terms.erase(m);
        else
          out.terms[m] = v;
      }
    return out;
  }

  SparsePoly constant(Elem c) const {
    SparsePoly p;
    if (c.code != 0) p.terms[{0, 0, 0}] = c;
    return p;
  }

  SparsePoly expr() {
    SparsePoly acc;
    bool negate = false;
    if (peek('+')) {
      ++pos_;
    } else if (peek('-')) {
      ++pos_;
      negate = true;
    }
    acc = add(acc, term(), negate);
    for (;;) {
      if (peek('+')) {
        ++pos_;
        acc = add(acc, term(), false);
      } else if (peek('-')) {
        ++pos_;
        acc = add(acc, term(), true);
      } else {
        return acc;
      }
    }
  }

  SparsePoly term() {
    if (!at_factor_start()) fail(pos_ < s_.size() ? std::string("unexpected '") + s_[pos_] + "'" : "unexpected end of input");
    SparsePoly acc = factor();
    for (;;) {
      if (peek('*')) {
        ++pos_;
        if (!at_factor_start()) fail("expected a factor after '*'");
        acc = mul(acc, factor());
      } else if (at_factor_start()) {
        acc = mul(acc, factor());
      } else {
        return acc;
      }
    }
  }

  int exponent() {
    skip();
    const std::size_t start = pos_;
    std::int64_t v = 0;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
      v = v * 10 + (s_[pos_] - '0');
      if (v > kMaxExponent) {
        pos_ = start;
        fail("exponent larger than " + std::to_string(kMaxExponent));
      }
      ++pos_;
    }
    if (pos_ == start) fail("expected an exponent");
    return static_cast<int>(v);
  }

  SparsePoly power(const SparsePoly& base, int e) {
    SparsePoly out = constant(F_.one());
    for (int i = 0; i < e; ++i) out = mul(out, base);
    return out;
  }

  SparsePoly factor() {
    skip();
    SparsePoly base;
    const char c = s_[pos_];
    if (c == '(') {
      ++pos_;
      base = expr();
      if (!peek(')')) fail("expected ')'");
      ++pos_;
    } else if (std::isdigit(static_cast<unsigned char>(c))) {
      // Integer literal, reduced digit by digit so any length is fine.
      Elem v = F_.zero();
      const Elem ten = F_.from_int(10);
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
        v = F_.add(F_.mul(v, ten), F_.from_int(s_[pos_] - '0'));
        ++pos_;
      }
      base = constant(v);
    } else if (c == 'x' || c == 'y' || c == 'z') {
      ++pos_;
      Monomial m{0, 0, 0};
      m[static_cast<std::size_t>(c - 'x')] = 1;
      base.terms[m] = F_.one();
    } else if (std::isalpha(static_cast<unsigned char>(c))) {
      fail(std::string("unknown variable '") + c + "'");
    } else {
      fail(std::string("unexpected '") + c + "'");
    }
    if (peek('^')) {
      ++pos_;
      return power(base, exponent());
    }
    return base;
  }

  std::string_view s_;
  std::size_t offset_;
  const Field& F_;
  std::size_t pos_ = 0;
};

std::string monomial_text(const Monomial& m) {
  std::string out;
  const char* names = "xyz";
  for (int v = 0; v < 3; ++v) {
    if (m[v] == 0) continue;
    if (!out.empty()) out += '*';
    out += names[v];
    if (m[v] > 1) out += "^" + std::to_string(m[v]);
  }
  return out.empty() ? "1" : out;
}

std::vector<std::string_view> split(std::string_view text, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  for (;;) {
    const auto pos = text.find(sep, start);
    out.push_back(text.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
    if (pos == std::string_view::npos) return out;
    start = pos + 1;
  }
}

}  // namespace

quartic::TernaryQuartic parse_quartic(std::string_view text, const gf::FieldPtr& field) {
  std::size_t offset = 0;
  // Optional "w^2 =" left-hand side.
  if (const auto eq = text.find('='); eq != std::string_view::npos) {
    std::string lhs;
    for (char c : text.substr(0, eq))
      if (!std::isspace(static_cast<unsigned char>(c))) lhs += c;
    if (lhs != "w^2" && lhs != "w**2" && lhs != "w*w") throw ParseError("left-hand side must be w^2", 0);
    offset = eq + 1;
  }
  const SparsePoly p = Parser(text.substr(offset), offset, *field).parse();
  quartic::Coeffs c;
  c.fill(field->zero());
  for (const auto& [m, v] : p.terms) {
    if (m[0] + m[1] + m[2] != 4)
      throw InputError("monomial " + monomial_text(m) + " has degree " + std::to_string(m[0] + m[1] + m[2]) +
                       ", expected 4");
    c[monomial_index(m[0], m[1])] = v;
  }
  try {
    return quartic::TernaryQuartic(field, c);
  } catch (const quartic::QuarticError& e) {
    throw InputError(e.what());
  }
}

quartic::TernaryQuartic parse_coefficients(std::string_view text, const gf::FieldPtr& field) {
  const char sep = field->k() == 1 ? ',' : ';';
  const auto parts = split(trim(text), sep);
  if (parts.size() != 15)
    throw InputError("expected 15 coefficients separated by '" + std::string(1, sep) + "', got " +
                     std::to_string(parts.size()));
  quartic::Coeffs c;
  try {
    for (std::size_t i = 0; i < 15; ++i) c[i] = field->parse(trim(parts[i]));
    return quartic::TernaryQuartic(field, c);
  } catch (const std::exception& e) {
    throw InputError(e.what());
  }
}

QuarticSource classify_source(std::string_view text) {
  QuarticSource src;
  src.text = std::string(trim(text));
  const bool has_var = std::any_of(src.text.begin(), src.text.end(), [](char c) {
    return std::isalpha(static_cast<unsigned char>(c)) != 0;
  });
  if (has_var)
    src.kind = QuarticSource::Kind::Polynomial;
  else if (std::count(src.text.begin(), src.text.end(), ';') == 3)
    src.kind = QuarticSource::Kind::Kuwata;
  else
    src.kind = QuarticSource::Kind::Coefficients;
  return src;
}

std::vector<QuarticSource> read_source_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path);
  std::vector<QuarticSource> out;
  std::string line;
  while (std::getline(in, line)) {
    if (const auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    if (trim(line).empty()) continue;
    out.push_back(classify_source(line));
  }
  return out;
}

std::vector<QuarticSource> read_sources(std::string_view spec) {
  spec = trim(spec);
  if (!spec.empty() && spec.front() == '@') return read_source_file(std::string(spec.substr(1)));
  return {classify_source(spec)};
}

quartic::TernaryQuartic resolve(const QuarticSource& src, const gf::FieldPtr& field) {
  switch (src.kind) {
    case QuarticSource::Kind::Polynomial:
      return parse_quartic(src.text, field);
    case QuarticSource::Kind::Coefficients:
      return parse_coefficients(src.text, field);
    case QuarticSource::Kind::Kuwata: {
      std::pair<gf::FieldPtr, kuwata::KuwataParams> parsed;
      try {
        parsed = kuwata::parse(src.text);
      } catch (const std::exception& e) {
        throw InputError(e.what());
      }
      if (!parsed.first->same_as(*field))
        throw InputError("Kuwata source " + src.text + " names F_" + std::to_string(parsed.first->q()) +
                         " but the run is over F_" + std::to_string(field->q()));
      try {
        return kuwata::kuwata_quartic(field, parsed.second);
      } catch (const kuwata::DegenerateParams& e) {
        throw InputError(e.what());
      }
    }
  }
  throw InputError("unknown source kind");
}

}  // namespace fulldp::cli
