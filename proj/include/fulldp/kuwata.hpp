// The Kuwata family C_{lambda mu nu} of quartics with 28 rational bitangents in
// closed form.
#pragma once

#include <compare>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "fulldp/quartic.hpp"

namespace fulldp::kuwata {

struct KuwataParams {
  gf::Elem lambda, mu, nu;

  friend bool operator==(const KuwataParams&, const KuwataParams&) = default;
  friend auto operator<=>(const KuwataParams&, const KuwataParams&) = default;
};

class DegenerateParams : public quartic::QuarticError {
 public:
  using QuarticError::QuarticError;
};

/// (1-l^2)(1-m^2)(1-n^2)(1-m^2 l^2)(1-n^2 l^2)(1-m^2 n^2)(1-l^2 m^2 n^2) != 0
bool nondegenerate(const gf::Field& F, const KuwataParams& k);

/// ((1-m^2n^2)x^2 + (1-n^2l^2)y^2 + (1-m^2l^2)z^2)^2
///   - 4(1-l^2m^2n^2)((1-n^2)x^2y^2 + (1-l^2)y^2z^2 + (1-m^2)z^2x^2)
quartic::TernaryQuartic kuwata_quartic(const gf::FieldPtr& field, const KuwataParams& k);

/// The 28 bitangents in closed form, normalized, in a fixed listing order (12 lines
/// through coordinate points, then the four sign families). Throws DegenerateParams
/// on degenerate parameters or coinciding lines.
std::vector<plane::ProjLine> kuwata_bitangents(const gf::FieldPtr& field, const KuwataParams& k);

/// All nondegenerate triples, lexicographic in (lambda, mu, nu) codes.
std::vector<KuwataParams> enumerate_kuwata(const gf::Field& F);

/// True when some parameter is zero; then the closed-form lines coincide in pairs.
bool has_zero_parameter(const KuwataParams& k);

/// "q;lambda;mu;nu" with q the field order; parse also accepts "p^k" and full field
/// serializations.
std::string format(const gf::Field& F, const KuwataParams& k);
std::pair<gf::FieldPtr, KuwataParams> parse(std::string_view text);

}  // namespace fulldp::kuwata
