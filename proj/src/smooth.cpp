// Smoothness of a plane quartic: the partial derivatives have no common projective zero
// over the algebraic closure.
//
// Affine chart z = 1: r(x) = Res_y(f_x, f_y) vanishes at the x-coordinate of every
// common zero. A singular point of a reduced quartic has degree <= 6 over F_q (there
// are at most six singular points and Frobenius permutes them), so only roots of r of
// degree <= 6 matter. For each such root x0, found in F_{q^d} via distinct-degree
// splitting and Cantor-Zassenhaus, the point is singular iff f_x, f_y, f_z restricted
// to x = x0 have a nonconstant common factor in y. Points with z = 0 are handled as a
// one-variable problem. An identically zero resultant means f_x and f_y share a curve,
// which meets f_z = 0 by Bezout; we still retry under a few shears first so a witness
// point is found when one exists in a better chart.
#include <array>
#include <map>
#include <mutex>

#include "fulldp/poly.hpp"
#include "fulldp/quartic.hpp"
#include "ternary.hpp"

namespace fulldp::quartic {

using gf::Elem;
using gf::Field;
using poly::Poly;
using detail::Form;

namespace {

constexpr int kMaxSingularDegree = 6;
constexpr int kShears = 3;

// Cubic form in chart z = 1 as a polynomial in y with coefficients in F[x].
std::vector<Poly> chart_poly(const Form& f) {
  std::vector<Poly> out(static_cast<std::size_t>(f.degree + 1));
  for (int a = 0; a <= f.degree; ++a)
    for (int b = 0; a + b <= f.degree; ++b) {
      auto& coeff = out[static_cast<std::size_t>(b)];
      if (coeff.size() <= static_cast<std::size_t>(a)) coeff.resize(static_cast<std::size_t>(a) + 1);
      coeff[static_cast<std::size_t>(a)] = f.c[a][b];
    }
  for (auto& c : out) poly::trim(c);
  while (!out.empty() && out.back().empty()) out.pop_back();
  return out;
}

// Determinant of a matrix over F[x] by fraction-free (Bareiss) elimination.
Poly bareiss_det(const Field& F, std::vector<std::vector<Poly>> m) {
  const std::size_t n = m.size();
  if (n == 0) return Poly{F.one()};
  bool negate = false;
  Poly prev{F.one()};
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m[k][k].empty()) {
      std::size_t r = k + 1;
      while (r < n && m[r][k].empty()) ++r;
      if (r == n) return {};
      std::swap(m[k], m[r]);
      negate = !negate;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        Poly num = poly::sub(F, poly::mul(F, m[i][j], m[k][k]), poly::mul(F, m[i][k], m[k][j]));
        m[i][j] = poly::exact_div(F, num, prev);
      }
    }
    prev = m[k][k];
  }
  Poly det = m[n - 1][n - 1];
  if (negate) det = poly::scale(F, det, F.neg(F.one()));
  return det;
}

// Res_y(A, B) for A, B given as coefficient lists in y (nonempty, leading entry nonzero).
Poly resultant_y(const Field& F, const std::vector<Poly>& A, const std::vector<Poly>& B) {
  const std::size_t m = A.size() - 1, n = B.size() - 1;
  const std::size_t size = m + n;
  std::vector<std::vector<Poly>> syl(size, std::vector<Poly>(size));
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t i = 0; i <= m; ++i) syl[r][r + i] = A[m - i];
  for (std::size_t r = 0; r < m; ++r)
    for (std::size_t i = 0; i <= n; ++i) syl[n + r][r + i] = B[n - i];
  return bareiss_det(F, std::move(syl));
}

// Specializes a chart polynomial at x = x0 (x0 in K, coefficients embedded by emb).
Poly specialize(const gf::Embedding& emb, const std::vector<Poly>& f, Elem x0) {
  const Field& K = *emb.target();
  Poly out;
  for (const auto& coeff : f) {
    Elem v = K.zero();
    for (std::size_t i = coeff.size(); i-- > 0;) v = K.add(K.mul(v, x0), emb.apply(coeff[i]));
    out.push_back(v);
  }
  poly::trim(out);
  return out;
}

bool common_factor(const Field& K, const Poly& a, const Poly& b, const Poly& c) {
  const Poly g = poly::gcd(K, poly::gcd(K, a, b), c);
  return g.empty() || poly::degree(g) >= 1;
}

const gf::Embedding& extension(const gf::FieldPtr& base, std::uint32_t d) {
  static std::mutex mutex;
  static std::map<std::pair<std::string, std::uint32_t>, std::unique_ptr<gf::Embedding>> cache;
  std::lock_guard lock(mutex);
  auto& slot = cache[{base->serialize(), d}];
  if (!slot) slot = std::make_unique<gf::Embedding>(gf::Embedding::make(base, gf::make_field(base->p(), base->k() * d)));
  return *slot;
}

enum class Verdict { Smooth, Singular, Degenerate };

Verdict affine_check(const gf::FieldPtr& field, const Form& f) {
  const Field& F = *field;
  const Form fx = detail::partial(F, f, 0), fy = detail::partial(F, f, 1), fz = detail::partial(F, f, 2);
  const auto A = chart_poly(fx), B = chart_poly(fy), C = chart_poly(fz);
  if (A.empty() || B.empty()) return Verdict::Degenerate;
  const Poly r = resultant_y(F, A, B);
  if (r.empty()) return Verdict::Degenerate;
  if (poly::degree(r) == 0) return Verdict::Smooth;

  // Distinct-degree split: exact[d] collects the irreducible factors of degree d.
  const Poly x{F.zero(), F.one()};
  Poly frob = x;
  std::vector<Poly> exact(kMaxSingularDegree + 1);
  for (int d = 1; d <= kMaxSingularDegree; ++d) {
    frob = poly::powmod(F, frob, F.q(), r);
    Poly g = poly::gcd(F, r, poly::sub(F, frob, x));
    for (int e = 1; e < d; ++e)
      if (d % e == 0 && poly::degree(exact[e]) > 0) g = poly::exact_div(F, g, exact[e]);
    exact[d] = poly::monic(F, g);
    if (poly::degree(exact[d]) <= 0) continue;

    const auto& emb = extension(field, static_cast<std::uint32_t>(d));
    const Field& K = *emb.target();
    Poly lifted;
    for (auto c : exact[d]) lifted.push_back(emb.apply(c));
    // Frobenius conjugates give conjugate verdicts; one root per orbit would do, but
    // the orbits are tiny and testing every root keeps this simple.
    for (Elem x0 : poly::roots(K, lifted)) {
      if (common_factor(K, specialize(emb, A, x0), specialize(emb, B, x0), specialize(emb, C, x0)))
        return Verdict::Singular;
    }
  }
  return Verdict::Smooth;
}

bool singular_at_infinity(const Field& F, const Form& f) {
  const Form d[3] = {detail::partial(F, f, 0), detail::partial(F, f, 1), detail::partial(F, f, 2)};
  // Points (x:1:0): terms with no z, as polynomials in x.
  Poly at[3];
  for (int v = 0; v < 3; ++v) {
    const int deg = d[v].degree;
    Poly p(static_cast<std::size_t>(deg + 1));
    for (int a = 0; a <= deg; ++a) p[static_cast<std::size_t>(a)] = d[v].c[a][deg - a];
    poly::trim(p);
    at[v] = std::move(p);
  }
  if (common_factor(F, at[0], at[1], at[2])) return true;
  // (1:0:0)
  return d[0].c[3][0].code == 0 && d[1].c[3][0].code == 0 && d[2].c[3][0].code == 0;
}

}  // namespace

bool is_smooth(const TernaryQuartic& Q) {
  const Field& F = Q.field();
  const Form f = Form::quartic(Q.coeffs());
  if (singular_at_infinity(F, f)) return false;
  TernaryQuartic current = Q;
  for (int attempt = 0; attempt <= kShears; ++attempt) {
    const Verdict v = affine_check(Q.field_ptr(), Form::quartic(current.coeffs()));
    if (v == Verdict::Smooth) {
      if (attempt == 0) return true;
      // The sheared form is singular iff Q is; its own line at infinity is still open.
      return !singular_at_infinity(F, Form::quartic(current.coeffs()));
    }
    if (v == Verdict::Singular) return false;
    // Shear (x, y, z) -> (x, y, z + j x + j^2 y).
    const Elem j = F.from_int(attempt + 1);
    const std::array<Elem, 9> shear{F.one(), F.zero(), F.zero(), F.zero(), F.one(), F.zero(), j, F.sqr(j), F.one()};
    current = substitute(Q, shear);
  }
  return false;
}

}  // namespace fulldp::quartic
