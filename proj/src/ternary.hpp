// Internal: homogeneous ternary forms of degree <= 4 as dense [x-exp][y-exp] arrays,
// the z-exponent being implied by the degree.
#pragma once

#include <array>

#include "fulldp/gf.hpp"
#include "fulldp/monomials.hpp"

namespace fulldp::detail {

struct Form {
  int degree = 0;
  std::array<std::array<gf::Elem, 5>, 5> c{};  // c[a][b] = coefficient of x^a y^b z^(degree-a-b)

  static Form constant(gf::Elem v) {
    Form f;
    f.c[0][0] = v;
    return f;
  }
  static Form linear(gf::Elem cx, gf::Elem cy, gf::Elem cz) {
    Form f;
    f.degree = 1;
    f.c[1][0] = cx;
    f.c[0][1] = cy;
    f.c[0][0] = cz;
    return f;
  }
  template <class Coeffs>
  static Form quartic(const Coeffs& coeffs) {
    Form f;
    f.degree = 4;
    for (std::size_t m = 0; m < 15; ++m) f.c[kQuarticMonomials[m].x][kQuarticMonomials[m].y] = coeffs[m];
    return f;
  }
};

inline Form multiply(const gf::Field& F, const Form& u, const Form& v) {
  Form out;
  out.degree = u.degree + v.degree;
  for (int a1 = 0; a1 <= u.degree; ++a1)
    for (int b1 = 0; a1 + b1 <= u.degree; ++b1) {
      const gf::Elem x = u.c[a1][b1];
      if (x.code == 0) continue;
      for (int a2 = 0; a2 <= v.degree; ++a2)
        for (int b2 = 0; a2 + b2 <= v.degree; ++b2) {
          const gf::Elem y = v.c[a2][b2];
          if (y.code == 0) continue;
          out.c[a1 + a2][b1 + b2] = F.add(out.c[a1 + a2][b1 + b2], F.mul(x, y));
        }
    }
  return out;
}

inline void add_scaled(const gf::Field& F, Form& acc, const Form& v, gf::Elem s) {
  for (int a = 0; a <= v.degree; ++a)
    for (int b = 0; a + b <= v.degree; ++b)
      if (v.c[a][b].code != 0) acc.c[a][b] = F.add(acc.c[a][b], F.mul(v.c[a][b], s));
}

/// Partial derivative with respect to variable 0 (x), 1 (y) or 2 (z).
inline Form partial(const gf::Field& F, const Form& f, int var) {
  Form out;
  out.degree = f.degree - 1;
  for (int a = 0; a <= f.degree; ++a)
    for (int b = 0; a + b <= f.degree; ++b) {
      const int c = f.degree - a - b;
      const gf::Elem v = f.c[a][b];
      if (v.code == 0) continue;
      if (var == 0 && a > 0) out.c[a - 1][b] = F.mul(v, F.from_int(a));
      if (var == 1 && b > 0) out.c[a][b - 1] = F.mul(v, F.from_int(b));
      if (var == 2 && c > 0) out.c[a][b] = F.mul(v, F.from_int(c));
    }
  return out;
}

}  // namespace fulldp::detail
