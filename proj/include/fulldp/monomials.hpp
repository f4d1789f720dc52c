// Fixed graded-lex order (x > y > z) of the 15 ternary quartic monomials.
#pragma once

#include <array>

namespace fulldp {

struct Exponents {
  int x, y, z;
};

inline constexpr std::array<Exponents, 15> kQuarticMonomials{{
    {4, 0, 0}, {3, 1, 0}, {3, 0, 1}, {2, 2, 0}, {2, 1, 1},
    {2, 0, 2}, {1, 3, 0}, {1, 2, 1}, {1, 1, 2}, {1, 0, 3},
    {0, 4, 0}, {0, 3, 1}, {0, 2, 2}, {0, 1, 3}, {0, 0, 4},
}};

/// Position of x^a y^b z^(4-a-b) in kQuarticMonomials.
constexpr int monomial_index(int a, int b) {
  // Degree-4 monomials with x-exponent a start after those with larger x-exponent.
  int offset = 0;
  for (int e = 4; e > a; --e) offset += 4 - e + 1;
  return offset + (4 - a - b);
}

}  // namespace fulldp
