// Dense univariate polynomials over a gf::Field. Coefficients are stored low to high
// and kept trimmed, so the zero polynomial is the empty vector.
#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "fulldp/gf.hpp"

namespace fulldp::poly {

using Poly = std::vector<gf::Elem>;

void trim(Poly& a);
inline int degree(const Poly& a) { return static_cast<int>(a.size()) - 1; }
inline bool is_zero(const Poly& a) { return a.empty(); }

Poly x_power(const gf::Field& F, std::size_t n);
Poly add(const gf::Field& F, const Poly& a, const Poly& b);
Poly sub(const gf::Field& F, const Poly& a, const Poly& b);
Poly mul(const gf::Field& F, const Poly& a, const Poly& b);
Poly scale(const gf::Field& F, const Poly& a, gf::Elem c);
Poly monic(const gf::Field& F, const Poly& a);
Poly derivative(const gf::Field& F, const Poly& a);

/// Quotient and remainder; throws on division by zero.
std::pair<Poly, Poly> divmod(const gf::Field& F, const Poly& a, const Poly& b);
Poly mod(const gf::Field& F, const Poly& a, const Poly& m);
/// Exact division; throws if the remainder is nonzero.
Poly exact_div(const gf::Field& F, const Poly& a, const Poly& b);
/// Monic gcd (zero if both inputs are zero).
Poly gcd(const gf::Field& F, Poly a, Poly b);
Poly powmod(const gf::Field& F, const Poly& base, std::uint64_t e, const Poly& m);

gf::Elem eval(const gf::Field& F, const Poly& a, gf::Elem x);

/// Distinct roots of a nonzero polynomial in F, sorted by code. Small fields are
/// scanned; larger ones go through gcd with x^q - x and Cantor-Zassenhaus splitting
/// with a fixed seed, so the result is deterministic.
std::vector<gf::Elem> roots(const gf::Field& F, const Poly& a);

/// Rabin's test. The polynomial need not be monic but must be nonzero.
bool is_irreducible(const gf::Field& F, const Poly& a);

}  // namespace fulldp::poly
