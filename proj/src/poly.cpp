#include "fulldp/poly.hpp"

#include <algorithm>
#include <random>
#include <stdexcept>

namespace fulldp::poly {

using gf::Elem;
using gf::Field;

void trim(Poly& a) {
  while (!a.empty() && a.back().code == 0) a.pop_back();
}

Poly x_power(const Field& F, std::size_t n) {
  Poly r(n + 1, F.zero());
  r[n] = F.one();
  return r;
}

Poly add(const Field& F, const Poly& a, const Poly& b) {
  Poly r(std::max(a.size(), b.size()), F.zero());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i];
  for (std::size_t i = 0; i < b.size(); ++i) r[i] = F.add(r[i], b[i]);
  trim(r);
  return r;
}

Poly sub(const Field& F, const Poly& a, const Poly& b) {
  Poly r(std::max(a.size(), b.size()), F.zero());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i];
  for (std::size_t i = 0; i < b.size(); ++i) r[i] = F.sub(r[i], b[i]);
  trim(r);
  return r;
}

Poly mul(const Field& F, const Poly& a, const Poly& b) {
  if (a.empty() || b.empty()) return {};
  Poly r(a.size() + b.size() - 1, F.zero());
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].code == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] = F.add(r[i + j], F.mul(a[i], b[j]));
  }
  trim(r);
  return r;
}

Poly scale(const Field& F, const Poly& a, Elem c) {
  Poly r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = F.mul(a[i], c);
  trim(r);
  return r;
}

Poly monic(const Field& F, const Poly& a) {
  if (a.empty()) return a;
  return scale(F, a, F.inv(a.back()));
}

Poly derivative(const Field& F, const Poly& a) {
  if (a.size() <= 1) return {};
  Poly r(a.size() - 1);
  for (std::size_t i = 1; i < a.size(); ++i) r[i - 1] = F.mul(a[i], F.from_int(static_cast<std::int64_t>(i)));
  trim(r);
  return r;
}

std::pair<Poly, Poly> divmod(const Field& F, const Poly& a, const Poly& b) {
  if (b.empty()) throw std::domain_error("polynomial division by zero");
  if (a.size() < b.size()) return {{}, a};
  Poly rem = a;
  Poly quo(a.size() - b.size() + 1, F.zero());
  const Elem lead_inv = F.inv(b.back());
  for (std::size_t i = quo.size(); i-- > 0;) {
    const Elem c = F.mul(rem[i + b.size() - 1], lead_inv);
    quo[i] = c;
    if (c.code == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) rem[i + j] = F.sub(rem[i + j], F.mul(c, b[j]));
  }
  trim(quo);
  trim(rem);
  return {std::move(quo), std::move(rem)};
}

Poly mod(const Field& F, const Poly& a, const Poly& m) { return divmod(F, a, m).second; }

Poly exact_div(const Field& F, const Poly& a, const Poly& b) {
  auto [q, r] = divmod(F, a, b);
  if (!r.empty()) throw std::logic_error("polynomial division is not exact");
  return q;
}

Poly gcd(const Field& F, Poly a, Poly b) {
  while (!b.empty()) {
    Poly r = mod(F, a, b);
    a = std::move(b);
    b = std::move(r);
  }
  return monic(F, a);
}

Poly powmod(const Field& F, const Poly& base, std::uint64_t e, const Poly& m) {
  Poly result{F.one()};
  result = mod(F, result, m);
  Poly b = mod(F, base, m);
  while (e > 0) {
    if (e & 1U) result = mod(F, mul(F, result, b), m);
    e >>= 1U;
    if (e > 0) b = mod(F, mul(F, b, b), m);
  }
  return result;
}

Elem eval(const Field& F, const Poly& a, Elem x) {
  Elem r = F.zero();
  for (std::size_t i = a.size(); i-- > 0;) r = F.add(F.mul(r, x), a[i]);
  return r;
}

namespace {

constexpr std::uint32_t kScanLimit = 64;

// f is monic, squarefree and splits into distinct linear factors over F.
void split_roots(const Field& F, const Poly& f, std::mt19937_64& rng, std::vector<Elem>& out) {
  const int d = degree(f);
  if (d <= 0) return;
  if (d == 1) {
    out.push_back(F.neg(F.div(f[0], f[1])));
    return;
  }
  const std::uint64_t half = (std::uint64_t{F.q()} - 1) / 2;
  std::uniform_int_distribution<std::uint32_t> pick(0, F.q() - 1);
  for (;;) {
    Poly shifted{F.element(pick(rng)), F.one()};
    Poly h = powmod(F, shifted, half, f);
    h = sub(F, h, Poly{F.one()});
    Poly g = gcd(F, f, h);
    if (degree(g) > 0 && degree(g) < d) {
      split_roots(F, g, rng, out);
      split_roots(F, exact_div(F, f, g), rng, out);
      return;
    }
  }
}

}  // namespace

std::vector<Elem> roots(const Field& F, const Poly& a) {
  if (a.empty()) throw std::domain_error("roots of the zero polynomial");
  std::vector<Elem> out;
  if (degree(a) == 0) return out;
  if (F.q() <= kScanLimit) {
    for (std::uint32_t i = 0; i < F.q(); ++i)
      if (eval(F, a, F.element(i)).code == 0) out.push_back(F.element(i));
    return out;
  }
  const Poly f = monic(F, a);
  const Poly x{F.zero(), F.one()};
  Poly xq = powmod(F, x, F.q(), f);
  Poly g = gcd(F, f, sub(F, xq, x));
  std::mt19937_64 rng(0x5eed5eedULL + static_cast<std::uint64_t>(degree(g)));
  split_roots(F, g, rng, out);
  std::sort(out.begin(), out.end());
  return out;
}

bool is_irreducible(const Field& F, const Poly& a) {
  const int n = degree(a);
  if (n < 1) return false;
  if (n == 1) return true;
  const Poly f = monic(F, a);
  const Poly x{F.zero(), F.one()};
  // x^(q^i) mod f for i = 0..n
  std::vector<Poly> frob{mod(F, x, f)};
  for (int i = 1; i <= n; ++i) frob.push_back(powmod(F, frob.back(), F.q(), f));
  if (!sub(F, frob[static_cast<std::size_t>(n)], mod(F, x, f)).empty()) return false;
  for (int r = 2; r <= n; ++r) {
    if (n % r != 0 || !gf::is_prime(static_cast<std::uint64_t>(r))) continue;
    Poly g = gcd(F, f, sub(F, frob[static_cast<std::size_t>(n / r)], x));
    if (degree(g) != 0) return false;
  }
  return true;
}

}  // namespace fulldp::poly
