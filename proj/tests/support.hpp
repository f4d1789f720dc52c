// Hand-rolled generators and small helpers shared by the test binaries.
#pragma once

#include <array>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "fulldp/classify.hpp"
#include "fulldp/poly.hpp"
#include "fulldp/quartic.hpp"

namespace fulldp::testing {

inline constexpr std::uint32_t kOddQ[] = {9, 11, 13, 17, 19, 23, 25, 27, 29, 31, 37};

class Gen {
 public:
  explicit Gen(std::uint64_t seed) : rng_(seed) {}

  std::uint64_t below(std::uint64_t n) { return std::uniform_int_distribution<std::uint64_t>(0, n - 1)(rng_); }
  bool coin() { return below(2) == 1; }

  gf::Elem elem(const gf::Field& F) { return F.element(static_cast<std::uint32_t>(below(F.q()))); }
  gf::Elem nonzero(const gf::Field& F) { return F.element(static_cast<std::uint32_t>(1 + below(F.q() - 1))); }

  quartic::TernaryQuartic quartic(const gf::FieldPtr& field) {
    for (;;) {
      quartic::Coeffs c;
      for (auto& v : c) v = elem(*field);
      bool any = false;
      for (auto v : c) any |= v.code != 0;
      if (any) return quartic::TernaryQuartic(field, c);
    }
  }

  std::array<gf::Elem, 9> invertible(const gf::Field& F) {
    for (;;) {
      std::array<gf::Elem, 9> m;
      for (auto& v : m) v = elem(F);
      if (classify::determinant(F, m).code != 0) return m;
    }
  }

  classify::ProjTransform transform(const gf::Field& F) { return classify::ProjTransform::from_matrix(F, invertible(F)); }

  /// Monic irreducible polynomial of the given degree (1 or 2 in practice).
  poly::Poly irreducible(const gf::Field& F, int degree) {
    for (;;) {
      poly::Poly p(static_cast<std::size_t>(degree) + 1);
      for (auto& v : p) v = elem(F);
      p.back() = F.one();
      if (poly::is_irreducible(F, p)) return p;
    }
  }

  /// A binary quartic with planted factorization: a random partition of 4 into
  /// irreducible factors with multiplicities, possibly with a root at infinity,
  /// times a nonzero constant. Half the time a uniformly random quartic instead.
  quartic::BinaryQuartic binary_quartic(const gf::Field& F) {
    quartic::BinaryQuartic g;
    if (coin()) {
      for (auto& v : g.a) v = elem(F);
      if (g.is_zero()) g.a[0] = F.one();
      return g;
    }
    static const std::vector<std::vector<std::pair<int, int>>> shapes = {
        {{1, 4}},         {{1, 3}, {1, 1}}, {{1, 2}, {1, 2}}, {{1, 2}, {1, 1}, {1, 1}}, {{2, 2}},
        {{2, 1}, {1, 2}}, {{2, 1}, {2, 1}}, {{3, 1}, {1, 1}}, {{4, 1}},         {{2, 1}, {1, 1}, {1, 1}},
        {{1, 1}, {1, 1}, {1, 1}, {1, 1}}};  // (degree, multiplicity)
    const auto& shape = shapes[below(shapes.size())];
    poly::Poly acc{F.one()};
    int deg = 0;
    for (auto [d, m] : shape) {
      const poly::Poly f = irreducible(F, d);
      for (int i = 0; i < m; ++i) acc = poly::mul(F, acc, f);
      deg += d * m;
    }
    // Optionally send one linear factor of multiplicity m to infinity by dropping it.
    if (shape.front().first == 1 && coin()) {
      acc = poly::Poly{F.one()};
      deg = 0;
      for (std::size_t i = 1; i < shape.size(); ++i) {
        const poly::Poly f = irreducible(F, shape[i].first);
        for (int j = 0; j < shape[i].second; ++j) acc = poly::mul(F, acc, f);
        deg += shape[i].first * shape[i].second;
      }
    }
    acc = poly::scale(F, acc, nonzero(F));
    // acc is g(s, 1) of degree deg; g(s, t) = t^(4 - deg) * t^deg acc(s / t).
    for (std::size_t i = 0; i < acc.size(); ++i) g.a[i] = acc[i];
    return g;
  }

  std::mt19937_64& engine() { return rng_; }

 private:
  std::mt19937_64 rng_;
};

}  // namespace fulldp::testing
