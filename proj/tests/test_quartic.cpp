#include <doctest.h>

#include "fulldp/plane.hpp"
#include "fulldp/quartic.hpp"
#include "fulldp/reference.hpp"
#include "support.hpp"

using namespace fulldp;
using gf::Elem;
using quartic::BinaryQuartic;
using quartic::TernaryQuartic;

namespace {

TernaryQuartic ints(std::uint32_t q, std::array<std::int64_t, 15> c) {
  return TernaryQuartic::from_ints(gf::make_field_of_order(q), c);
}

// x^4 + y^4 + z^4 + a (x^2y^2 + x^2z^2 + y^2z^2) + b x^2y^2
TernaryQuartic symmetric(std::uint32_t q, std::int64_t a, std::int64_t b = 0) {
  return ints(q, {1, 0, 0, a + b, 0, a, 0, 0, 0, 0, 1, 0, a, 0, 1});
}

BinaryQuartic binary(const gf::Field& F, std::array<std::int64_t, 5> c) {
  BinaryQuartic g;
  for (std::size_t i = 0; i < 5; ++i) g.a[i] = F.from_int(c[i]);
  return g;
}

std::vector<quartic::RootInfo> roots_of(std::initializer_list<std::pair<int, int>> r) {
  std::vector<quartic::RootInfo> out;
  for (auto [m, d] : r) out.push_back({m, d});
  return out;
}

}  // namespace

TEST_CASE("evaluate and count_points") {
  const auto fermat9 = symmetric(9, 0);
  const auto& F9 = fermat9.field();
  CHECK(quartic::evaluate(fermat9, {F9.one(), F9.zero(), F9.zero()}) == F9.one());
  CHECK(quartic::count_points(fermat9) == 28);
  CHECK(quartic::count_points(symmetric(11, 1)) == 0);
  CHECK(quartic::count_points(symmetric(13, 8)) == 8);

  testing::Gen gen(21);
  for (std::uint32_t q : {9u, 13u, 17u, 25u}) {
    const auto field = gf::make_field_of_order(q);
    const auto& F = *field;
    for (int i = 0; i < 5; ++i) {
      const auto Q = gen.quartic(field);
      CHECK(quartic::count_points(Q) == reference::count_points(Q));
      for (const auto& P : plane::enumerate_points(F)) {
        if (quartic::evaluate(Q, P).code != 0) continue;
        // Degree-4 homogeneity on unnormalized representatives.
        const Elem c = gen.nonzero(F);
        const plane::Vec3 v{F.mul(c, P.x), F.mul(c, P.y), F.mul(c, P.z)};
        CHECK(quartic::evaluate_raw(Q, v).code == 0);
      }
      const plane::Vec3 v{gen.elem(F), gen.elem(F), gen.elem(F)};
      const Elem c = gen.nonzero(F);
      const plane::Vec3 cv{F.mul(c, v[0]), F.mul(c, v[1]), F.mul(c, v[2])};
      CHECK(quartic::evaluate_raw(Q, cv) == F.mul(F.pow(c, 4), quartic::evaluate_raw(Q, v)));
    }
  }
}

TEST_CASE("restriction to a line") {
  const auto fermat9 = symmetric(9, 0);
  const auto& F = fermat9.field();
  const plane::ProjLine z0{F.zero(), F.zero(), F.one()};
  const auto g = quartic::restrict_to_line(fermat9, z0);
  CHECK(g == binary(F, {1, 0, 0, 0, 1}));

  testing::Gen gen(22);
  for (std::uint32_t q : {9u, 11u, 23u, 27u}) {
    const auto field = gf::make_field_of_order(q);
    const auto Q = gen.quartic(field);
    for (const auto& L : plane::enumerate_lines(*field)) {
      BinaryQuartic fast;
      try {
        fast = quartic::restrict_to_line(Q, L);
      } catch (const quartic::LineComponentError&) {
        CHECK(reference::restrict_to_line(Q, L).is_zero());
        continue;
      }
      CHECK(fast == reference::restrict_to_line(Q, L));
      // g(1, 0) = f(P0), g(0, 1) = f(P1)
      const auto [P0, P1] = plane::parametrize(*field, L);
      CHECK(fast.a[4] == quartic::evaluate(Q, P0));
      CHECK(fast.a[0] == quartic::evaluate(Q, P1));
    }
  }
  // x (x^3 + y^3 + z^3) contains the line x = 0.
  const auto with_line = ints(13, {1, 0, 0, 0, 0, 0, 1, 0, 0, 1, 0, 0, 0, 0, 0});
  const auto& F13 = with_line.field();
  CHECK_THROWS_AS(quartic::restrict_to_line(with_line, {F13.one(), F13.zero(), F13.zero()}), quartic::LineComponentError);
  CHECK_THROWS_AS(quartic::scan_bitangents(with_line), quartic::LineComponentError);
}

TEST_CASE("zero quartic is rejected") {
  CHECK_THROWS_AS(ints(13, {0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0}), quartic::QuarticError);
}

TEST_CASE("classify_roots examples") {
  const auto F = gf::make_field(13, 1);
  // (s - t)^2 (s + t)^2 = s^4 - 2 s^2 t^2 + t^4
  auto p = quartic::classify_roots(*F, binary(*F, {1, 0, -2, 0, 1}));
  CHECK(p.roots == roots_of({{2, 1}, {2, 1}}));
  REQUIRE(p.rational.size() == 2);
  CHECK(p.rational[0].s == F->one());
  CHECK(p.rational[0].t == F->one());
  CHECK(p.rational[1].t == F->from_int(-1));
  // s^4: quadruple root at (0:1)
  p = quartic::classify_roots(*F, binary(*F, {0, 0, 0, 0, 1}));
  CHECK(p.roots == roots_of({{4, 1}}));
  REQUIRE(p.rational.size() == 1);
  CHECK(p.rational[0].s == F->zero());
  CHECK(p.rational[0].t == F->one());
  // An irreducible quartic: the first monic quartic with no root in F_{q^2}.
  testing::Gen gen(23);
  for (;;) {
    auto g = binary(*F, {0, 0, 0, 0, 1});
    for (int i = 0; i < 4; ++i) g.a[i] = gen.elem(*F);
    const auto bf = reference::root_profile_bruteforce(*F, g);
    if (bf.front().residue_degree != 4) continue;
    p = quartic::classify_roots(*F, g);
    CHECK(p.roots == roots_of({{1, 4}, {1, 4}, {1, 4}, {1, 4}}));
    CHECK(p.rational.empty());
    break;
  }
  CHECK_THROWS(quartic::classify_roots(*F, BinaryQuartic{}));
}

TEST_CASE("classify_roots agrees with the brute-force oracle") {
  testing::Gen gen(24);
  for (std::uint32_t q : {9u, 11u, 13u, 17u, 19u, 23u}) {
    const auto F = gf::make_field_of_order(q);
    for (int i = 0; i < 100; ++i) {
      const auto g = gen.binary_quartic(*F);
      const auto p = quartic::classify_roots(*F, g);
      REQUIRE(p.roots == reference::root_profile_bruteforce(*F, g));
      int total = 0;
      for (const auto& r : p.roots) {
        total += r.multiplicity;
        if (r.multiplicity >= 2) CHECK(r.residue_degree <= 2);
      }
      CHECK(total == 4);
      // Rational roots agree with direct evaluation over P^1(F_q).
      std::size_t zeros = 0;
      for (const Elem x : F->enumerate()) {
        Elem v = F->zero();
        for (std::size_t j = 5; j-- > 0;) v = F->add(F->mul(v, x), g.a[j]);
        zeros += v.code == 0;
      }
      zeros += g.a[4].code == 0;
      CHECK(p.rational.size() == zeros);
    }
  }
}

TEST_CASE("tangency_of agrees with the pattern-based test") {
  testing::Gen gen(25);
  for (std::uint32_t q : testing::kOddQ) {
    const auto F = gf::make_field_of_order(q);
    for (int i = 0; i < 400; ++i) {
      BinaryQuartic g = gen.binary_quartic(*F);
      if (i % 2 == 0) {
        // Planted c * h^2 with h a random binary quadratic.
        const Elem h2 = gen.elem(*F), h1 = gen.elem(*F), h0 = gen.elem(*F);
        if (h2.code == 0 && h1.code == 0 && h0.code == 0) continue;
        const Elem c = gen.nonzero(*F);
        const auto& f = *F;
        g.a[4] = f.mul(c, f.sqr(h2));
        g.a[3] = f.mul(c, f.mul(f.from_int(2), f.mul(h2, h1)));
        g.a[2] = f.mul(c, f.add(f.sqr(h1), f.mul(f.from_int(2), f.mul(h2, h0))));
        g.a[1] = f.mul(c, f.mul(f.from_int(2), f.mul(h1, h0)));
        g.a[0] = f.mul(c, f.sqr(h0));
      }
      const auto p = quartic::classify_roots(*F, g);
      quartic::Tangency expected;
      if (p.roots.size() == 1 && p.roots[0].multiplicity == 4) {
        expected = {true, true, 1};
      } else if (p.roots.size() == 2 && p.roots[0].multiplicity == 2 && p.roots[1].multiplicity == 2) {
        expected = {true, false, static_cast<int>(p.rational.size())};
      }
      REQUIRE(quartic::tangency_of(*F, g) == expected);
    }
  }
}

TEST_CASE("bitangents and hyperflexes") {
  const auto fermat9 = symmetric(9, 0);
  const auto& F = fermat9.field();
  const auto lines = quartic::find_bitangents(fermat9);
  CHECK(lines.size() == 28);
  CHECK(quartic::hyperflex_count(fermat9) == 28);
  // x + t y = 0 with t^4 = -1
  for (const Elem t : F.enumerate()) {
    if (F.pow(t, 4) != F.from_int(-1)) continue;
    const auto tan = quartic::is_bitangent(fermat9, {F.one(), t, F.zero()});
    CHECK(tan.bitangent);
    CHECK(tan.hyperflex);
    CHECK(tan.rational_contacts == 1);
  }
  CHECK(quartic::hyperflex_count(symmetric(13, 0, -1)) == 4);

  // Every bitangent of the F23 surface with |Q| = 0 misses the quartic.
  for (const auto& t : quartic::scan_bitangents(symmetric(23, 4)).detail) CHECK(t.rational_contacts == 0);

  // A generic secant: pattern of four simple rational roots.
  testing::Gen secant_gen(25);
  const auto f23 = gf::make_field(23, 1);
  bool found = false;
  for (int i = 0; i < 50 && !found; ++i) {
    const auto Q = secant_gen.quartic(f23);
    for (const auto& L : plane::enumerate_lines(*f23)) {
      const auto p = quartic::classify_roots(*f23, quartic::restrict_to_line(Q, L));
      if (p.roots == roots_of({{1, 1}, {1, 1}, {1, 1}, {1, 1}})) {
        CHECK(!quartic::is_bitangent(Q, L).bitangent);
        found = true;
        break;
      }
    }
  }
  CHECK(found);

  // Random quartics over F13 are usually not split; the error carries the count.
  testing::Gen gen(26);
  const auto f13 = gf::make_field(13, 1);
  int not_split = 0;
  for (int i = 0; i < 20 && not_split == 0; ++i) {
    const auto Q = gen.quartic(f13);
    if (!quartic::is_smooth(Q)) continue;
    try {
      quartic::find_bitangents(Q);
    } catch (const quartic::NotSplitError& e) {
      CHECK(e.count() < 28);
      CHECK(e.count() == static_cast<int>(quartic::scan_bitangents(Q).lines.size()));
      ++not_split;
    }
  }
  CHECK(not_split == 1);
}

TEST_CASE("line scan agrees with the serial reference") {
  testing::Gen gen(27);
  for (std::uint32_t q : {9u, 13u, 17u, 25u, 27u}) {
    const auto field = gf::make_field_of_order(q);
    for (int i = 0; i < 4; ++i) {
      const auto Q = gen.quartic(field);
      if (!quartic::is_smooth(Q)) continue;
      const auto a = quartic::scan_bitangents(Q);
      const auto b = reference::scan_bitangents(Q);
      CHECK(a.lines == b.lines);
      CHECK(a.detail == b.detail);
      CHECK(a.lines.size() <= 28);
    }
  }
}

TEST_CASE("smoothness") {
  CHECK(quartic::is_smooth(symmetric(9, 0)));
  // (x^2 + y^2 + z^2)^2
  CHECK(!quartic::is_smooth(ints(13, {1, 0, 0, 2, 0, 2, 0, 0, 0, 0, 1, 0, 2, 0, 1})));
  // x^4+y^4+z^4-(x^2y^2+x^2z^2+y^2z^2) is singular at (1:1:1) in odd characteristic.
  CHECK(!quartic::is_smooth(symmetric(23, -1)));
  // Singular only at the conjugate pair (sqrt(a):1:0), a a non-square: (x^2 - a y^2)^2 + z^4.
  for (std::uint32_t q : {11u, 13u, 9u}) {
    const auto field = gf::make_field_of_order(q);
    const auto a = field->nonsquare();
    quartic::Coeffs c;
    c.fill(field->zero());
    c[0] = field->one();
    c[3] = field->mul(field->from_int(-2), a);
    c[10] = field->sqr(a);
    c[14] = field->one();
    const TernaryQuartic Q(field, c);
    CHECK(!quartic::is_smooth(Q));
    CHECK(!reference::has_singular_point(Q, 1));
    CHECK(reference::has_singular_point(Q, 2));
  }
}

TEST_CASE("smoothness agrees with the brute-force singular point search") {
  testing::Gen gen(28);
  for (std::uint32_t q : {9u, 11u, 13u}) {
    const auto field = gf::make_field_of_order(q);
    const auto& F = *field;
    for (int i = 0; i < 12; ++i) {
      TernaryQuartic Q = gen.quartic(field);
      if (i % 3 == 0) {
        // Plant a rational singular point: no z^4, x z^3, y z^3 terms, then move it.
        auto c = Q.coeffs();
        c[9] = c[13] = c[14] = F.zero();
        if (std::all_of(c.begin(), c.end(), [](Elem e) { return e.code == 0; })) continue;
        Q = quartic::substitute(TernaryQuartic(field, c), gen.invertible(F));
      }
      const bool brute = reference::has_singular_point(Q, 1) || reference::has_singular_point(Q, 2);
      if (brute) {
        CHECK(!quartic::is_smooth(Q));
      } else if (quartic::is_smooth(Q)) {
        // Smooth per elimination: no singular point over F_{q^2} either; spot-check F_{q^3}
        // on the first curve of each field.
        if (i == 1) CHECK(!reference::has_singular_point(Q, 3));
      } else {
        // Singular only over a larger extension: must then show up over F_{q^3}, F_{q^4}.
        CHECK((reference::has_singular_point(Q, 3) || reference::has_singular_point(Q, 4)));
      }
    }
  }
}

TEST_CASE("substitution and canonical scaling") {
  const auto field = gf::make_field(13, 1);
  const auto& F = *field;
  // x <-> y maps x^4 + 2y^4 + z^4 to 2x^4 + y^4 + z^4.
  const auto Q = ints(13, {1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 2, 0, 0, 0, 1});
  const std::array<Elem, 9> swap{F.zero(), F.one(), F.zero(), F.one(), F.zero(), F.zero(), F.zero(), F.zero(), F.one()};
  CHECK(quartic::substitute(Q, swap) == ints(13, {2, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1, 0, 0, 0, 1}));
  // canonical: 2 is a non-square mod 13, so 2x^4 + ... stays; 4x^4 + ... scales to 1.
  const auto four = ints(13, {4, 0, 0, 0, 0, 0, 0, 0, 0, 0, 8, 0, 0, 0, 4});
  CHECK(four.canonical() == ints(13, {1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 2, 0, 0, 0, 1}));
  const auto c = ints(13, {2, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1, 0, 0, 0, 1}).canonical();
  CHECK(c.coeff(0) == F.nonsquare());
  testing::Gen gen(29);
  for (int i = 0; i < 50; ++i) {
    const auto R = gen.quartic(field);
    const Elem s = gen.nonzero(F);
    CHECK(R.scaled(F.sqr(s)).canonical() == R.canonical());
    CHECK(R.canonical().canonical() == R.canonical());
  }
}

TEST_CASE("serialization") {
  const auto Q = symmetric(13, 8);
  CHECK(Q.serialize() == "1,0,0,8,0,8,0,0,0,0,1,0,8,0,1");
  CHECK(Q.to_polynomial() == "x^4 + 8*x^2*y^2 + 8*x^2*z^2 + y^4 + 8*y^2*z^2 + z^4");
  const auto F9 = symmetric(9, 0);
  CHECK(F9.serialize() == "1,0;0,0;0,0;0,0;0,0;0,0;0,0;0,0;0,0;0,0;1,0;0,0;0,0;0,0;1,0");
}
