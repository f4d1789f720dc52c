#include <doctest.h>

#include <set>

#include "fulldp/config.hpp"
#include "fulldp/cover.hpp"
#include "fulldp/kuwata.hpp"
#include "fulldp/reference.hpp"
#include "support.hpp"

using namespace fulldp;
using config::Profile;
using quartic::TernaryQuartic;

namespace {

TernaryQuartic symmetric(std::uint32_t q, std::int64_t a, std::int64_t b = 0) {
  return TernaryQuartic::from_ints(gf::make_field_of_order(q), {1, 0, 0, a + b, 0, a, 0, 0, 0, 0, 1, 0, a, 0, 1});
}

TernaryQuartic kuwata_curve(std::string_view text) {
  const auto [field, k] = kuwata::parse(text);
  return kuwata::kuwata_quartic(field, k);
}

// Distinct smooth Kuwata quartics over F_q.
std::vector<TernaryQuartic> kuwata_curves(std::uint32_t q) {
  const auto field = gf::make_field_of_order(q);
  std::set<TernaryQuartic> seen;
  for (const auto& k : kuwata::enumerate_kuwata(*field))
    if (!kuwata::has_zero_parameter(k)) seen.insert(kuwata::kuwata_quartic(field, k).canonical());
  return {seen.begin(), seen.end()};
}

}  // namespace

TEST_CASE("surface point counts") {
  CHECK(cover::weil_split_count(9) == 154);
  const auto fermat = cover::count_surface_points(symmetric(9, 0));
  CHECK(fermat.surface_points == 154);
  CHECK(fermat.branch_points == 28);
  CHECK(fermat.weil_target == 154);
  CHECK(cover::count_surface_points(symmetric(11, 1)).surface_points == 210);

  testing::Gen gen(41);
  for (std::uint32_t q : {9u, 11u, 13u, 25u, 27u}) {
    const auto field = gf::make_field_of_order(q);
    for (int i = 0; i < 5; ++i) {
      const auto Q = gen.quartic(field);
      const auto c = cover::count_surface_points(Q);
      CHECK(c == reference::count_surface_points(Q));
      CHECK(c.branch_points == quartic::count_points(Q));
      CHECK(c.surface_points + 2 * c.nonsquare_points == 2 * (q * q + q + 1) - c.branch_points);
    }
  }
}

TEST_CASE("split certificates") {
  CHECK(cover::is_split(symmetric(9, 0)).split);
  CHECK(cover::is_split(symmetric(9, 0)).rational_bitangents == 28);
  const auto c234 = cover::is_split(kuwata_curve("17;2;3;4"));
  CHECK(c234.split);
  CHECK(c234.rational_bitangents == 28);
  CHECK_THROWS_AS(cover::is_split(TernaryQuartic::from_ints(gf::make_field(13, 1), {1, 0, 0, 2, 0, 2, 0, 0, 0, 0, 1, 0, 2, 0, 1})),
                  cover::NotSmoothError);
  // Point count and bitangent count agree on random smooth quartics.
  testing::Gen gen(42);
  for (std::uint32_t q : {11u, 13u, 17u}) {
    const auto field = gf::make_field_of_order(q);
    for (int i = 0; i < 6; ++i) {
      const auto Q = gen.quartic(field);
      if (!quartic::is_smooth(Q)) continue;
      const auto cert = cover::is_split(Q);
      CHECK(cert.split == (cert.rational_bitangents == 28));
    }
  }
}

TEST_CASE("published single-type profiles") {
  auto check_all = [](const TernaryQuartic& Q, Profile expected) {
    const auto r = config::audit(Q);
    REQUIRE(r.profiles.size() == 28);
    for (const auto& p : r.profiles) CHECK(p.counts == expected);
    return r;
  };
  const auto f9 = check_all(symmetric(9, 0), {9, 0, 0, 0, 1});
  CHECK(f9.agg == config::Aggregates{63, 0, 0, 0, 28});
  CHECK(f9.l2q_direct == 154);
  CHECK(f9.l2q_closed == 154);
  CHECK(f9.fullness.full);
  CHECK(f9.fullness.eq_lhs == 253);
  CHECK(f9.fullness.eq_rhs == 253);
  CHECK(f9.generalized_eckardt_on_X == 126);

  const auto f11 = check_all(symmetric(11, 1), {3, 9, 0, 0, 0});
  CHECK(f11.agg.h == 21);
  CHECK(f11.agg.e == 84);
  CHECK(f11.agg.c == 0);
  CHECK(config::l2q(f11) == 210);

  check_all(symmetric(23, 4), {3, 0, 18, 3, 0});
}

TEST_CASE("F13 published histograms and fullness") {
  const auto r8 = config::audit(symmetric(13, 8));
  const auto h8 = config::histogram(r8.profiles);
  CHECK(h8 == std::map<Profile, int>{{{1, 11, 2, 0, 0}, 24}, {{3, 9, 0, 0, 2}, 4}});
  CHECK(r8.agg.h == 9);
  CHECK(r8.agg.e == 100);
  CHECK(r8.counts.branch_points == 8);
  CHECK(config::l2q(r8) == 274);
  CHECK(r8.fullness.full);
  CHECK(r8.fullness.eq_lhs == 129);
  CHECK(r8.fullness.eq_rhs == 129);

  const auto r9 = config::audit(symmetric(13, 0, -1));
  CHECK(config::histogram(r9.profiles) == std::map<Profile, int>{{{1, 11, 2, 0, 0}, 24}, {{1, 12, 0, 0, 1}, 4}});
  CHECK(r9.counts.branch_points == 4);
  CHECK(r9.hyperflexes == 4);
}

TEST_CASE("a split surface that is not full") {
  const auto r = config::audit(kuwata_curve("17;2;3;4"));
  CHECK(!r.fullness.full);
  CHECK(r.fullness.consistent());
  CHECK(r.identities.all());
  CHECK(!config::is_full(kuwata_curve("17;2;3;4")).full);
}

TEST_CASE("audit errors") {
  const auto conic = TernaryQuartic::from_ints(gf::make_field(13, 1), {1, 0, 0, 2, 0, 2, 0, 0, 0, 0, 1, 0, 2, 0, 1});
  CHECK_THROWS_AS(config::audit(conic), cover::NotSmoothError);
  testing::Gen gen(43);
  for (;;) {
    const auto Q = gen.quartic(gf::make_field(13, 1));
    if (!quartic::is_smooth(Q)) continue;
    if (cover::is_split(Q).split) continue;
    CHECK_THROWS_AS(config::audit(Q), quartic::NotSplitError);
    break;
  }
  // Hand-made profile sums that do not divide.
  std::vector<config::BitangentProfile> bad(28);
  bad[0].counts = {1, 12, 0, 0, 1};
  CHECK_THROWS_AS(config::aggregate(bad), config::ConfigAnomaly);
}

TEST_CASE("counting identities and the point-centric tally on every Kuwata curve") {
  for (std::uint32_t q : {9u, 11u, 13u, 17u}) {
    for (const auto& Q : kuwata_curves(q)) {
      const auto r = config::audit(Q);
      CHECK(r.identities.all());
      CHECK(r.fullness.consistent());
      CHECK(r.agg.h >= 1);
      for (const auto& p : r.profiles) {
        const auto& c = p.counts;
        CHECK(c.h + c.e + c.f + c.g + c.c == static_cast<int>(q + 1));
        CHECK(3 * c.h + 2 * c.e + c.f == 27);
        if (q == 9) CHECK(c.h == 9);
        if (q == 11) CHECK(c.h >= 1);
      }
      std::vector<plane::ProjLine> lines;
      for (const auto& p : r.profiles) lines.push_back(p.line);
      const auto tally = reference::concurrency_sweep(Q, lines);
      CHECK(tally.quadruple == r.agg.h);
      CHECK(tally.triple == r.agg.e);
      // Line-by-line profiles agree with the shared tally.
      for (std::size_t i = 0; i < lines.size(); i += 9)
        CHECK(config::profile_line(Q, lines, i).counts == r.profiles[i].counts);
      // The closed form with |Q| holds whenever every rational point of Q is a contact.
      if (r.agg.c == static_cast<long>(r.counts.branch_points)) {
        CHECK(r.identities.l2q_agree);
        CHECK(r.identities.g_relation);
      }
    }
  }
}
