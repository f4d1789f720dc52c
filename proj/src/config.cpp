#include "fulldp/config.hpp"

#include <algorithm>

namespace fulldp::config {

using gf::Elem;
using gf::Field;
using plane::Plane;
using plane::ProjLine;
using quartic::TernaryQuartic;

std::string format(const Profile& p) {
  return "(" + std::to_string(p.h) + "," + std::to_string(p.e) + "," + std::to_string(p.f) + "," +
         std::to_string(p.g) + "," + std::to_string(p.c) + ")";
}

namespace {

struct Tally {
  std::shared_ptr<const Plane> plane;
  std::vector<std::uint32_t> line_index;
  std::vector<std::uint8_t> through;  // bitangents through each point
};

Tally tally(const TernaryQuartic& Q, std::span<const ProjLine> bitangents) {
  Tally t{Plane::of(Q.field_ptr()), {}, {}};
  t.through.assign(t.plane->size(), 0);
  for (const auto& L : bitangents) {
    const auto idx = t.plane->line_index(L);
    t.line_index.push_back(idx);
    for (auto p : t.plane->points_on_line(idx)) ++t.through[p];
  }
  return t;
}

bool on_quartic(const TernaryQuartic& Q, const Plane& plane, std::uint32_t p) {
  const Field& F = Q.field();
  auto mono = plane.monomials_at(p);
  Elem v = F.zero();
  for (std::size_t m = 0; m < 15; ++m)
    if (Q.coeff(m).code != 0) v = F.add(v, F.mul(Q.coeff(m), mono[m]));
  return v.code == 0;
}

BitangentProfile profile_from(const TernaryQuartic& Q, const Tally& t, std::span<const ProjLine> bitangents,
                              std::size_t i) {
  const Plane& plane = *t.plane;
  BitangentProfile out{bitangents[i], {}};
  for (auto p : plane.points_on_line(t.line_index[i])) {
    const int m = t.through[p];
    if (on_quartic(Q, plane, p)) {
      if (m != 1)
        throw ConfigAnomaly("contact point " + plane::format(Q.field(), plane.point(p)) + " of bitangent " +
                            plane::format(Q.field(), bitangents[i]) + " lies on " + std::to_string(m) + " bitangents");
      ++out.counts.c;
      continue;
    }
    switch (m) {
      case 4: ++out.counts.h; break;
      case 3: ++out.counts.e; break;
      case 2: ++out.counts.f; break;
      case 1: ++out.counts.g; break;
      default:
        throw ConfigAnomaly(std::to_string(m) + " bitangents meet at " + plane::format(Q.field(), plane.point(p)));
    }
  }
  return out;
}

}  // namespace

BitangentProfile profile_line(const TernaryQuartic& Q, std::span<const ProjLine> bitangents, std::size_t i) {
  return profile_from(Q, tally(Q, bitangents), bitangents, i);
}

std::vector<BitangentProfile> profile_all(const TernaryQuartic& Q, std::span<const ProjLine> bitangents) {
  const Tally t = tally(Q, bitangents);
  std::vector<BitangentProfile> out;
  out.reserve(bitangents.size());
  for (std::size_t i = 0; i < bitangents.size(); ++i) out.push_back(profile_from(Q, t, bitangents, i));
  return out;
}

Aggregates aggregate(std::span<const BitangentProfile> profiles) {
  long sh = 0, se = 0, sf = 0;
  Aggregates a;
  for (const auto& p : profiles) {
    sh += p.counts.h;
    se += p.counts.e;
    sf += p.counts.f;
    a.g += p.counts.g;
    a.c += p.counts.c;
  }
  if (sh % 4 != 0 || se % 3 != 0 || sf % 2 != 0)
    throw ConfigAnomaly("non-integral aggregates: sum h_i = " + std::to_string(sh) + ", sum e_i = " +
                        std::to_string(se) + ", sum f_i = " + std::to_string(sf));
  a.h = sh / 4;
  a.e = se / 3;
  a.f = sf / 2;
  return a;
}

long l2q_direct(const Aggregates& a) { return 2 * a.h + 2 * a.e + 2 * a.f + 2 * a.g + a.c; }

long l2q_closed(const Aggregates& a, std::uint64_t branch_points, std::uint32_t q) {
  return 6 * a.h + 2 * a.e + 28 * (2 * static_cast<long>(q) - 25) - static_cast<long>(branch_points);
}

long l2q_closed_contacts(const Aggregates& a, std::uint32_t q) {
  return 6 * a.h + 2 * a.e + 28 * (2 * static_cast<long>(q) - 25) - a.c;
}

Identities check_identities(std::span<const BitangentProfile> profiles, const Aggregates& a,
                            std::uint64_t branch_points, std::uint32_t q) {
  Identities id;
  const long Qn = static_cast<long>(branch_points);
  const long ql = q;
  for (const auto& p : profiles) {
    const auto& c = p.counts;
    if (c.h + c.e + c.f + c.g + c.c != static_cast<int>(q) + 1) id.per_line = false;
    if (3 * c.h + 2 * c.e + c.f != 27) id.per_line = false;
    if (c.c < 0 || c.c > 2) id.per_line = false;
  }
  id.f_relation = 2 * a.f == 28 * 27 - 12 * a.h - 6 * a.e;
  id.l2q_agree = l2q_direct(a) == l2q_closed(a, branch_points, q);
  id.g_relation = 2 * a.g == 28 * (2 * ql - 52) + 16 * a.h + 6 * a.e - 2 * Qn;
  id.l2q_agree_contacts = l2q_direct(a) == l2q_closed_contacts(a, q);
  id.g_relation_contacts = 2 * a.g == 28 * (2 * ql - 52) + 16 * a.h + 6 * a.e - 2 * a.c;
  id.bounds = a.h <= 63 && a.e <= 121;
  id.contacts_cover_branch = a.c == Qn;
  return id;
}

FullnessCertificate fullness(const Aggregates& a, const cover::CoverCount& counts, std::uint32_t q) {
  FullnessCertificate cert;
  cert.surface_points = counts.surface_points;
  cert.l2q = l2q_direct(a);
  cert.full = static_cast<long>(counts.surface_points) == cert.l2q;
  const long d = static_cast<long>(q) - 24;
  cert.eq_lhs = d * d + static_cast<long>(counts.branch_points);
  cert.eq_rhs = 6 * a.h + 2 * a.e - 125;
  return cert;
}

ConfigReport audit_with(const TernaryQuartic& Q, quartic::BitangentScan scan, bool check_smooth) {
  if (check_smooth && !quartic::is_smooth(Q)) throw cover::NotSmoothError();
  ConfigReport r{Q.field_ptr(), Q, {}, {}, {}, 0, 0, 0, 0, 0, 0, {}, {}};
  r.hyperflexes = static_cast<int>(
      std::count_if(scan.detail.begin(), scan.detail.end(), [](const quartic::Tangency& t) { return t.hyperflex; }));
  auto cert = cover::certify_split(Q, std::move(scan));
  if (!cert.split) throw quartic::NotSplitError(cert.rational_bitangents);
  r.counts = cert.counts;
  const auto& lines = cert.bitangents.lines;
  r.profiles = profile_all(Q, lines);
  r.agg = aggregate(r.profiles);
  const std::uint32_t q = Q.field().q();
  r.l2q_direct = l2q_direct(r.agg);
  r.l2q_closed = l2q_closed(r.agg, r.counts.branch_points, q);
  r.l2q_closed_contacts = l2q_closed_contacts(r.agg, q);
  r.generalized_eckardt_on_X = 2 * r.agg.h;
  r.eckardt_on_X = 2 * r.agg.e;
  r.identities = check_identities(r.profiles, r.agg, r.counts.branch_points, q);
  r.fullness = fullness(r.agg, r.counts, q);
  return r;
}

ConfigReport audit(const TernaryQuartic& Q) {
  if (!quartic::is_smooth(Q)) throw cover::NotSmoothError();
  return audit_with(Q, quartic::scan_bitangents(Q), false);
}

FullnessCertificate is_full(const TernaryQuartic& Q) { return audit(Q).fullness; }

long l2q(const ConfigReport& r) {
  if (r.l2q_direct != r.l2q_closed)
    throw ConfigAnomaly("L_{2,q} formulas disagree: direct " + std::to_string(r.l2q_direct) + ", closed " +
                        std::to_string(r.l2q_closed) + " (c = " + std::to_string(r.agg.c) +
                        ", |Q(F_q)| = " + std::to_string(r.counts.branch_points) + ")");
  return r.l2q_direct;
}

std::map<Profile, int> histogram(std::span<const BitangentProfile> profiles) {
  std::map<Profile, int> out;
  for (const auto& p : profiles) ++out[p.counts];
  return out;
}

}  // namespace fulldp::config
