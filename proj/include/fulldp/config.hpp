// Intersection profiles of the 28 bitangents, their aggregates, the count L_{2,q} of
// surface points on exceptional curves, and the fullness verdict.
#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "fulldp/cover.hpp"
#include "fulldp/quartic.hpp"

namespace fulldp::config {

/// Counts of points on one bitangent meeting exactly 4, 3, 2, 1 bitangents (the line
/// itself included), and of rational contact points with the quartic.
struct Profile {
  int h = 0, e = 0, f = 0, g = 0, c = 0;

  friend bool operator==(const Profile&, const Profile&) = default;
  friend auto operator<=>(const Profile&, const Profile&) = default;
};

std::string format(const Profile& p);  // "(h,e,f,g,c)"

struct BitangentProfile {
  plane::ProjLine line;
  Profile counts;
};

/// Five or more concurrent bitangents, a contact point shared by two bitangents, or a
/// violated counting identity.
class ConfigAnomaly : public quartic::QuarticError {
 public:
  using QuarticError::QuarticError;
};

/// Profile of bitangents[i]. Throws ConfigAnomaly.
BitangentProfile profile_line(const quartic::TernaryQuartic& Q, std::span<const plane::ProjLine> bitangents,
                              std::size_t i);

/// All profiles in input order; shares the incidence tally across lines.
std::vector<BitangentProfile> profile_all(const quartic::TernaryQuartic& Q,
                                          std::span<const plane::ProjLine> bitangents);

/// h = sum h_i / 4, e = sum e_i / 3, f = sum f_i / 2, g = sum g_i, c = sum c_i.
struct Aggregates {
  long h = 0, e = 0, f = 0, g = 0, c = 0;

  friend bool operator==(const Aggregates&, const Aggregates&) = default;
};

/// Throws ConfigAnomaly on non-integral aggregates.
Aggregates aggregate(std::span<const BitangentProfile> profiles);

long l2q_direct(const Aggregates& a);  // 2h + 2e + 2f + 2g + c
/// 6h + 2e + 28(2q - 25) - |Q(F_q)|. Equals l2q_direct exactly when c = |Q(F_q)|.
long l2q_closed(const Aggregates& a, std::uint64_t branch_points, std::uint32_t q);
/// 6h + 2e + 28(2q - 25) - c, which the per-line identities force in general.
long l2q_closed_contacts(const Aggregates& a, std::uint32_t q);

/// The counting identities relating aggregates, q and |Q(F_q)|. The forms with |Q(F_q)|
/// assume every rational point of Q is a contact point of some bitangent (c = |Q(F_q)|);
/// the forms with c hold for every split quartic.
struct Identities {
  bool per_line = true;            // q + 1 = h_i + e_i + f_i + g_i + c_i, 27 = 3h_i + 2e_i + f_i, c_i <= 2
  bool f_relation = true;          // 2f = 28 * 27 - 12h - 6e
  bool l2q_agree = true;           // l2q_direct == l2q_closed
  bool g_relation = true;          // 2g = 28(2q - 52) + 16h + 6e - 2|Q|
  bool l2q_agree_contacts = true;  // l2q_direct == l2q_closed_contacts
  bool g_relation_contacts = true;  // 2g = 28(2q - 52) + 16h + 6e - 2c
  bool bounds = true;               // h <= 63, e <= 121
  bool contacts_cover_branch = true;  // c = |Q(F_q)|

  /// Everything that must hold on every split quartic.
  bool all() const { return per_line && f_relation && l2q_agree_contacts && g_relation_contacts && bounds; }
};

Identities check_identities(std::span<const BitangentProfile> profiles, const Aggregates& a,
                            std::uint64_t branch_points, std::uint32_t q);

struct FullnessCertificate {
  bool full = false;
  std::uint64_t surface_points = 0;
  long l2q = 0;
  long eq_lhs = 0;  // (q - 24)^2 + |Q(F_q)|
  long eq_rhs = 0;  // 6h + 2e - 125

  /// The equation holds exactly when the surface is full.
  bool consistent() const { return (eq_lhs == eq_rhs) == full; }
};

FullnessCertificate fullness(const Aggregates& a, const cover::CoverCount& counts, std::uint32_t q);

struct ConfigReport {
  gf::FieldPtr field;
  quartic::TernaryQuartic quartic;
  std::vector<BitangentProfile> profiles;
  Aggregates agg;
  cover::CoverCount counts;
  long l2q_direct = 0;
  long l2q_closed = 0;
  long l2q_closed_contacts = 0;
  long generalized_eckardt_on_X = 0;  // 2h
  long eckardt_on_X = 0;              // 2e
  int hyperflexes = 0;
  Identities identities;
  FullnessCertificate fullness;
};

/// smooth -> split -> profiles -> fullness. Throws cover::NotSmoothError,
/// quartic::LineComponentError, quartic::NotSplitError, cover::SplitAnomaly, ConfigAnomaly.
ConfigReport audit(const quartic::TernaryQuartic& Q);

/// As audit, with the rational bitangents already known (for instance from a closed
/// form). Smoothness is still checked unless the caller vouches for it.
ConfigReport audit_with(const quartic::TernaryQuartic& Q, quartic::BitangentScan scan, bool check_smooth = true);

FullnessCertificate is_full(const quartic::TernaryQuartic& Q);

/// The common value of l2q_direct and l2q_closed; throws ConfigAnomaly when they differ.
long l2q(const ConfigReport& r);

std::map<Profile, int> histogram(std::span<const BitangentProfile> profiles);

}  // namespace fulldp::config
