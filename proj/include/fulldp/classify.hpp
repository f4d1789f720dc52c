// Projective equivalence of split quartics over F_q and grouping into isomorphism
// classes.
#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "fulldp/config.hpp"

namespace fulldp::classify {

/// Invertible 3x3 matrix acting on points, row-major, first nonzero entry 1.
struct ProjTransform {
  std::array<gf::Elem, 9> m;

  static ProjTransform identity(const gf::Field& F);
  /// Normalizes; throws std::invalid_argument when singular.
  static ProjTransform from_matrix(const gf::Field& F, const std::array<gf::Elem, 9>& a);

  friend bool operator==(const ProjTransform&, const ProjTransform&) = default;
};

std::array<gf::Elem, 9> mat_mul(const gf::Field& F, const std::array<gf::Elem, 9>& a, const std::array<gf::Elem, 9>& b);
std::array<gf::Elem, 9> adjugate(const gf::Field& F, const std::array<gf::Elem, 9>& a);
gf::Elem determinant(const gf::Field& F, const std::array<gf::Elem, 9>& a);

ProjTransform compose(const gf::Field& F, const ProjTransform& a, const ProjTransform& b);  // a after b
std::string format(const gf::Field& F, const ProjTransform& M);

/// The quartic f o M^{-1} (points P of Q go to M P), canonically scaled.
quartic::TernaryQuartic apply_transform(const ProjTransform& M, const quartic::TernaryQuartic& Q);

struct ProfileInvariant {
  std::vector<config::Profile> profiles;  // sorted
  std::uint64_t branch_points = 0;
  int hyperflexes = 0;

  friend bool operator==(const ProfileInvariant&, const ProfileInvariant&) = default;
  friend auto operator<=>(const ProfileInvariant&, const ProfileInvariant&) = default;
};

ProfileInvariant invariant_of(const config::ConfigReport& r);

/// Bitangents of Q with the data the frame search needs.
struct Frame {
  quartic::TernaryQuartic canonical;
  std::vector<plane::ProjLine> lines;
  std::vector<config::Profile> profiles;
  std::vector<std::uint8_t> meet;  // meet[i * n + j]: bitangents through L_i cap L_j (0 on the diagonal)
  ProfileInvariant invariant;
};

Frame frame_of(const config::ConfigReport& r);

/// No frame in general position among the bitangents.
class FrameError : public quartic::QuarticError {
 public:
  using QuarticError::QuarticError;
};

/// Some M with apply_transform(M, Q1) == canonical Q2, found by mapping the lex-first
/// general-position 4-tuple of Q1's bitangents onto every compatible ordered 4-tuple of
/// Q2's bitangents. Returns the match with the smallest tuple index. OpenMP-parallel
/// over the first line of the target tuple.
std::optional<ProjTransform> equivalent(const Frame& a, const Frame& b);
std::optional<ProjTransform> equivalent(const config::ConfigReport& a, const config::ConfigReport& b);
std::optional<ProjTransform> equivalent(const quartic::TernaryQuartic& a, const quartic::TernaryQuartic& b);

struct IsoClass {
  quartic::TernaryQuartic representative;  // lex-smallest canonical member
  std::size_t members = 0;                 // distinct canonical quartics
  std::size_t sources = 0;                 // input curves mapping to the class
  config::ConfigReport report;             // of the representative
  bool full = false;
  std::vector<std::size_t> source_indices;  // inputs in this class, ascending
};

/// Groups audited curves into classes. Inputs with equal canonical quartics are merged
/// first; buckets of equal ProfileInvariant are resolved in parallel. Classes are sorted
/// by (not full, representative).
std::vector<IsoClass> classify(const std::vector<config::ConfigReport>& reports);

}  // namespace fulldp::classify
