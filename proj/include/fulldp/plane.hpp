// Points and lines of P^2(F_q).
#pragma once

#include <array>
#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "fulldp/gf.hpp"

namespace fulldp::plane {

/// Homogeneous coordinates with the leftmost nonzero coordinate equal to 1.
struct ProjPoint {
  gf::Elem x, y, z;

  friend constexpr bool operator==(const ProjPoint&, const ProjPoint&) = default;
  friend constexpr auto operator<=>(const ProjPoint&, const ProjPoint&) = default;
};

/// The line a x + b y + c z = 0, normalized like ProjPoint.
struct ProjLine {
  gf::Elem a, b, c;

  friend constexpr bool operator==(const ProjLine&, const ProjLine&) = default;
  friend constexpr auto operator<=>(const ProjLine&, const ProjLine&) = default;
};

using Vec3 = std::array<gf::Elem, 3>;

/// Throws gf::FieldError when all three coordinates vanish.
ProjPoint normalize_point(const gf::Field& F, const Vec3& v);
ProjLine normalize_line(const gf::Field& F, const Vec3& v);
inline Vec3 vec(const ProjPoint& P) { return {P.x, P.y, P.z}; }
inline Vec3 vec(const ProjLine& L) { return {L.a, L.b, L.c}; }
Vec3 cross(const gf::Field& F, const Vec3& u, const Vec3& v);
gf::Elem dot(const gf::Field& F, const Vec3& u, const Vec3& v);

std::vector<ProjPoint> enumerate_points(const gf::Field& F);
std::vector<ProjLine> enumerate_lines(const gf::Field& F);
std::vector<ProjPoint> points_on_line(const gf::Field& F, const ProjLine& L);
/// Throws gf::FieldError when P1 == P2.
ProjLine line_through(const gf::Field& F, const ProjPoint& P1, const ProjPoint& P2);
bool incident(const gf::Field& F, const ProjPoint& P, const ProjLine& L);
/// The two smallest points of L; (s:t) -> s*P0 + t*P1 is a bijection P^1 -> L.
std::pair<ProjPoint, ProjPoint> parametrize(const gf::Field& F, const ProjLine& L);

std::string format(const gf::Field& F, const ProjPoint& P);
std::string format(const gf::Field& F, const ProjLine& L);

/// Cached incidence structure of P^2(F_q). Points and lines share one index space
/// (the canonical lexicographic order), so line i has the coordinates of point i.
class Plane {
 public:
  static std::shared_ptr<const Plane> of(const gf::FieldPtr& field);

  const gf::FieldPtr& field_ptr() const { return field_; }
  const gf::Field& field() const { return *field_; }
  std::uint32_t size() const { return static_cast<std::uint32_t>(points_.size()); }

  std::span<const ProjPoint> points() const { return points_; }
  const ProjPoint& point(std::uint32_t i) const { return points_[i]; }
  ProjLine line(std::uint32_t i) const { return {points_[i].x, points_[i].y, points_[i].z}; }

  std::uint32_t point_index(const ProjPoint& P) const { return index_[key(P.x, P.y, P.z)]; }
  std::uint32_t line_index(const ProjLine& L) const { return index_[key(L.a, L.b, L.c)]; }

  /// Indices of the q + 1 points of line i, ascending.
  std::span<const std::uint32_t> points_on_line(std::uint32_t i) const {
    const std::size_t n = field_->q() + 1;
    return {incidence_.data() + i * n, n};
  }
  std::pair<ProjPoint, ProjPoint> parametrization(std::uint32_t i) const {
    auto pts = points_on_line(i);
    return {points_[pts[0]], points_[pts[1]]};
  }

  /// Values of the 15 quartic monomials at point i.
  std::span<const gf::Elem> monomials_at(std::uint32_t i) const { return {monomials_.data() + 15 * i, 15}; }
  /// Restriction of monomial m to line i as a binary quartic, 5 coefficients indexed
  /// by the power of s (see quartic::BinaryQuartic).
  std::span<const gf::Elem> restriction(std::uint32_t line, std::uint32_t m) const {
    return {restrictions_.data() + (line * 15 + m) * 5, 5};
  }

  explicit Plane(gf::FieldPtr field);

 private:
  std::size_t key(gf::Elem a, gf::Elem b, gf::Elem c) const {
    const std::size_t q = field_->q();
    return (std::size_t{a.code} * q + b.code) * q + c.code;
  }

  gf::FieldPtr field_;
  std::vector<ProjPoint> points_;
  std::vector<std::uint32_t> index_;
  std::vector<std::uint32_t> incidence_;
  std::vector<gf::Elem> monomials_;
  std::vector<gf::Elem> restrictions_;
};

}  // namespace fulldp::plane
