#include "fulldp/plane.hpp"

#include <map>
#include <mutex>
#include <sstream>

#include "fulldp/monomials.hpp"

namespace fulldp::plane {

using gf::Elem;
using gf::Field;

namespace {

Vec3 normalize(const Field& F, const Vec3& v) {
  for (std::size_t i = 0; i < 3; ++i) {
    if (v[i].code == 0) continue;
    const Elem s = F.inv(v[i]);
    Vec3 out{};
    for (std::size_t j = 0; j < 3; ++j) out[j] = F.mul(v[j], s);
    return out;
  }
  throw gf::FieldError("all homogeneous coordinates are zero");
}

// Binary forms as coefficient arrays indexed by the power of s.
using Binary = std::array<Elem, 5>;

}  // namespace

ProjPoint normalize_point(const Field& F, const Vec3& v) {
  auto n = normalize(F, v);
  return {n[0], n[1], n[2]};
}

ProjLine normalize_line(const Field& F, const Vec3& v) {
  auto n = normalize(F, v);
  return {n[0], n[1], n[2]};
}

Vec3 cross(const Field& F, const Vec3& u, const Vec3& v) {
  return {F.sub(F.mul(u[1], v[2]), F.mul(u[2], v[1])), F.sub(F.mul(u[2], v[0]), F.mul(u[0], v[2])),
          F.sub(F.mul(u[0], v[1]), F.mul(u[1], v[0]))};
}

Elem dot(const Field& F, const Vec3& u, const Vec3& v) {
  return F.add(F.add(F.mul(u[0], v[0]), F.mul(u[1], v[1])), F.mul(u[2], v[2]));
}

std::vector<ProjPoint> enumerate_points(const Field& F) {
  std::vector<ProjPoint> out;
  const std::uint32_t q = F.q();
  out.reserve(std::size_t{q} * q + q + 1);
  // Lexicographic order on (x, y, z): [0:0:1], [0:1:*], [1:*:*].
  out.push_back({F.zero(), F.zero(), F.one()});
  for (std::uint32_t c = 0; c < q; ++c) out.push_back({F.zero(), F.one(), F.element(c)});
  for (std::uint32_t b = 0; b < q; ++b)
    for (std::uint32_t c = 0; c < q; ++c) out.push_back({F.one(), F.element(b), F.element(c)});
  return out;
}

std::vector<ProjLine> enumerate_lines(const Field& F) {
  std::vector<ProjLine> out;
  for (const auto& P : enumerate_points(F)) out.push_back({P.x, P.y, P.z});
  return out;
}

std::vector<ProjPoint> points_on_line(const Field& F, const ProjLine& L) {
  std::vector<ProjPoint> out;
  for (const auto& P : enumerate_points(F))
    if (incident(F, P, L)) out.push_back(P);
  return out;
}

ProjLine line_through(const Field& F, const ProjPoint& P1, const ProjPoint& P2) {
  if (P1 == P2) throw gf::FieldError("line_through needs two distinct points");
  return normalize_line(F, cross(F, vec(P1), vec(P2)));
}

bool incident(const Field& F, const ProjPoint& P, const ProjLine& L) {
  return dot(F, vec(P), vec(L)).code == 0;
}

std::pair<ProjPoint, ProjPoint> parametrize(const Field& F, const ProjLine& L) {
  auto pts = points_on_line(F, L);
  return {pts[0], pts[1]};
}

std::string format(const Field& F, const ProjPoint& P) {
  std::ostringstream os;
  os << '[' << F.format(P.x) << ':' << F.format(P.y) << ':' << F.format(P.z) << ']';
  return os.str();
}

std::string format(const Field& F, const ProjLine& L) {
  std::ostringstream os;
  os << '[' << F.format(L.a) << ':' << F.format(L.b) << ':' << F.format(L.c) << ']';
  return os.str();
}

std::shared_ptr<const Plane> Plane::of(const gf::FieldPtr& field) {
  static std::mutex mutex;
  static std::map<std::string, std::shared_ptr<const Plane>> cache;
  const std::string key = field->serialize();
  std::lock_guard lock(mutex);
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;
  auto plane = std::make_shared<const Plane>(field);
  cache.emplace(key, plane);
  return plane;
}

Plane::Plane(gf::FieldPtr field) : field_(std::move(field)) {
  const Field& F = *field_;
  const std::uint32_t q = F.q();
  points_ = enumerate_points(F);
  const auto n = static_cast<std::uint32_t>(points_.size());
  index_.assign(std::size_t{q} * q * q, 0xffffffffU);
  for (std::uint32_t i = 0; i < n; ++i) index_[key(points_[i].x, points_[i].y, points_[i].z)] = i;

  incidence_.reserve(std::size_t{n} * (q + 1));
  for (std::uint32_t i = 0; i < n; ++i) {
    const Vec3 l = vec(points_[i]);
    for (std::uint32_t j = 0; j < n; ++j)
      if (dot(F, l, vec(points_[j])).code == 0) incidence_.push_back(j);
  }

  monomials_.resize(std::size_t{15} * n);
  for (std::uint32_t i = 0; i < n; ++i) {
    const Vec3 v = vec(points_[i]);
    for (std::size_t m = 0; m < 15; ++m) {
      const auto& e = kQuarticMonomials[m];
      monomials_[15 * i + m] = F.mul(F.mul(F.pow(v[0], e.x), F.pow(v[1], e.y)), F.pow(v[2], e.z));
    }
  }

  restrictions_.resize(std::size_t{75} * n);
  for (std::uint32_t i = 0; i < n; ++i) {
    const auto [P0, P1] = parametrization(i);
    const Vec3 v0 = vec(P0), v1 = vec(P1);
    // Coordinate j restricted to the line is the linear form v0[j] s + v1[j] t.
    for (std::size_t m = 0; m < 15; ++m) {
      const auto& e = kQuarticMonomials[m];
      const int exps[3] = {e.x, e.y, e.z};
      Binary acc{};
      acc[0] = F.one();  // constant 1 = s^0 t^0; degree tracked by `deg`
      int deg = 0;
      for (int j = 0; j < 3; ++j) {
        for (int r = 0; r < exps[j]; ++r) {
          Binary next{};
          for (int d = 0; d <= deg; ++d) {
            // multiply the s^d t^(deg-d) term by (v0 s + v1 t)
            next[d + 1] = F.add(next[d + 1], F.mul(acc[d], v0[j]));
            next[d] = F.add(next[d], F.mul(acc[d], v1[j]));
          }
          acc = next;
          ++deg;
        }
      }
      for (std::size_t d = 0; d < 5; ++d) restrictions_[(std::size_t{i} * 15 + m) * 5 + d] = acc[d];
    }
  }
}

}  // namespace fulldp::plane
