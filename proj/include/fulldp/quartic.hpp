// Ternary quartic forms f(x, y, z) over F_q: evaluation, point counts, restriction to
// lines, tangency patterns, bitangents, hyperflexes and smoothness.
#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "fulldp/gf.hpp"
#include "fulldp/monomials.hpp"
#include "fulldp/plane.hpp"

namespace fulldp::quartic {

class QuarticError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A line of P^2 is a component of the curve.
class LineComponentError : public QuarticError {
 public:
  explicit LineComponentError(std::string line);
};

/// Fewer than 28 bitangents are defined over F_q.
class NotSplitError : public QuarticError {
 public:
  explicit NotSplitError(int count);
  int count() const { return count_; }

 private:
  int count_;
};

using Coeffs = std::array<gf::Elem, 15>;

class TernaryQuartic {
 public:
  /// Throws QuarticError for the zero form.
  TernaryQuartic(gf::FieldPtr field, const Coeffs& coeffs);
  static TernaryQuartic from_ints(gf::FieldPtr field, const std::array<std::int64_t, 15>& coeffs);

  const gf::FieldPtr& field_ptr() const { return field_; }
  const gf::Field& field() const { return *field_; }
  const Coeffs& coeffs() const { return coeffs_; }
  gf::Elem coeff(std::size_t m) const { return coeffs_[m]; }

  TernaryQuartic scaled(gf::Elem c) const;

  /// Representative of Q up to multiplication by nonzero squares: the first nonzero
  /// coefficient becomes 1 or the field's smallest non-square. Multiplying by a square
  /// does not change the surface w^2 = f, multiplying by a non-square twists it.
  TernaryQuartic canonical() const;

  /// 15 field elements in monomial order, separated by ',' (or ';' when k > 1, since
  /// elements of extension fields print as comma-separated coordinates).
  std::string serialize() const;
  /// Human-readable form, e.g. "x^4 + y^4 + 2*z^4 + 13*x^2*y^2".
  std::string to_polynomial() const;

  friend bool operator==(const TernaryQuartic& a, const TernaryQuartic& b) {
    return a.field_->same_as(*b.field_) && a.coeffs_ == b.coeffs_;
  }
  /// Orders by coefficient vector (fields are assumed equal).
  friend auto operator<=>(const TernaryQuartic& a, const TernaryQuartic& b) { return a.coeffs_ <=> b.coeffs_; }

 private:
  gf::FieldPtr field_;
  Coeffs coeffs_;
};

/// g(s, t) = a[4] s^4 + a[3] s^3 t + a[2] s^2 t^2 + a[1] s t^3 + a[0] t^4.
struct BinaryQuartic {
  std::array<gf::Elem, 5> a{};

  bool is_zero() const {
    for (auto c : a)
      if (c.code != 0) return false;
    return true;
  }
  friend bool operator==(const BinaryQuartic&, const BinaryQuartic&) = default;
};

struct RootInfo {
  int multiplicity = 0;
  int residue_degree = 0;

  friend bool operator==(const RootInfo&, const RootInfo&) = default;
  friend auto operator<=>(const RootInfo&, const RootInfo&) = default;
};

/// A point (s:t) of P^1(F_q), normalized with its leftmost nonzero coordinate 1.
struct RationalRoot {
  gf::Elem s, t;
  int multiplicity = 0;

  friend bool operator==(const RationalRoot&, const RationalRoot&) = default;
};

/// One entry per distinct root over the algebraic closure, sorted descending.
struct TangencyPattern {
  std::vector<RootInfo> roots;
  std::vector<RationalRoot> rational;

  friend bool operator==(const TangencyPattern&, const TangencyPattern&) = default;
};

struct Tangency {
  bool bitangent = false;
  bool hyperflex = false;
  /// Number of F_q-rational contact points (0, 1 or 2) when bitangent.
  int rational_contacts = 0;

  friend bool operator==(const Tangency&, const Tangency&) = default;
};

struct BitangentScan {
  std::vector<plane::ProjLine> lines;  // enumeration order
  std::vector<Tangency> detail;
};

gf::Elem evaluate(const TernaryQuartic& Q, const plane::ProjPoint& P);
gf::Elem evaluate_raw(const TernaryQuartic& Q, const plane::Vec3& v);

/// Number of points of P^2(F_q) on Q. OpenMP-parallel.
std::uint64_t count_points(const TernaryQuartic& Q);

/// g(s, t) = f(s P0 + t P1) for the line's standard parametrization.
/// Throws LineComponentError when g vanishes identically.
BinaryQuartic restrict_to_line(const TernaryQuartic& Q, const plane::ProjLine& L);

/// Full root profile of g over the algebraic closure: strip F_q-rational roots, then
/// roots in F_{q^2}; what remains has only simple roots of degree 3 or 4.
TangencyPattern classify_roots(const gf::Field& F, const BinaryQuartic& g);

/// Bitangent test by pattern (uses classify_roots).
Tangency is_bitangent(const TernaryQuartic& Q, const plane::ProjLine& L);

/// Closed-form test: g is a bitangent restriction iff g = c h^2 with h a binary quadratic
/// over F_q. Agrees with classify_roots on every nonzero g.
Tangency tangency_of(const gf::Field& F, const BinaryQuartic& g);

/// All F_q-rational bitangents, in line enumeration order. OpenMP-parallel.
BitangentScan scan_bitangents(const TernaryQuartic& Q);

/// The 28 bitangents; throws NotSplitError when fewer are rational.
std::vector<plane::ProjLine> find_bitangents(const TernaryQuartic& Q);

/// Number of rational bitangents meeting Q in a single point.
int hyperflex_count(const TernaryQuartic& Q);

/// No common zero of the partial derivatives over the algebraic closure.
bool is_smooth(const TernaryQuartic& Q);

/// Q(A v), with A a 3x3 matrix in row-major order (no normalization).
TernaryQuartic substitute(const TernaryQuartic& Q, const std::array<gf::Elem, 9>& A);

}  // namespace fulldp::quartic
