#include "fulldp/quartic.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <sstream>

#include "fulldp/poly.hpp"
#include "ternary.hpp"

namespace fulldp::quartic {

using gf::Elem;
using gf::Field;
using plane::Plane;
using plane::ProjLine;
using plane::ProjPoint;

LineComponentError::LineComponentError(std::string line)
    : QuarticError("line is a component of the quartic: " + line) {}

NotSplitError::NotSplitError(int count)
    : QuarticError("not split over F_q: " + std::to_string(count) + " rational bitangents"), count_(count) {}

TernaryQuartic::TernaryQuartic(gf::FieldPtr field, const Coeffs& coeffs) : field_(std::move(field)), coeffs_(coeffs) {
  for (auto c : coeffs_) {
    if (c.code >= field_->q()) throw gf::FieldError("coefficient outside the field");
  }
  if (std::all_of(coeffs_.begin(), coeffs_.end(), [](Elem c) { return c.code == 0; }))
    throw QuarticError("the zero form is not a quartic");
}

TernaryQuartic TernaryQuartic::from_ints(gf::FieldPtr field, const std::array<std::int64_t, 15>& coeffs) {
  Coeffs c{};
  for (std::size_t i = 0; i < 15; ++i) c[i] = field->from_int(coeffs[i]);
  return {std::move(field), c};
}

TernaryQuartic TernaryQuartic::scaled(Elem s) const {
  Coeffs c{};
  for (std::size_t i = 0; i < 15; ++i) c[i] = field_->mul(coeffs_[i], s);
  return {field_, c};
}

TernaryQuartic TernaryQuartic::canonical() const {
  const Field& F = *field_;
  for (auto c : coeffs_) {
    if (c.code == 0) continue;
    const Elem target = F.is_square(c) ? F.one() : F.nonsquare();
    return scaled(F.div(target, c));
  }
  return *this;
}

std::string TernaryQuartic::serialize() const {
  std::ostringstream os;
  const char* sep = field_->k() == 1 ? "," : ";";
  for (std::size_t i = 0; i < 15; ++i) os << (i ? sep : "") << field_->format(coeffs_[i]);
  return os.str();
}

std::string TernaryQuartic::to_polynomial() const {
  std::ostringstream os;
  bool first = true;
  for (std::size_t m = 0; m < 15; ++m) {
    const Elem c = coeffs_[m];
    if (c.code == 0) continue;
    if (!first) os << " + ";
    first = false;
    if (c != field_->one()) {
      if (field_->k() == 1)
        os << c.code << '*';
      else
        os << '(' << field_->format(c) << ")*";
    }
    const auto& e = kQuarticMonomials[m];
    bool need_star = false;
    auto var = [&](char v, int power) {
      if (power == 0) return;
      if (need_star) os << '*';
      os << v;
      if (power > 1) os << '^' << power;
      need_star = true;
    };
    var('x', e.x);
    var('y', e.y);
    var('z', e.z);
  }
  return os.str();
}

namespace {

Elem eval_monomials(const Field& F, const Coeffs& c, std::span<const Elem> mono) {
  if (F.k() == 1) {
    std::uint64_t acc = 0;
    for (std::size_t m = 0; m < 15; ++m) acc += std::uint64_t{c[m].code} * mono[m].code;
    return Elem{static_cast<std::uint32_t>(acc % F.p())};
  }
  Elem acc = F.zero();
  for (std::size_t m = 0; m < 15; ++m)
    if (c[m].code != 0 && mono[m].code != 0) acc = F.add(acc, F.mul(c[m], mono[m]));
  return acc;
}

BinaryQuartic restrict_index(const Plane& plane, const Coeffs& c, std::uint32_t line) {
  const Field& F = plane.field();
  BinaryQuartic g;
  if (F.k() == 1) {
    std::array<std::uint64_t, 5> acc{};
    for (std::uint32_t m = 0; m < 15; ++m) {
      if (c[m].code == 0) continue;
      auto r = plane.restriction(line, m);
      for (std::size_t d = 0; d < 5; ++d) acc[d] += std::uint64_t{c[m].code} * r[d].code;
    }
    for (std::size_t d = 0; d < 5; ++d) g.a[d] = Elem{static_cast<std::uint32_t>(acc[d] % F.p())};
    return g;
  }
  for (std::uint32_t m = 0; m < 15; ++m) {
    if (c[m].code == 0) continue;
    auto r = plane.restriction(line, m);
    for (std::size_t d = 0; d < 5; ++d) g.a[d] = F.add(g.a[d], F.mul(c[m], r[d]));
  }
  return g;
}

const gf::Embedding& quadratic_extension(const gf::FieldPtr& F) {
  static std::mutex mutex;
  static std::map<std::string, std::unique_ptr<gf::Embedding>> cache;
  std::lock_guard lock(mutex);
  auto& slot = cache[F->serialize()];
  if (!slot) slot = std::make_unique<gf::Embedding>(gf::Embedding::make(F, gf::make_field(F->p(), 2 * F->k())));
  return *slot;
}

// Divides u by (X - r) as long as r is a root; returns the multiplicity.
int strip_root(const Field& F, poly::Poly& u, Elem r) {
  int mult = 0;
  while (poly::degree(u) >= 1 && poly::eval(F, u, r).code == 0) {
    u = poly::exact_div(F, u, poly::Poly{F.neg(r), F.one()});
    ++mult;
  }
  return mult;
}

}  // namespace

Elem evaluate_raw(const TernaryQuartic& Q, const plane::Vec3& v) {
  const Field& F = Q.field();
  Elem acc = F.zero();
  for (std::size_t m = 0; m < 15; ++m) {
    if (Q.coeff(m).code == 0) continue;
    const auto& e = kQuarticMonomials[m];
    Elem t = F.mul(F.mul(F.pow(v[0], e.x), F.pow(v[1], e.y)), F.pow(v[2], e.z));
    acc = F.add(acc, F.mul(Q.coeff(m), t));
  }
  return acc;
}

Elem evaluate(const TernaryQuartic& Q, const ProjPoint& P) { return evaluate_raw(Q, plane::vec(P)); }

std::uint64_t count_points(const TernaryQuartic& Q) {
  const auto plane = Plane::of(Q.field_ptr());
  const Field& F = Q.field();
  const auto n = static_cast<std::int64_t>(plane->size());
  std::uint64_t count = 0;
#pragma omp parallel for reduction(+ : count) schedule(static)
  for (std::int64_t i = 0; i < n; ++i)
    if (eval_monomials(F, Q.coeffs(), plane->monomials_at(static_cast<std::uint32_t>(i))).code == 0) ++count;
  return count;
}

BinaryQuartic restrict_to_line(const TernaryQuartic& Q, const ProjLine& L) {
  const auto plane = Plane::of(Q.field_ptr());
  BinaryQuartic g = restrict_index(*plane, Q.coeffs(), plane->line_index(L));
  if (g.is_zero()) throw LineComponentError(plane::format(Q.field(), L));
  return g;
}

TangencyPattern classify_roots(const Field& F, const BinaryQuartic& g) {
  if (g.is_zero()) throw QuarticError("classify_roots: zero binary form");
  TangencyPattern out;

  // Dehomogenize at t = 1: u(x) = g(x, 1). The point (1:0) is a root of multiplicity 4 - deg u.
  poly::Poly u(g.a.begin(), g.a.end());
  poly::trim(u);
  const int at_infinity = 4 - poly::degree(u);

  std::vector<RationalRoot> rational;
  for (std::uint32_t i = 0; i < F.q(); ++i) {
    const Elem x = F.element(i);
    const int mult = strip_root(F, u, x);
    if (mult == 0) continue;
    // (x:1) normalized
    if (x.code == 0)
      rational.push_back({F.zero(), F.one(), mult});
    else
      rational.push_back({F.one(), F.inv(x), mult});
    out.roots.push_back({mult, 1});
  }
  if (at_infinity > 0) {
    rational.push_back({F.one(), F.zero(), at_infinity});
    out.roots.push_back({at_infinity, 1});
  }
  std::sort(rational.begin(), rational.end(),
            [](const RationalRoot& a, const RationalRoot& b) { return std::pair(a.s, a.t) < std::pair(b.s, b.t); });
  out.rational = std::move(rational);

  if (poly::degree(u) >= 1) {
    const auto field_ptr = gf::make_field(F.p(), F.k());
    const auto& emb = quadratic_extension(field_ptr);
    const Field& K = *emb.target();
    poly::Poly v;
    for (auto c : u) v.push_back(emb.apply(c));
    for (std::uint32_t i = 0; i < K.q() && poly::degree(v) >= 1; ++i) {
      const int mult = strip_root(K, v, K.element(i));
      if (mult > 0) out.roots.push_back({mult, 2});
    }
    const int rest = poly::degree(v);
    if (rest == 3 || rest == 4) {
      for (int i = 0; i < rest; ++i) out.roots.push_back({1, rest});
    } else if (rest != 0) {
      throw std::logic_error("classify_roots: residual factor of degree " + std::to_string(rest));
    }
  }
  std::sort(out.roots.begin(), out.roots.end(), std::greater<>());
  return out;
}

Tangency is_bitangent(const TernaryQuartic& Q, const ProjLine& L) {
  const auto pattern = classify_roots(Q.field(), restrict_to_line(Q, L));
  Tangency t;
  const auto& r = pattern.roots;
  if (r.size() == 1 && r[0].multiplicity == 4) {
    t.bitangent = t.hyperflex = true;
    t.rational_contacts = 1;
  } else if (r.size() == 2 && r[0].multiplicity == 2 && r[1].multiplicity == 2) {
    t.bitangent = true;
    t.rational_contacts = static_cast<int>(pattern.rational.size());
  }
  return t;
}

Tangency tangency_of(const Field& F, const BinaryQuartic& g) {
  if (g.is_zero()) throw QuarticError("tangency_of: zero binary form");
  const auto& a = g.a;
  Tangency t;
  const Elem two_inv = F.inv(F.from_int(2));
  // c4 X^4 + c3 X^3 Y + ... + c0 Y^4 = c4 (X^2 + u X Y + v Y^2)^2 ?
  auto square_root_of = [&](Elem c4, Elem c3, Elem c2, Elem c1, Elem c0, Elem& u, Elem& v) {
    const Elem inv = F.inv(c4);
    const Elem b3 = F.mul(c3, inv), b2 = F.mul(c2, inv), b1 = F.mul(c1, inv), b0 = F.mul(c0, inv);
    u = F.mul(b3, two_inv);
    v = F.mul(F.sub(b2, F.sqr(u)), two_inv);
    return F.add(F.mul(u, v), F.mul(u, v)) == b1 && F.sqr(v) == b0;
  };
  Elem u, v;
  bool square = false;
  if (a[4].code != 0)
    square = square_root_of(a[4], a[3], a[2], a[1], a[0], u, v);
  else if (a[0].code != 0)
    square = square_root_of(a[0], a[1], a[2], a[3], a[4], u, v);
  else {
    // g = s t (a3 s^2 + a2 s t + a1 t^2): a square times a constant only as a2 s^2 t^2.
    if (a[3].code == 0 && a[1].code == 0 && a[2].code != 0) {
      t.bitangent = true;
      t.rational_contacts = 2;
    }
    return t;
  }
  if (!square) return t;
  t.bitangent = true;
  const Elem disc = F.sub(F.sqr(u), F.mul(F.from_int(4), v));
  if (disc.code == 0) {
    t.hyperflex = true;
    t.rational_contacts = 1;
  } else {
    t.rational_contacts = F.is_square(disc) ? 2 : 0;
  }
  return t;
}

BitangentScan scan_bitangents(const TernaryQuartic& Q) {
  const auto plane = Plane::of(Q.field_ptr());
  const Field& F = Q.field();
  const auto n = static_cast<std::int64_t>(plane->size());
  std::vector<Tangency> detail(static_cast<std::size_t>(n));
  std::vector<char> component(static_cast<std::size_t>(n), 0);
#pragma omp parallel for schedule(static)
  for (std::int64_t i = 0; i < n; ++i) {
    const auto idx = static_cast<std::uint32_t>(i);
    const BinaryQuartic g = restrict_index(*plane, Q.coeffs(), idx);
    if (g.is_zero())
      component[idx] = 1;
    else
      detail[idx] = tangency_of(F, g);
  }
  BitangentScan scan;
  for (std::uint32_t i = 0; i < plane->size(); ++i) {
    if (component[i]) throw LineComponentError(plane::format(F, plane->line(i)));
    if (!detail[i].bitangent) continue;
    scan.lines.push_back(plane->line(i));
    scan.detail.push_back(detail[i]);
  }
  return scan;
}

std::vector<ProjLine> find_bitangents(const TernaryQuartic& Q) {
  auto scan = scan_bitangents(Q);
  if (scan.lines.size() != 28) throw NotSplitError(static_cast<int>(scan.lines.size()));
  return std::move(scan.lines);
}

int hyperflex_count(const TernaryQuartic& Q) {
  const auto scan = scan_bitangents(Q);
  return static_cast<int>(std::count_if(scan.detail.begin(), scan.detail.end(), [](const Tangency& t) { return t.hyperflex; }));
}

TernaryQuartic substitute(const TernaryQuartic& Q, const std::array<Elem, 9>& A) {
  using detail::Form;
  const Field& F = Q.field();
  const Form lin[3] = {Form::linear(A[0], A[1], A[2]), Form::linear(A[3], A[4], A[5]), Form::linear(A[6], A[7], A[8])};
  std::array<std::array<Form, 5>, 3> powers;
  for (int v = 0; v < 3; ++v) {
    powers[v][0] = Form::constant(F.one());
    for (int e = 1; e <= 4; ++e) powers[v][e] = detail::multiply(F, powers[v][e - 1], lin[v]);
  }
  Form acc;
  acc.degree = 4;
  for (std::size_t m = 0; m < 15; ++m) {
    if (Q.coeff(m).code == 0) continue;
    const auto& e = kQuarticMonomials[m];
    const Form term = detail::multiply(F, detail::multiply(F, powers[0][e.x], powers[1][e.y]), powers[2][e.z]);
    detail::add_scaled(F, acc, term, Q.coeff(m));
  }
  Coeffs out{};
  for (std::size_t m = 0; m < 15; ++m) out[m] = acc.c[kQuarticMonomials[m].x][kQuarticMonomials[m].y];
  return {Q.field_ptr(), out};
}

}  // namespace fulldp::quartic
