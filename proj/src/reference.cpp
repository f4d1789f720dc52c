#include "fulldp/reference.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>

#include "fulldp/poly.hpp"
#include "ternary.hpp"

namespace fulldp::reference {

using gf::Elem;
using gf::Field;
using plane::ProjLine;
using plane::ProjPoint;
using quartic::TernaryQuartic;
using Mat = std::array<Elem, 9>;

std::uint64_t count_points(const TernaryQuartic& Q) {
  std::uint64_t n = 0;
  for (const auto& P : plane::enumerate_points(Q.field()))
    if (quartic::evaluate(Q, P).code == 0) ++n;
  return n;
}

cover::CoverCount count_surface_points(const TernaryQuartic& Q) {
  const Field& F = Q.field();
  cover::CoverCount out;
  for (const auto& P : plane::enumerate_points(F)) {
    const Elem v = quartic::evaluate(Q, P);
    if (v.code == 0)
      ++out.branch_points;
    else if (F.is_square(v))
      out.surface_points += 2;
    else
      ++out.nonsquare_points;
  }
  out.surface_points += out.branch_points;
  out.weil_target = cover::weil_split_count(F.q());
  return out;
}

quartic::BinaryQuartic restrict_to_line(const TernaryQuartic& Q, const ProjLine& L) {
  const Field& F = Q.field();
  const auto [P0, P1] = plane::parametrize(F, L);
  // Each coordinate is the binary linear form P0[j] s + P1[j] t; expand the quartic
  // as a ternary form in (s, t, 0) using the internal form arithmetic.
  using detail::Form;
  const Form lin[3] = {Form::linear(P0.x, P1.x, F.zero()), Form::linear(P0.y, P1.y, F.zero()),
                       Form::linear(P0.z, P1.z, F.zero())};
  Form acc;
  acc.degree = 4;
  for (std::size_t m = 0; m < 15; ++m) {
    if (Q.coeff(m).code == 0) continue;
    const auto& e = kQuarticMonomials[m];
    Form term = Form::constant(Q.coeff(m));
    for (int r = 0; r < e.x; ++r) term = detail::multiply(F, term, lin[0]);
    for (int r = 0; r < e.y; ++r) term = detail::multiply(F, term, lin[1]);
    for (int r = 0; r < e.z; ++r) term = detail::multiply(F, term, lin[2]);
    detail::add_scaled(F, acc, term, F.one());
  }
  quartic::BinaryQuartic g;
  for (int i = 0; i <= 4; ++i) g.a[static_cast<std::size_t>(i)] = acc.c[i][4 - i];  // s^i t^(4-i)
  if (g.is_zero()) throw quartic::LineComponentError(plane::format(F, L));
  return g;
}

quartic::BitangentScan scan_bitangents(const TernaryQuartic& Q) {
  quartic::BitangentScan scan;
  const Field& F = Q.field();
  for (const auto& L : plane::enumerate_lines(F)) {
    const auto pattern = quartic::classify_roots(F, reference::restrict_to_line(Q, L));
    const auto& r = pattern.roots;
    quartic::Tangency t;
    if (r.size() == 1 && r[0].multiplicity == 4) {
      t.bitangent = t.hyperflex = true;
      t.rational_contacts = 1;
    } else if (r.size() == 2 && r[0].multiplicity == 2 && r[1].multiplicity == 2) {
      t.bitangent = true;
      t.rational_contacts = static_cast<int>(pattern.rational.size());
    }
    if (!t.bitangent) continue;
    scan.lines.push_back(L);
    scan.detail.push_back(t);
  }
  return scan;
}

namespace {

// Multiplicity of x0 as a root of u (coefficients in K), by repeated synthetic division.
int multiplicity(const Field& K, poly::Poly u, Elem x0) {
  int m = 0;
  while (poly::degree(u) >= 1) {
    // Horner: quotient and remainder of u / (x - x0).
    poly::Poly quot(u.size() - 1);
    Elem acc = K.zero();
    for (std::size_t i = u.size(); i-- > 0;) {
      acc = K.add(K.mul(acc, x0), u[i]);
      if (i > 0) quot[i - 1] = acc;
    }
    if (acc.code != 0) break;
    ++m;
    u = std::move(quot);
  }
  return m;
}

int residue_degree(const Field& K, Elem x, std::uint32_t q) {
  Elem y = x;
  for (int d = 1; d <= 4; ++d) {
    y = K.pow(y, q);
    if (y == x) return d;
  }
  return 0;
}

}  // namespace

std::vector<quartic::RootInfo> root_profile_bruteforce(const Field& F, const quartic::BinaryQuartic& g) {
  if (g.is_zero()) throw quartic::QuarticError("root_profile_bruteforce: zero binary form");
  std::vector<quartic::RootInfo> out;
  poly::Poly u(g.a.begin(), g.a.end());
  poly::trim(u);
  const int at_infinity = 4 - poly::degree(u);
  if (at_infinity > 0) out.push_back({at_infinity, 1});

  const auto base = gf::make_field(F.p(), F.k());
  for (std::uint32_t ext : {4U, 3U}) {
    const auto emb = gf::Embedding::make(base, gf::make_field(F.p(), F.k() * ext));
    const Field& K = *emb.target();
    poly::Poly v;
    for (auto c : u) v.push_back(emb.apply(c));
    for (std::uint32_t i = 0; i < K.q(); ++i) {
      const Elem x = K.element(i);
      Elem value = K.zero();
      for (std::size_t j = v.size(); j-- > 0;) value = K.add(K.mul(value, x), v[j]);
      if (value.code != 0) continue;
      const int m = multiplicity(K, v, x);
      const int d = residue_degree(K, x, F.q());
      // F_{q^4} supplies degrees 1, 2, 4; F_{q^3} supplies degree 3.
      if ((ext == 4 && d == 3) || (ext == 3 && d != 3)) continue;
      out.push_back({m, d});
    }
  }
  std::sort(out.begin(), out.end(), std::greater<>());
  return out;
}

bool has_singular_point(const TernaryQuartic& Q, std::uint32_t d) {
  const Field& F = Q.field();
  const auto emb = gf::Embedding::make(gf::make_field(F.p(), F.k()), gf::make_field(F.p(), F.k() * d));
  const Field& K = *emb.target();
  const detail::Form f = detail::Form::quartic(Q.coeffs());
  detail::Form partials[3];
  for (int v = 0; v < 3; ++v) {
    partials[v] = detail::partial(F, f, v);
    for (auto& row : partials[v].c)
      for (auto& c : row) c = emb.apply(c);
  }
  const auto eval = [&](const detail::Form& g, const plane::Vec3& P) {
    Elem acc = K.zero();
    for (int a = 0; a <= g.degree; ++a)
      for (int b = 0; a + b <= g.degree; ++b) {
        if (g.c[a][b].code == 0) continue;
        acc = K.add(acc, K.mul(g.c[a][b], K.mul(K.mul(K.pow(P[0], a), K.pow(P[1], b)), K.pow(P[2], g.degree - a - b))));
      }
    return acc;
  };
  for (const auto& P : plane::enumerate_points(K)) {
    const plane::Vec3 v = plane::vec(P);
    if (eval(partials[0], v).code == 0 && eval(partials[1], v).code == 0 && eval(partials[2], v).code == 0)
      return true;
  }
  return false;
}

ConcurrencyTally concurrency_sweep(const TernaryQuartic& Q, const std::vector<ProjLine>& lines) {
  const Field& F = Q.field();
  ConcurrencyTally t;
  for (const auto& P : plane::enumerate_points(F)) {
    if (quartic::evaluate(Q, P).code == 0) continue;
    int m = 0;
    for (const auto& L : lines)
      if (plane::incident(F, P, L)) ++m;
    if (m == 4) ++t.quadruple;
    if (m == 3) ++t.triple;
  }
  return t;
}

std::optional<classify::ProjTransform> equivalent_serial(const classify::Frame& a, const classify::Frame& b) {
  const Field& F = a.canonical.field();
  const std::size_t n = a.lines.size();
  if (n != b.lines.size() || n < 4) return std::nullopt;
  const auto col = [](const ProjLine& x, const ProjLine& y, const ProjLine& z) {
    return Mat{x.a, y.a, z.a, x.b, y.b, z.b, x.c, y.c, z.c};
  };
  const auto indep = [&](const ProjLine& x, const ProjLine& y, const ProjLine& z) {
    return classify::determinant(F, col(x, y, z)).code != 0;
  };
  const auto general = [&](const std::array<ProjLine, 4>& v) {
    return indep(v[0], v[1], v[2]) && indep(v[0], v[1], v[3]) && indep(v[0], v[2], v[3]) && indep(v[1], v[2], v[3]);
  };
  // Basis matrix sending e_1, e_2, e_3, (1,1,1) to the four lines (up to scalars).
  const auto basis = [&](const std::array<ProjLine, 4>& v) {
    const Mat B = col(v[0], v[1], v[2]);
    const Mat adj = classify::adjugate(F, B);
    const plane::Vec3 c{
        F.add(F.add(F.mul(adj[0], v[3].a), F.mul(adj[1], v[3].b)), F.mul(adj[2], v[3].c)),
        F.add(F.add(F.mul(adj[3], v[3].a), F.mul(adj[4], v[3].b)), F.mul(adj[5], v[3].c)),
        F.add(F.add(F.mul(adj[6], v[3].a), F.mul(adj[7], v[3].b)), F.mul(adj[8], v[3].c))};
    Mat out = B;
    for (int j = 0; j < 3; ++j)
      for (int i = 0; i < 3; ++i) out[3 * i + j] = F.mul(out[3 * i + j], c[j]);
    return out;
  };

  std::array<ProjLine, 4> src{};
  bool found = false;
  for (std::size_t i = 0; i < n && !found; ++i)
    for (std::size_t j = i + 1; j < n && !found; ++j)
      for (std::size_t k = j + 1; k < n && !found; ++k)
        for (std::size_t l = k + 1; l < n && !found; ++l)
          if (general({a.lines[i], a.lines[j], a.lines[k], a.lines[l]})) {
            src = {a.lines[i], a.lines[j], a.lines[k], a.lines[l]};
            found = true;
          }
  if (!found) throw classify::FrameError("no four bitangents in general position");
  const Mat B1inv = classify::adjugate(F, basis(src));

  for (std::size_t t0 = 0; t0 < n; ++t0)
    for (std::size_t t1 = 0; t1 < n; ++t1)
      for (std::size_t t2 = 0; t2 < n; ++t2)
        for (std::size_t t3 = 0; t3 < n; ++t3) {
          if (t0 == t1 || t0 == t2 || t0 == t3 || t1 == t2 || t1 == t3 || t2 == t3) continue;
          const std::array<ProjLine, 4> tgt{b.lines[t0], b.lines[t1], b.lines[t2], b.lines[t3]};
          if (!general(tgt)) continue;
          const Mat N = classify::mat_mul(F, basis(tgt), B1inv);
          const Mat Nt{N[0], N[3], N[6], N[1], N[4], N[7], N[2], N[5], N[8]};
          if (quartic::substitute(a.canonical, Nt).canonical() != b.canonical) continue;
          const Mat adj = classify::adjugate(F, N);
          return classify::ProjTransform::from_matrix(F, {adj[0], adj[3], adj[6], adj[1], adj[4], adj[7], adj[2], adj[5], adj[8]});
        }
  return std::nullopt;
}

std::optional<Mat> pgl_sweep(const TernaryQuartic& Q1, const TernaryQuartic& Q2) {
  const Field& F = Q1.field();
  const std::uint32_t q = F.q();
  // All nonzero vectors of F_q^3, bucketed by the value of Q2.
  std::vector<plane::Vec3> vectors;
  for (std::uint32_t a = 0; a < q; ++a)
    for (std::uint32_t b = 0; b < q; ++b)
      for (std::uint32_t c = 0; c < q; ++c)
        if (a || b || c) vectors.push_back({F.element(a), F.element(b), F.element(c)});
  std::vector<std::vector<std::size_t>> by_value(q);
  for (std::size_t i = 0; i < vectors.size(); ++i) by_value[quartic::evaluate_raw(Q2, vectors[i]).code].push_back(i);

  const auto add = [&](const plane::Vec3& u, const plane::Vec3& v) {
    return plane::Vec3{F.add(u[0], v[0]), F.add(u[1], v[1]), F.add(u[2], v[2])};
  };
  const Elem O = F.zero(), I = F.one();
  const plane::Vec3 e[3] = {{I, O, O}, {O, I, O}, {O, O, I}};
  const Elem q1_e[3] = {quartic::evaluate_raw(Q1, e[0]), quartic::evaluate_raw(Q1, e[1]), quartic::evaluate_raw(Q1, e[2])};
  const Elem q1_01 = quartic::evaluate_raw(Q1, add(e[0], e[1]));
  const Elem q1_02 = quartic::evaluate_raw(Q1, add(e[0], e[2]));
  const Elem q1_12 = quartic::evaluate_raw(Q1, add(e[1], e[2]));
  const Elem q1_012 = quartic::evaluate_raw(Q1, add(add(e[0], e[1]), e[2]));

  const auto is_normalized = [](const plane::Vec3& v) {
    for (auto c : v)
      if (c.code != 0) return c.code == 1;
    return false;
  };

  for (std::uint32_t si = 1; si < q; ++si) {
    const Elem s = F.element(si);
    if (!F.is_square(s)) continue;
    const auto target = [&](Elem v) { return F.mul(s, v).code; };
    for (std::size_t i0 : by_value[target(q1_e[0])]) {
      const auto& c0 = vectors[i0];
      if (!is_normalized(c0)) continue;  // one representative per projective class
      for (std::size_t i1 : by_value[target(q1_e[1])]) {
        const auto& c1 = vectors[i1];
        if (quartic::evaluate_raw(Q2, add(c0, c1)).code != target(q1_01)) continue;
        for (std::size_t i2 : by_value[target(q1_e[2])]) {
          const auto& c2 = vectors[i2];
          if (quartic::evaluate_raw(Q2, add(c0, c2)).code != target(q1_02)) continue;
          if (quartic::evaluate_raw(Q2, add(c1, c2)).code != target(q1_12)) continue;
          if (quartic::evaluate_raw(Q2, add(add(c0, c1), c2)).code != target(q1_012)) continue;
          const Mat M{c0[0], c1[0], c2[0], c0[1], c1[1], c2[1], c0[2], c1[2], c2[2]};
          if (classify::determinant(F, M).code == 0) continue;
          if (quartic::substitute(Q2, M) == Q1.scaled(s)) return M;
        }
      }
    }
  }
  return std::nullopt;
}

}  // namespace fulldp::reference
