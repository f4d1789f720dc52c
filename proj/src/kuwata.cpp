#include "fulldp/kuwata.hpp"

#include <algorithm>
#include <set>

namespace fulldp::kuwata {

using gf::Elem;
using gf::Field;
using plane::ProjLine;

namespace {

Elem one_minus(const Field& F, Elem x) { return F.sub(F.one(), x); }

std::vector<std::string_view> split(std::string_view text, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  for (;;) {
    const auto pos = text.find(sep, start);
    out.push_back(text.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

std::string_view strip(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

}  // namespace

bool nondegenerate(const Field& F, const KuwataParams& k) {
  const Elem l2 = F.sqr(k.lambda), m2 = F.sqr(k.mu), n2 = F.sqr(k.nu);
  const Elem factors[] = {one_minus(F, l2),           one_minus(F, m2),           one_minus(F, n2),
                          one_minus(F, F.mul(m2, l2)), one_minus(F, F.mul(n2, l2)), one_minus(F, F.mul(m2, n2)),
                          one_minus(F, F.mul(F.mul(l2, m2), n2))};
  return std::none_of(std::begin(factors), std::end(factors), [](Elem e) { return e.code == 0; });
}

bool has_zero_parameter(const KuwataParams& k) { return k.lambda.code == 0 || k.mu.code == 0 || k.nu.code == 0; }

quartic::TernaryQuartic kuwata_quartic(const gf::FieldPtr& field, const KuwataParams& k) {
  const Field& F = *field;
  if (!nondegenerate(F, k)) throw DegenerateParams("degenerate Kuwata parameters " + format(F, k));
  const Elem l2 = F.sqr(k.lambda), m2 = F.sqr(k.mu), n2 = F.sqr(k.nu);
  const Elem A = one_minus(F, F.mul(m2, n2));
  const Elem B = one_minus(F, F.mul(n2, l2));
  const Elem C = one_minus(F, F.mul(m2, l2));
  const Elem D = F.mul(F.from_int(4), one_minus(F, F.mul(F.mul(l2, m2), n2)));
  const Elem two = F.from_int(2);

  quartic::Coeffs c;
  c.fill(F.zero());
  c[monomial_index(4, 0)] = F.sqr(A);
  c[monomial_index(0, 4)] = F.sqr(B);
  c[monomial_index(0, 0)] = F.sqr(C);
  c[monomial_index(2, 2)] = F.sub(F.mul(two, F.mul(A, B)), F.mul(D, one_minus(F, n2)));
  c[monomial_index(2, 0)] = F.sub(F.mul(two, F.mul(A, C)), F.mul(D, one_minus(F, m2)));
  c[monomial_index(0, 2)] = F.sub(F.mul(two, F.mul(B, C)), F.mul(D, one_minus(F, l2)));
  return quartic::TernaryQuartic(field, c);
}

std::vector<ProjLine> kuwata_bitangents(const gf::FieldPtr& field, const KuwataParams& k) {
  const Field& F = *field;
  if (!nondegenerate(F, k)) throw DegenerateParams("degenerate Kuwata parameters " + format(F, k));
  const Elem l = k.lambda, m = k.mu, n = k.nu;
  const Elem O = F.zero(), I = F.one();
  std::vector<plane::Vec3> raw;
  for (const Elem s : {I, F.neg(I)}) {
    raw.push_back({I, F.mul(s, l), O});  // x + s l y
    raw.push_back({F.mul(s, m), I, O});  // y + s m x
    raw.push_back({F.mul(s, n), O, I});  // z + s n x
    raw.push_back({I, O, F.mul(s, l)});  // x + s l z
    raw.push_back({O, I, F.mul(s, m)});  // y + s m z
    raw.push_back({O, F.mul(s, n), I});  // z + s n y
  }
  const Elem mn = F.mul(m, n), nl = F.mul(n, l), lm = F.mul(l, m);
  const auto plus = [&](Elem v) { return F.add(I, v); };
  const auto minus = [&](Elem v) { return F.sub(I, v); };
  const std::array<std::array<Elem, 3>, 4> families{{
      {plus(mn), plus(nl), minus(lm)},
      {plus(mn), minus(nl), plus(lm)},
      {minus(mn), plus(nl), plus(lm)},
      {minus(mn), minus(nl), minus(lm)},
  }};
  for (const auto& fam : families)
    for (const Elem sy : {I, F.neg(I)})
      for (const Elem sz : {I, F.neg(I)}) raw.push_back({fam[0], F.mul(sy, fam[1]), F.mul(sz, fam[2])});

  std::vector<ProjLine> out;
  std::set<std::array<std::uint32_t, 3>> seen;
  for (const auto& v : raw) {
    if (v[0].code == 0 && v[1].code == 0 && v[2].code == 0)
      throw DegenerateParams("Kuwata line with zero coefficients for " + format(F, k));
    const ProjLine L = plane::normalize_line(F, v);
    if (!seen.insert({L.a.code, L.b.code, L.c.code}).second)
      throw DegenerateParams("coinciding Kuwata lines " + plane::format(F, L) + " for " + format(F, k));
    out.push_back(L);
  }
  return out;
}

std::vector<KuwataParams> enumerate_kuwata(const Field& F) {
  std::vector<KuwataParams> out;
  for (std::uint32_t a = 0; a < F.q(); ++a)
    for (std::uint32_t b = 0; b < F.q(); ++b)
      for (std::uint32_t c = 0; c < F.q(); ++c) {
        const KuwataParams k{F.element(a), F.element(b), F.element(c)};
        if (nondegenerate(F, k)) out.push_back(k);
      }
  return out;
}

std::string format(const Field& F, const KuwataParams& k) {
  return std::to_string(F.q()) + ";" + F.format(k.lambda) + ";" + F.format(k.mu) + ";" + F.format(k.nu);
}

std::pair<gf::FieldPtr, KuwataParams> parse(std::string_view text) {
  const auto parts = split(text, ';');
  if (parts.size() != 4) throw gf::FieldError("Kuwata parameters must read q;lambda;mu;nu, got '" + std::string(text) + "'");
  auto field = gf::parse_field(strip(parts[0]));
  const KuwataParams k{field->parse(strip(parts[1])), field->parse(strip(parts[2])), field->parse(strip(parts[3]))};
  return {field, k};
}

}  // namespace fulldp::kuwata
