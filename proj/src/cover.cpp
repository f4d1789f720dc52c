#include "fulldp/cover.hpp"

#include "fulldp/plane.hpp"

namespace fulldp::cover {

using gf::Elem;
using gf::Field;

std::uint64_t weil_split_count(std::uint32_t q) { return std::uint64_t{q} * q + 8ULL * q + 1; }

CoverCount count_surface_points(const quartic::TernaryQuartic& Q) {
  const auto plane = plane::Plane::of(Q.field_ptr());
  const Field& F = Q.field();
  // Quadratic character as a table over element codes.
  std::vector<char> square(F.q());
  for (std::uint32_t i = 0; i < F.q(); ++i) square[i] = F.is_square(F.element(i)) ? 1 : 0;

  const auto n = static_cast<std::int64_t>(plane->size());
  std::uint64_t zeros = 0, squares = 0, nonsquares = 0;
#pragma omp parallel for reduction(+ : zeros, squares, nonsquares) schedule(static)
  for (std::int64_t i = 0; i < n; ++i) {
    auto mono = plane->monomials_at(static_cast<std::uint32_t>(i));
    Elem v = F.zero();
    for (std::size_t m = 0; m < 15; ++m)
      if (Q.coeff(m).code != 0) v = F.add(v, F.mul(Q.coeff(m), mono[m]));
    if (v.code == 0)
      ++zeros;
    else if (square[v.code])
      ++squares;
    else
      ++nonsquares;
  }
  CoverCount out;
  out.branch_points = zeros;
  out.surface_points = zeros + 2 * squares;
  out.nonsquare_points = nonsquares;
  out.weil_target = weil_split_count(F.q());
  return out;
}

SplitCertificate certify_split(const quartic::TernaryQuartic& Q, quartic::BitangentScan scan) {
  SplitCertificate cert;
  cert.counts = count_surface_points(Q);
  cert.rational_bitangents = static_cast<int>(scan.lines.size());
  cert.bitangents = std::move(scan);
  cert.split = cert.counts.surface_points == cert.counts.weil_target;
  const bool by_lines = cert.rational_bitangents == 28;
  if (cert.split != by_lines) {
    throw SplitAnomaly("split certificate disagreement: |X(F_q)| = " + std::to_string(cert.counts.surface_points) +
                       " (split count " + std::to_string(cert.counts.weil_target) + ") but " +
                       std::to_string(cert.rational_bitangents) + " rational bitangents");
  }
  return cert;
}

SplitCertificate is_split(const quartic::TernaryQuartic& Q) {
  if (!quartic::is_smooth(Q)) throw NotSmoothError();
  return certify_split(Q, quartic::scan_bitangents(Q));
}

}  // namespace fulldp::cover
