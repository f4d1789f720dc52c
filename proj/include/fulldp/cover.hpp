// The double cover X_2 : w^2 = f(x, y, z) of the plane branched over Q, and the
// point-count split certificate |X_2(F_q)| = q^2 + 8q + 1.
#pragma once

#include <cstdint>

#include "fulldp/quartic.hpp"

namespace fulldp::cover {

struct CoverCount {
  std::uint64_t surface_points = 0;  // |X_2(F_q)|
  std::uint64_t branch_points = 0;   // |Q(F_q)|
  std::uint64_t weil_target = 0;     // q^2 + 8q + 1
  std::uint64_t nonsquare_points = 0;

  friend bool operator==(const CoverCount&, const CoverCount&) = default;
};

class NotSmoothError : public quartic::QuarticError {
 public:
  NotSmoothError() : QuarticError("quartic is not smooth") {}
};

/// Point count and 28-bitangent count disagree about splitness.
class SplitAnomaly : public quartic::QuarticError {
 public:
  using QuarticError::QuarticError;
};

std::uint64_t weil_split_count(std::uint32_t q);

/// Fibre count over P^2(F_q) through the quadratic character. OpenMP-parallel.
CoverCount count_surface_points(const quartic::TernaryQuartic& Q);

struct SplitCertificate {
  bool split = false;
  CoverCount counts;
  int rational_bitangents = 0;
  quartic::BitangentScan bitangents;
};

/// Splitness of a smooth quartic. Throws NotSmoothError, LineComponentError, or
/// SplitAnomaly when the point count and the bitangent count disagree.
SplitCertificate is_split(const quartic::TernaryQuartic& Q);

/// As is_split, with smoothness already established and bitangents already known.
SplitCertificate certify_split(const quartic::TernaryQuartic& Q, quartic::BitangentScan scan);

}  // namespace fulldp::cover
