// Serial reference kernels and brute-force oracles. Slow and straightforward; used by
// the tests and the benchmark, never by the pipeline.
#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <vector>

#include "fulldp/classify.hpp"
#include "fulldp/cover.hpp"
#include "fulldp/quartic.hpp"

namespace fulldp::reference {

/// Points of Q by evaluating f at every point of P^2(F_q).
std::uint64_t count_points(const quartic::TernaryQuartic& Q);

/// Fibre count computing the quadratic character per point.
cover::CoverCount count_surface_points(const quartic::TernaryQuartic& Q);

/// Restriction by substituting s P0 + t P1 into f symbolically (no plane tables).
quartic::BinaryQuartic restrict_to_line(const quartic::TernaryQuartic& Q, const plane::ProjLine& L);

/// Line-by-line bitangent scan through classify_roots.
quartic::BitangentScan scan_bitangents(const quartic::TernaryQuartic& Q);

/// Root profile of g by testing every point of P^1(F_{q^4}) and P^1(F_{q^3}) and
/// grouping roots by their Frobenius orbits. Same shape as classify_roots().roots.
std::vector<quartic::RootInfo> root_profile_bruteforce(const gf::Field& F, const quartic::BinaryQuartic& g);

/// A common zero of f_x, f_y, f_z in P^2(F_{q^d}), if any.
bool has_singular_point(const quartic::TernaryQuartic& Q, std::uint32_t d);

/// Points off Q lying on exactly four and exactly three of the given lines, found by
/// testing every point of the plane against every line.
struct ConcurrencyTally {
  long quadruple = 0;
  long triple = 0;
};
ConcurrencyTally concurrency_sweep(const quartic::TernaryQuartic& Q, const std::vector<plane::ProjLine>& lines);

/// Frame search without pruning or threads: every ordered 4-tuple of target lines.
std::optional<classify::ProjTransform> equivalent_serial(const classify::Frame& a, const classify::Frame& b);

/// Sweep of PGL(3, q): some M with Q2(M v) = s Q1(v), s a nonzero square, or none.
/// Exhaustive; columns are pruned by exact necessary conditions on e_i and e_i + e_j.
std::optional<std::array<gf::Elem, 9>> pgl_sweep(const quartic::TernaryQuartic& Q1, const quartic::TernaryQuartic& Q2);

}  // namespace fulldp::reference
