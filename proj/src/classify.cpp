#include "fulldp/classify.hpp"

#include <omp.h>

#include <algorithm>
#include <atomic>
#include <limits>
#include <map>
#include <stdexcept>

namespace fulldp::classify {

using gf::Elem;
using gf::Field;
using Mat = std::array<Elem, 9>;
using plane::Plane;
using plane::ProjLine;
using quartic::TernaryQuartic;

Mat mat_mul(const Field& F, const Mat& a, const Mat& b) {
  Mat out;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      Elem s = F.zero();
      for (int k = 0; k < 3; ++k) s = F.add(s, F.mul(a[3 * i + k], b[3 * k + j]));
      out[3 * i + j] = s;
    }
  return out;
}

Mat adjugate(const Field& F, const Mat& a) {
  const auto minor = [&](int r0, int r1, int c0, int c1) {
    return F.sub(F.mul(a[3 * r0 + c0], a[3 * r1 + c1]), F.mul(a[3 * r0 + c1], a[3 * r1 + c0]));
  };
  // adj[i][j] = cofactor[j][i]
  return {minor(1, 2, 1, 2),        F.neg(minor(0, 2, 1, 2)), minor(0, 1, 1, 2),
          F.neg(minor(1, 2, 0, 2)), minor(0, 2, 0, 2),        F.neg(minor(0, 1, 0, 2)),
          minor(1, 2, 0, 1),        F.neg(minor(0, 2, 0, 1)), minor(0, 1, 0, 1)};
}

Elem determinant(const Field& F, const Mat& a) {
  const Mat adj = adjugate(F, a);
  return F.add(F.add(F.mul(a[0], adj[0]), F.mul(a[1], adj[3])), F.mul(a[2], adj[6]));
}

namespace {

Mat transpose(const Mat& a) { return {a[0], a[3], a[6], a[1], a[4], a[7], a[2], a[5], a[8]}; }

plane::Vec3 apply(const Field& F, const Mat& a, const plane::Vec3& v) {
  plane::Vec3 out;
  for (int i = 0; i < 3; ++i)
    out[i] = F.add(F.add(F.mul(a[3 * i], v[0]), F.mul(a[3 * i + 1], v[1])), F.mul(a[3 * i + 2], v[2]));
  return out;
}

Mat columns(const plane::Vec3& a, const plane::Vec3& b, const plane::Vec3& c) {
  return {a[0], b[0], c[0], a[1], b[1], c[1], a[2], b[2], c[2]};
}

bool independent(const Field& F, const plane::Vec3& a, const plane::Vec3& b, const plane::Vec3& c) {
  return determinant(F, columns(a, b, c)).code != 0;
}

bool general_position(const Field& F, const std::array<plane::Vec3, 4>& v) {
  return independent(F, v[0], v[1], v[2]) && independent(F, v[0], v[1], v[3]) && independent(F, v[0], v[2], v[3]) &&
         independent(F, v[1], v[2], v[3]);
}

// Columns v0, v1, v2 scaled so that they sum to v3; requires general position.
Mat frame_basis(const Field& F, const std::array<plane::Vec3, 4>& v) {
  const Mat B = columns(v[0], v[1], v[2]);
  const Mat adj = adjugate(F, B);
  const Elem inv_det = F.inv(determinant(F, B));
  const plane::Vec3 c = apply(F, adj, v[3]);
  Mat out = B;
  for (int j = 0; j < 3; ++j) {
    const Elem s = F.mul(c[j], inv_det);
    for (int i = 0; i < 3; ++i) out[3 * i + j] = F.mul(out[3 * i + j], s);
  }
  return out;
}

}  // namespace

ProjTransform ProjTransform::identity(const Field& F) {
  return {{F.one(), F.zero(), F.zero(), F.zero(), F.one(), F.zero(), F.zero(), F.zero(), F.one()}};
}

ProjTransform ProjTransform::from_matrix(const Field& F, const Mat& a) {
  if (determinant(F, a).code == 0) throw std::invalid_argument("singular projective transform");
  Elem lead{};
  for (auto v : a)
    if (v.code != 0) {
      lead = v;
      break;
    }
  const Elem s = F.inv(lead);
  ProjTransform out;
  for (int i = 0; i < 9; ++i) out.m[i] = F.mul(a[i], s);
  return out;
}

ProjTransform compose(const Field& F, const ProjTransform& a, const ProjTransform& b) {
  return ProjTransform::from_matrix(F, mat_mul(F, a.m, b.m));
}

std::string format(const Field& F, const ProjTransform& M) {
  std::string out = "[";
  for (int i = 0; i < 3; ++i) {
    if (i) out += ";";
    for (int j = 0; j < 3; ++j) {
      if (j) out += " ";
      const std::string e = F.format(M.m[3 * i + j]);
      out += F.k() == 1 ? e : "(" + e + ")";
    }
  }
  return out + "]";
}

TernaryQuartic apply_transform(const ProjTransform& M, const TernaryQuartic& Q) {
  const Field& F = Q.field();
  if (determinant(F, M.m).code == 0) throw std::invalid_argument("singular projective transform");
  // adj(M) is M^{-1} up to a scalar, and scalars change f only by a fourth power.
  return quartic::substitute(Q, adjugate(F, M.m)).canonical();
}

ProfileInvariant invariant_of(const config::ConfigReport& r) {
  ProfileInvariant inv;
  for (const auto& p : r.profiles) inv.profiles.push_back(p.counts);
  std::sort(inv.profiles.begin(), inv.profiles.end());
  inv.branch_points = r.counts.branch_points;
  inv.hyperflexes = r.hyperflexes;
  return inv;
}

Frame frame_of(const config::ConfigReport& r) {
  Frame fr{r.quartic.canonical(), {}, {}, {}, invariant_of(r)};
  const Field& F = *r.field;
  const auto plane = Plane::of(r.field);
  for (const auto& p : r.profiles) {
    fr.lines.push_back(p.line);
    fr.profiles.push_back(p.counts);
  }
  const std::size_t n = fr.lines.size();
  std::vector<std::uint8_t> through(plane->size(), 0);
  for (const auto& L : fr.lines)
    for (auto p : plane->points_on_line(plane->line_index(L))) ++through[p];
  fr.meet.assign(n * n, 0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j) continue;
      const auto P = plane::normalize_point(F, plane::cross(F, plane::vec(fr.lines[i]), plane::vec(fr.lines[j])));
      fr.meet[i * n + j] = through[plane->point_index(P)];
    }
  return fr;
}

std::optional<ProjTransform> equivalent(const Frame& a, const Frame& b) {
  if (a.invariant != b.invariant) return std::nullopt;
  const Field& F = a.canonical.field();
  const auto plane = Plane::of(a.canonical.field_ptr());
  const std::size_t n = a.lines.size();
  if (n != b.lines.size()) return std::nullopt;

  std::vector<plane::Vec3> va(n), vb(n);
  for (std::size_t i = 0; i < n; ++i) {
    va[i] = plane::vec(a.lines[i]);
    vb[i] = plane::vec(b.lines[i]);
  }

  // Lex-first general-position 4-tuple of the source lines.
  std::array<std::size_t, 4> src{};
  bool found = false;
  for (std::size_t i = 0; i < n && !found; ++i)
    for (std::size_t j = i + 1; j < n && !found; ++j)
      for (std::size_t k = j + 1; k < n && !found; ++k) {
        if (!independent(F, va[i], va[j], va[k])) continue;
        for (std::size_t l = k + 1; l < n && !found; ++l)
          if (general_position(F, {va[i], va[j], va[k], va[l]})) {
            src = {i, j, k, l};
            found = true;
          }
      }
  if (!found) throw FrameError("no four bitangents in general position");

  const Mat B1 = frame_basis(F, {va[src[0]], va[src[1]], va[src[2]], va[src[3]]});
  const Mat B1inv = adjugate(F, B1);  // up to a scalar

  std::vector<std::int16_t> target_slot(plane->size(), -1);
  for (std::size_t i = 0; i < n; ++i) target_slot[plane->line_index(b.lines[i])] = static_cast<std::int16_t>(i);

  const auto meet_a = [&](std::size_t s, std::size_t t) { return a.meet[src[s] * n + src[t]]; };
  const auto meet_b = [&](std::size_t s, std::size_t t) { return b.meet[s * n + t]; };

  constexpr std::uint64_t kNone = std::numeric_limits<std::uint64_t>::max();
  std::atomic<std::uint64_t> best{kNone};
  std::vector<Mat> winner(n);

  const auto search = [&](std::size_t t0) {
    if (b.profiles[t0] != a.profiles[src[0]]) return;
    for (std::size_t t1 = 0; t1 < n; ++t1) {
      if (t1 == t0 || b.profiles[t1] != a.profiles[src[1]] || meet_b(t0, t1) != meet_a(0, 1)) continue;
      for (std::size_t t2 = 0; t2 < n; ++t2) {
        if (t2 == t0 || t2 == t1 || b.profiles[t2] != a.profiles[src[2]]) continue;
        if (meet_b(t0, t2) != meet_a(0, 2) || meet_b(t1, t2) != meet_a(1, 2)) continue;
        if (!independent(F, vb[t0], vb[t1], vb[t2])) continue;
        for (std::size_t t3 = 0; t3 < n; ++t3) {
          if (t3 == t0 || t3 == t1 || t3 == t2 || b.profiles[t3] != a.profiles[src[3]]) continue;
          if (meet_b(t0, t3) != meet_a(0, 3) || meet_b(t1, t3) != meet_a(1, 3) || meet_b(t2, t3) != meet_a(2, 3))
            continue;
          const std::uint64_t index = ((t0 * n + t1) * n + t2) * n + t3;
          if (index >= best.load(std::memory_order_relaxed)) return;
          const std::array<plane::Vec3, 4> tv{vb[t0], vb[t1], vb[t2], vb[t3]};
          if (!general_position(F, tv)) continue;
          // Line map N with N(src_i) ~ target_i.
          const Mat N = mat_mul(F, frame_basis(F, tv), B1inv);
          bool maps = true;
          for (std::size_t i = 0; i < n && maps; ++i) {
            const auto img = plane::normalize_line(F, apply(F, N, va[i]));
            const auto slot = target_slot[plane->line_index(img)];
            maps = slot >= 0 && b.profiles[static_cast<std::size_t>(slot)] == a.profiles[i];
          }
          if (!maps) continue;
          // Points move by N^{-T}, so f o M^{-1} is f o N^T up to a scalar.
          if (quartic::substitute(a.canonical, transpose(N)).canonical() != b.canonical) continue;
          winner[t0] = N;
          std::uint64_t cur = best.load();
          while (index < cur && !best.compare_exchange_weak(cur, index)) {
          }
          return;
        }
      }
    }
  };

  const auto count = static_cast<std::int64_t>(n);
  if (omp_in_parallel()) {
    for (std::int64_t t0 = 0; t0 < count; ++t0) search(static_cast<std::size_t>(t0));
  } else {
#pragma omp parallel for schedule(dynamic, 1)
    for (std::int64_t t0 = 0; t0 < count; ++t0) search(static_cast<std::size_t>(t0));
  }

  const std::uint64_t idx = best.load();
  if (idx == kNone) return std::nullopt;
  const Mat& N = winner[idx / (n * n * n)];
  return ProjTransform::from_matrix(F, transpose(adjugate(F, N)));
}

std::optional<ProjTransform> equivalent(const config::ConfigReport& a, const config::ConfigReport& b) {
  return equivalent(frame_of(a), frame_of(b));
}

std::optional<ProjTransform> equivalent(const TernaryQuartic& a, const TernaryQuartic& b) {
  return equivalent(config::audit(a), config::audit(b));
}

std::vector<IsoClass> classify(const std::vector<config::ConfigReport>& reports) {
  // Distinct canonical quartics, ascending.
  std::map<TernaryQuartic, std::vector<std::size_t>> distinct;
  for (std::size_t i = 0; i < reports.size(); ++i) distinct[reports[i].quartic.canonical()].push_back(i);

  struct Entry {
    const TernaryQuartic* canonical;
    const std::vector<std::size_t>* sources;
  };
  std::map<ProfileInvariant, std::vector<Entry>> buckets;
  for (const auto& [Q, src] : distinct) buckets[invariant_of(reports[src.front()])].push_back({&Q, &src});

  std::vector<const std::vector<Entry>*> work;
  for (const auto& [inv, entries] : buckets) work.push_back(&entries);

  struct Partial {
    std::vector<std::size_t> rep;  // index into the bucket's entries
    std::vector<std::vector<std::size_t>> members;
  };
  std::vector<Partial> resolved(work.size());

  const auto resolve = [&](std::size_t w) {
    const auto& entries = *work[w];
    std::vector<Frame> frames;
    frames.reserve(entries.size());
    for (const auto& e : entries) frames.push_back(frame_of(reports[e.sources->front()]));
    Partial& out = resolved[w];
    for (std::size_t i = 0; i < entries.size(); ++i) {
      bool placed = false;
      for (std::size_t c = 0; c < out.rep.size() && !placed; ++c) {
        if (equivalent(frames[out.rep[c]], frames[i])) {
          out.members[c].push_back(i);
          placed = true;
        }
      }
      if (!placed) {
        out.rep.push_back(i);
        out.members.push_back({i});
      }
    }
  };

  const auto nwork = static_cast<std::int64_t>(work.size());
  if (nwork == 1) {
    resolve(0);  // leaves the frame search free to use every thread
  } else {
#pragma omp parallel for schedule(dynamic, 1)
    for (std::int64_t w = 0; w < nwork; ++w) resolve(static_cast<std::size_t>(w));
  }

  std::vector<IsoClass> classes;
  for (std::size_t w = 0; w < work.size(); ++w) {
    const auto& entries = *work[w];
    for (std::size_t c = 0; c < resolved[w].rep.size(); ++c) {
      const Entry& rep = entries[resolved[w].rep[c]];
      const auto& rep_report = reports[rep.sources->front()];
      IsoClass cls{*rep.canonical, resolved[w].members[c].size(), 0, rep_report, rep_report.fullness.full, {}};
      cls.report.quartic = *rep.canonical;  // same surface; square scaling changes no count
      for (auto m : resolved[w].members[c])
        for (auto s : *entries[m].sources) cls.source_indices.push_back(s);
      std::sort(cls.source_indices.begin(), cls.source_indices.end());
      cls.sources = cls.source_indices.size();
      classes.push_back(std::move(cls));
    }
  }
  std::sort(classes.begin(), classes.end(), [](const IsoClass& x, const IsoClass& y) {
    if (x.full != y.full) return x.full;
    return x.representative < y.representative;
  });
  return classes;
}

}  // namespace fulldp::classify
