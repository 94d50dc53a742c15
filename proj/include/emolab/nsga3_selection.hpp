#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "emolab/core.hpp"
#include "emolab/rng.hpp"

namespace emolab {

using RealVector = std::vector<double>;

struct ReferencePointSet {
  std::vector<RealVector> points;

  std::size_t size() const noexcept { return points.size(); }
  std::size_t dims() const noexcept { return points.empty() ? 0 : points.front().size(); }

  /// True when every axis unit vector is present.
  bool contains_unit_vectors() const {
    const std::size_t d = dims();
    for (std::size_t axis = 0; axis < d; ++axis) {
      RealVector e(d, 0.0);
      e[axis] = 1.0;
      if (std::find(points.begin(), points.end(), e) == points.end()) return false;
    }
    return d > 0;
  }

  /// The d axis unit vectors, in axis order.
  static ReferencePointSet unit_vectors(std::size_t d) {
    ReferencePointSet r;
    for (std::size_t axis = 0; axis < d; ++axis) {
      RealVector e(d, 0.0);
      e[axis] = 1.0;
      r.points.push_back(std::move(e));
    }
    return r;
  }
};

namespace detail {
inline void das_dennis_fill(std::size_t d, std::size_t p, std::size_t left, RealVector& cur,
                            std::vector<RealVector>& out) {
  if (cur.size() + 1 == d) {
    cur.push_back(static_cast<double>(left) / static_cast<double>(p));
    out.push_back(cur);
    cur.pop_back();
    return;
  }
  for (std::size_t a = 0; a <= left; ++a) {
    cur.push_back(static_cast<double>(a) / static_cast<double>(p));
    das_dennis_fill(d, p, left - a, cur, out);
    cur.pop_back();
  }
}
}  // namespace detail

/// All vectors (a_1/p, ..., a_d/p) with nonnegative integers a_i summing to p,
/// in lexicographic order of (a_1, ..., a_d).
inline ReferencePointSet das_dennis(std::size_t d, std::size_t p) {
  if (d < 2) throw std::invalid_argument("das_dennis: need at least 2 objectives");
  if (p < 1) throw std::invalid_argument("das_dennis: p must be at least 1");
  ReferencePointSet r;
  RealVector cur;
  detail::das_dennis_fill(d, p, p, cur, r.points);
  return r;
}

// ---------------------------------------------------------------------------
// Normalization
// ---------------------------------------------------------------------------

inline constexpr double kDefaultEpsNadir = 1e-6;

struct NormalizationContext {
  RealVector ideal;
  RealVector max;
  RealVector nadir;
  double eps_nadir = kDefaultEpsNadir;
};

/// Ideal and max points are the componentwise min and max over `points`.
/// The nadir coordinate is the max coordinate when that is both above the
/// ideal and at least eps_nadir; otherwise max(ideal + eps, eps). This keeps
///   nadir >= eps,  nadir > ideal,  nadir <= max
/// whenever the three can hold together.
inline NormalizationContext compute_context(std::span<const FitnessVector> points,
                                            double eps_nadir = kDefaultEpsNadir) {
  if (points.empty()) throw std::invalid_argument("compute_context: empty input");
  if (!(eps_nadir > 0.0)) throw std::invalid_argument("compute_context: eps_nadir must be > 0");
  const std::size_t d = points.front().dims();
  NormalizationContext ctx;
  ctx.eps_nadir = eps_nadir;
  ctx.ideal.assign(d, std::numeric_limits<double>::infinity());
  ctx.max.assign(d, -std::numeric_limits<double>::infinity());
  for (const auto& f : points) {
    for (std::size_t j = 0; j < d; ++j) {
      const auto v = static_cast<double>(f[j]);
      ctx.ideal[j] = std::min(ctx.ideal[j], v);
      ctx.max[j] = std::max(ctx.max[j], v);
    }
  }
  ctx.nadir.resize(d);
  for (std::size_t j = 0; j < d; ++j) {
    if (ctx.max[j] > ctx.ideal[j] && ctx.max[j] >= eps_nadir)
      ctx.nadir[j] = ctx.max[j];
    else
      ctx.nadir[j] = std::max(ctx.ideal[j] + eps_nadir, eps_nadir);
  }
  return ctx;
}

inline RealVector normalize(const FitnessVector& f, const NormalizationContext& ctx) {
  RealVector out(f.dims());
  for (std::size_t j = 0; j < f.dims(); ++j)
    out[j] = (static_cast<double>(f[j]) - ctx.ideal[j]) / (ctx.nadir[j] - ctx.ideal[j]);
  return out;
}

/// Euclidean distance from v to the line through the origin and r.
inline double ray_distance(const RealVector& v, const RealVector& r) {
  if (v.size() != r.size()) throw std::invalid_argument("ray_distance: dimension mismatch");
  double vr = 0.0;
  double rr = 0.0;
  for (std::size_t j = 0; j < r.size(); ++j) {
    vr += v[j] * r[j];
    rr += r[j] * r[j];
  }
  if (rr == 0.0) throw std::invalid_argument("ray_distance: zero reference direction");
  const double t = vr / rr;
  double sq = 0.0;
  for (std::size_t j = 0; j < r.size(); ++j) {
    const double e = v[j] - t * r[j];
    sq += e * e;
  }
  return std::sqrt(sq);
}

struct Association {
  std::size_t ref = 0;  ///< index into the reference set
  double distance = 0.0;
};

/// Nearest reference ray for every vector. Exactly equal distances are ties,
/// broken uniformly at random (one draw per tied vector, in input order).
inline std::vector<Association> associate(std::span<const RealVector> vectors,
                                          const ReferencePointSet& refs, Rng& rng) {
  if (refs.points.empty()) throw std::invalid_argument("associate: empty reference set");
  std::vector<Association> out;
  out.reserve(vectors.size());
  std::vector<std::size_t> best;
  for (const auto& v : vectors) {
    double best_d = std::numeric_limits<double>::infinity();
    best.clear();
    for (std::size_t r = 0; r < refs.size(); ++r) {
      const double dist = ray_distance(v, refs.points[r]);
      if (dist < best_d) {
        best_d = dist;
        best.assign(1, r);
      } else if (dist == best_d) {
        best.push_back(r);
      }
    }
    const std::size_t pick = best.size() == 1 ? best.front() : best[rng.below(best.size())];
    out.push_back({pick, best_d});
  }
  return out;
}

/// Niching fill of the critical layer.
///
/// `selected` is Y (the layers before the critical one), `critical` the
/// critical layer, and the result holds mu - |Y| indices into `critical`.
/// Normalization and association cover Y and the critical layer together.
///
/// Loop: take a reference point with the smallest niche count among the
/// active ones (ties random); among unselected critical members associated
/// with it, take one with the smallest ray distance (ties random) and bump
/// the count; if there is none, deactivate the point.
inline std::vector<std::size_t> niching(std::span<const FitnessVector> selected,
                                        std::span<const FitnessVector> critical,
                                        const ReferencePointSet& refs, std::size_t mu,
                                        Rng& rng, double eps_nadir = kDefaultEpsNadir) {
  if (!(selected.size() < mu && mu <= selected.size() + critical.size()))
    throw std::invalid_argument("niching: requires |Y| < mu <= |Y| + |F_crit|");
  if (refs.points.empty()) throw std::invalid_argument("niching: empty reference set");

  std::vector<FitnessVector> all(selected.begin(), selected.end());
  all.insert(all.end(), critical.begin(), critical.end());
  const auto ctx = compute_context(all, eps_nadir);
  std::vector<RealVector> normalized;
  normalized.reserve(all.size());
  for (const auto& f : all) normalized.push_back(normalize(f, ctx));
  const auto assoc = associate(normalized, refs, rng);

  std::vector<std::size_t> niche(refs.size(), 0);
  for (std::size_t i = 0; i < selected.size(); ++i) ++niche[assoc[i].ref];

  const std::size_t offset = selected.size();
  const std::size_t want = mu - selected.size();
  std::vector<bool> taken(critical.size(), false);
  std::vector<std::size_t> active(refs.size());
  for (std::size_t r = 0; r < refs.size(); ++r) active[r] = r;

  std::vector<std::size_t> result;
  result.reserve(want);
  std::vector<std::size_t> ties;
  while (result.size() < want) {
    // Cannot empty before `want` is met: every critical member is associated
    // with some point, and a point is only dropped when it has none left.
    std::size_t min_count = std::numeric_limits<std::size_t>::max();
    ties.clear();
    for (std::size_t pos = 0; pos < active.size(); ++pos) {
      const std::size_t c = niche[active[pos]];
      if (c < min_count) {
        min_count = c;
        ties.assign(1, pos);
      } else if (c == min_count) {
        ties.push_back(pos);
      }
    }
    const std::size_t active_pos = ties.size() == 1 ? ties.front() : ties[rng.below(ties.size())];
    const std::size_t r_min = active[active_pos];

    double best_d = std::numeric_limits<double>::infinity();
    ties.clear();
    for (std::size_t c = 0; c < critical.size(); ++c) {
      if (taken[c] || assoc[offset + c].ref != r_min) continue;
      const double dist = assoc[offset + c].distance;
      if (dist < best_d) {
        best_d = dist;
        ties.assign(1, c);
      } else if (dist == best_d) {
        ties.push_back(c);
      }
    }
    if (ties.empty()) {
      active.erase(active.begin() + static_cast<std::ptrdiff_t>(active_pos));
      continue;
    }
    const std::size_t pick = ties.size() == 1 ? ties.front() : ties[rng.below(ties.size())];
    taken[pick] = true;
    ++niche[r_min];
    result.push_back(pick);
  }
  return result;
}

}  // namespace emolab
