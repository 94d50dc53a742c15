#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <span>
#include <stdexcept>
#include <vector>

#include "emolab/core.hpp"
#include "emolab/rng.hpp"

namespace emolab {

/// Reference point h for the bi-objective hypervolume.
using HvReference = std::array<double, 2>;

/// (-ceil(n/2)^2, -ceil(n/2)^2): integral, and below (-(n/2)^2, -(n/2)^2).
inline HvReference default_hv_reference(std::size_t n) {
  const auto half = static_cast<double>((n + 1) / 2);
  return {-half * half, -half * half};
}

/// Area of the union of boxes [h1, f1] x [h2, f2].
///
/// Sweep over points by decreasing f1, adding the strip each point adds above
/// the best f2 seen so far. Arithmetic is in double; with integral inputs it
/// is exact while every partial area stays below 2^53.
inline double hypervolume_2d(std::span<const FitnessVector> points, const HvReference& h) {
  std::vector<std::array<double, 2>> pts;
  pts.reserve(points.size());
  for (const auto& f : points) {
    if (f.dims() != 2) throw std::invalid_argument("hypervolume_2d: needs 2 objectives");
    const double a = static_cast<double>(f[0]);
    const double b = static_cast<double>(f[1]);
    if (a < h[0] || b < h[1])
      throw std::invalid_argument("hypervolume_2d: point does not weakly dominate h");
    pts.push_back({a, b});
  }
  std::sort(pts.begin(), pts.end(), [](const auto& p, const auto& q) {
    return p[0] != q[0] ? p[0] > q[0] : p[1] > q[1];
  });
  double area = 0.0;
  double top = h[1];
  for (const auto& p : pts) {
    if (p[1] > top) {
      area += (p[0] - h[0]) * (p[1] - top);
      top = p[1];
    }
  }
  return area;
}

/// HV(S) - HV(S \ {S[index]}).
inline double hv_contribution(std::span<const FitnessVector> set, std::size_t index,
                              const HvReference& h) {
  if (index >= set.size()) throw std::invalid_argument("hv_contribution: index not in set");
  std::vector<FitnessVector> rest;
  rest.reserve(set.size() - 1);
  for (std::size_t i = 0; i < set.size(); ++i)
    if (i != index) rest.push_back(set[i]);
  return hypervolume_2d(set, h) - hypervolume_2d(rest, h);
}

inline std::vector<double> hv_contributions(std::span<const FitnessVector> set,
                                            const HvReference& h) {
  std::vector<double> out(set.size());
  for (std::size_t i = 0; i < set.size(); ++i) out[i] = hv_contribution(set, i, h);
  return out;
}

/// A uniformly chosen member among those with the smallest contribution to
/// the layer's hypervolume. Returns an index into `last_layer`.
inline std::size_t smsemoa_eject(std::span<const FitnessVector> last_layer,
                                 const HvReference& h, Rng& rng) {
  if (last_layer.empty()) throw std::invalid_argument("smsemoa_eject: empty layer");
  if (last_layer.size() == 1) return 0;
  const auto contrib = hv_contributions(last_layer, h);
  const double lowest = *std::min_element(contrib.begin(), contrib.end());
  std::vector<std::size_t> worst;
  for (std::size_t i = 0; i < contrib.size(); ++i)
    if (contrib[i] == lowest) worst.push_back(i);
  return worst.size() == 1 ? worst.front() : worst[rng.below(worst.size())];
}

}  // namespace emolab
