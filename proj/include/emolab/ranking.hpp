#pragma once

#include <algorithm>
#include <cstddef>
#include <limits>
#include <numeric>
#include <span>
#include <stdexcept>
#include <vector>

#include "emolab/core.hpp"
#include "emolab/rng.hpp"

namespace emolab {

/// Layers F^1, F^2, ... as indices into the sorted input. Each layer lists
/// its members in increasing input order.
using Layers = std::vector<std::vector<std::size_t>>;

/// Non-dominated sorting by dominance counts: O(|R|^2 d).
inline Layers non_dominated_sort(std::span<const FitnessVector> points) {
  const std::size_t m = points.size();
  std::vector<std::size_t> dominated_by_count(m, 0);
  std::vector<std::vector<std::size_t>> dominates_list(m);

  for (std::size_t a = 0; a < m; ++a) {
    for (std::size_t b = a + 1; b < m; ++b) {
      switch (dominance_compare(points[a], points[b])) {
        case Dominance::Dominates:
          dominates_list[a].push_back(b);
          ++dominated_by_count[b];
          break;
        case Dominance::DominatedBy:
          dominates_list[b].push_back(a);
          ++dominated_by_count[a];
          break;
        default:
          break;
      }
    }
  }

  Layers layers;
  std::vector<std::size_t> current;
  for (std::size_t a = 0; a < m; ++a)
    if (dominated_by_count[a] == 0) current.push_back(a);

  while (!current.empty()) {
    std::vector<std::size_t> next;
    for (auto a : current) {
      for (auto b : dominates_list[a])
        if (--dominated_by_count[b] == 0) next.push_back(b);
    }
    std::sort(next.begin(), next.end());
    layers.push_back(std::move(current));
    current = std::move(next);
  }
  return layers;
}

/// The critical layer i* and what it leaves to fill.
struct CriticalLayer {
  std::size_t index = 0;     ///< 0-based position of F^{i*} in the layer list
  std::size_t prefix = 0;    ///< |Y| = sum of sizes of the layers before it
  std::size_t remaining = 0; ///< r = mu - |Y|, always >= 1
};

inline CriticalLayer select_critical_layer(std::span<const std::size_t> layer_sizes,
                                           std::size_t mu) {
  if (mu == 0) throw std::invalid_argument("select_critical_layer: mu must be positive");
  std::size_t prefix = 0;
  for (std::size_t i = 0; i < layer_sizes.size(); ++i) {
    if (prefix + layer_sizes[i] >= mu) return {i, prefix, mu - prefix};
    prefix += layer_sizes[i];
  }
  throw std::invalid_argument("select_critical_layer: layers hold fewer than mu members");
}

inline CriticalLayer select_critical_layer(const Layers& layers, std::size_t mu) {
  std::vector<std::size_t> sizes;
  sizes.reserve(layers.size());
  for (const auto& l : layers) sizes.push_back(l.size());
  return select_critical_layer(sizes, mu);
}

inline constexpr double kInfiniteCrowding = std::numeric_limits<double>::infinity();

/// Crowding distance of every member of M.
///
/// Per objective, M is stably sorted by decreasing value. The first and last
/// positions get an infinite contribution; an interior position i gets
/// (f(i-1) - f(i+1)) / (f(first) - f(last)), or 0 when the objective is
/// constant over M.
inline std::vector<double> crowding_distance(std::span<const FitnessVector> m) {
  const std::size_t size = m.size();
  std::vector<double> dist(size, 0.0);
  if (size == 0) return dist;
  const std::size_t d = m[0].dims();

  std::vector<std::size_t> order(size);
  for (std::size_t k = 0; k < d; ++k) {
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return m[a][k] > m[b][k]; });
    dist[order.front()] = kInfiniteCrowding;
    dist[order.back()] = kInfiniteCrowding;
    const auto range = static_cast<double>(m[order.front()][k] - m[order.back()][k]);
    if (range == 0.0) continue;
    for (std::size_t i = 1; i + 1 < size; ++i) {
      const auto gap = static_cast<double>(m[order[i - 1]][k] - m[order[i + 1]][k]);
      dist[order[i]] += gap / range;
    }
  }
  return dist;
}

/// Picks r members of the critical layer with the largest crowding distance,
/// breaking ties uniformly at random. Returns indices into `layer`.
inline std::vector<std::size_t> nsga2_truncate(std::span<const FitnessVector> layer,
                                               std::size_t r, Rng& rng) {
  if (r > layer.size()) throw std::invalid_argument("nsga2_truncate: r exceeds layer size");
  const auto dist = crowding_distance(layer);
  std::vector<std::size_t> order(layer.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  // A uniform shuffle followed by a stable sort leaves equal keys in uniformly
  // random relative order.
  rng.shuffle(order);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return dist[a] > dist[b]; });
  order.resize(r);
  return order;
}

}  // namespace emolab
