#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <numeric>
#include <stdexcept>
#include <span>
#include <sstream>
#include <string>
#include <vector>

#include "emolab/harness.hpp"

namespace emolab {

/// Outcome of one oracle or property suite.
struct SuiteReport {
  std::string name;
  bool passed = true;
  std::size_t checks = 0;
  std::string counterexample;  ///< first failure, empty when passed
};

using SortFunction = std::function<Layers(std::span<const FitnessVector>)>;
using HypervolumeFunction = std::function<double(std::span<const FitnessVector>, const HvReference&)>;

namespace detail {

inline std::string describe(std::span<const FitnessVector> pts) {
  std::ostringstream os;
  os << '{';
  for (std::size_t i = 0; i < pts.size(); ++i) os << (i ? " " : "") << pts[i];
  os << '}';
  return os.str();
}

inline std::string describe(const Layers& layers) {
  std::ostringstream os;
  for (const auto& l : layers) {
    os << '[';
    for (std::size_t i = 0; i < l.size(); ++i) os << (i ? " " : "") << l[i];
    os << ']';
  }
  return os.str();
}

/// Random multiset for the sorting suite: alternately OneTrapZeroTrap images
/// of random strings and random integer vectors in [0, n]^d (d = 2 or 3).
inline std::vector<FitnessVector> random_sort_instance(Rng& rng, std::size_t instance) {
  const std::size_t size = 1 + rng.below(64);
  const std::size_t n = 1 + rng.below(10);
  std::vector<FitnessVector> pts;
  pts.reserve(size);
  if (instance % 2 == 0) {
    const auto inst = ProblemInstance::otzt(n);
    for (std::size_t i = 0; i < size; ++i) pts.push_back(evaluate_otzt(inst, random_bitstring(n, rng)));
  } else {
    const bool three = rng.one_in(3);
    auto v = [&] { return static_cast<std::int64_t>(rng.below(n + 1)); };
    for (std::size_t i = 0; i < size; ++i)
      pts.push_back(three ? FitnessVector{v(), v(), v()} : FitnessVector{v(), v()});
  }
  return pts;
}

}  // namespace detail

inline SuiteReport verify_sorting(std::size_t instances, std::uint64_t seed,
                                  const SortFunction& sorter = [](std::span<const FitnessVector> p) {
                                    return non_dominated_sort(p);
                                  }) {
  SuiteReport rep{"sorting", true, 0, {}};
  Rng rng(seed);
  for (std::size_t k = 0; k < instances; ++k) {
    const auto pts = detail::random_sort_instance(rng, k);
    const auto expected = oracle_non_dominated_sort(pts);
    const auto got = sorter(pts);
    ++rep.checks;
    if (got != expected) {
      rep.passed = false;
      rep.counterexample = "points " + detail::describe(pts) + " expected layers " +
                           detail::describe(expected) + " got " + detail::describe(got);
      return rep;
    }
  }
  return rep;
}

inline SuiteReport verify_hypervolume(std::size_t instances, std::uint64_t seed,
                                      const HypervolumeFunction& hv =
                                          [](std::span<const FitnessVector> p, const HvReference& h) {
                                            return hypervolume_2d(p, h);
                                          }) {
  SuiteReport rep{"hypervolume", true, 0, {}};
  Rng rng(seed);
  for (std::size_t k = 0; k < instances; ++k) {
    const std::array<std::int64_t, 2> h{-static_cast<std::int64_t>(rng.below(4)),
                                        -static_cast<std::int64_t>(rng.below(4))};
    const std::size_t size = rng.below(9);
    std::vector<FitnessVector> pts;
    for (std::size_t i = 0; i < size; ++i)
      pts.push_back({static_cast<std::int64_t>(rng.below(13)), static_cast<std::int64_t>(rng.below(13))});
    const auto expected = oracle_hypervolume_lattice(pts, h);
    const double got = hv(pts, {static_cast<double>(h[0]), static_cast<double>(h[1])});
    ++rep.checks;
    if (got != static_cast<double>(expected)) {
      rep.passed = false;
      rep.counterexample = "points " + detail::describe(pts) + " h=(" + std::to_string(h[0]) + "," +
                           std::to_string(h[1]) + ") expected " + std::to_string(expected) +
                           " got " + format_double(got, 3);
      return rep;
    }
  }
  return rep;
}

/// Exhaustive dominance structure of OneTrapZeroTrap for n = 1..max_n:
/// front points dominate every other point, the two front points are
/// incomparable, and no two non-front points dominate one another.
inline SuiteReport verify_dominance_structure(std::size_t max_n) {
  if (max_n > 20) throw std::invalid_argument("dominance structure: max_n above 20 is impractical");
  SuiteReport rep{"lemma1", true, 0, {}};
  auto fail = [&rep](std::size_t n, const std::string& a, const std::string& b, const std::string& what) {
    rep.passed = false;
    rep.counterexample = "n=" + std::to_string(n) + " x=" + a + " y=" + b + ": " + what;
  };
  for (std::size_t n = 1; n <= max_n; ++n) {
    const auto inst = ProblemInstance::otzt(n);
    const std::size_t count = std::size_t{1} << n;
    std::vector<Bitstring> xs;
    std::vector<FitnessVector> fs;
    std::vector<bool> front;
    xs.reserve(count);
    for (std::size_t v = 0; v < count; ++v) {
      Bitstring x(n);
      x.mutable_words()[0] = v;
      fs.push_back(evaluate_otzt(inst, x));
      front.push_back(is_pareto_optimal(inst, x));
      xs.push_back(std::move(x));
    }
    for (std::size_t a = 0; a < count; ++a) {
      for (std::size_t b = 0; b < count; ++b) {
        if (a == b) continue;
        const auto rel = dominance_compare(fs[a], fs[b]);
        ++rep.checks;
        if (front[a] && !front[b] && rel != Dominance::Dominates) {
          fail(n, xs[a].to_string(), xs[b].to_string(), "front point does not dominate");
          return rep;
        }
        if (front[a] && front[b] && rel != Dominance::Incomparable) {
          fail(n, xs[a].to_string(), xs[b].to_string(), "front points comparable");
          return rep;
        }
        if (!front[a] && !front[b] && rel != Dominance::Incomparable && rel != Dominance::Equal) {
          fail(n, xs[a].to_string(), xs[b].to_string(), "non-front points comparable");
          return rep;
        }
      }
    }
  }
  return rep;
}

/// For random layers of >= 3 interior OneTrapZeroTrap points with distinct
/// fitness, the two extreme points' hypervolume contributions strictly exceed
/// every other contribution, with h = default_hv_reference(n).
inline SuiteReport verify_extreme_contributions(std::span<const std::size_t> ns, std::size_t layers_per_n,
                                 std::uint64_t seed) {
  SuiteReport rep{"lemma5", true, 0, {}};
  Rng rng(seed);
  for (auto n : ns) {
    if (n < 4) continue;
    const auto h = default_hv_reference(n);
    std::vector<std::int64_t> values(n - 1);
    std::iota(values.begin(), values.end(), std::int64_t{1});
    for (std::size_t k = 0; k < layers_per_n; ++k) {
      const std::size_t size = 3 + rng.below(n - 3);  // 3 .. n-1 points
      rng.shuffle(values);
      std::vector<FitnessVector> layer;
      for (std::size_t i = 0; i < size; ++i)
        layer.push_back({values[i], static_cast<std::int64_t>(n) - values[i]});
      const auto contrib = hv_contributions(layer, h);
      std::size_t hi = 0;
      std::size_t lo = 0;
      for (std::size_t i = 1; i < size; ++i) {
        if (layer[i][0] > layer[hi][0]) hi = i;
        if (layer[i][0] < layer[lo][0]) lo = i;
      }
      ++rep.checks;
      for (std::size_t i = 0; i < size; ++i) {
        if (i == hi || i == lo) continue;
        if (!(contrib[hi] > contrib[i] && contrib[lo] > contrib[i])) {
          rep.passed = false;
          rep.counterexample = "n=" + std::to_string(n) + " layer " + detail::describe(layer) +
                               " interior " + std::to_string(i) + " contribution " +
                               format_double(contrib[i], 1) + " vs extremes " +
                               format_double(contrib[hi], 1) + "/" + format_double(contrib[lo], 1);
          return rep;
        }
      }
    }
  }
  return rep;
}

/// Monitor self-check on synthetic traces, then short runs of each
/// algorithm under its monotonicity preconditions.
inline SuiteReport verify_monotone(std::size_t n, std::size_t runs, std::uint64_t seed) {
  SuiteReport rep{"monotone", true, 0, {}};
  auto trace = [](std::vector<std::pair<std::size_t, std::size_t>> seq) {
    std::vector<GenerationTrace> out;
    for (auto [o, z] : seq) {
      GenerationTrace t;
      t.max_ones = o;
      t.max_zeros = z;
      out.push_back(t);
    }
    return out;
  };
  struct Synthetic {
    std::vector<GenerationTrace> t;
    std::size_t expected;
  };
  const std::vector<Synthetic> synthetic{
      {trace({{3, 3}, {3, 3}, {3, 3}}), 0},
      {trace({{5, 1}, {6, 1}, {6, 1}, {7, 1}}), 0},
      {trace({{1, 8}, {1, 7}}), 1},
      {trace({{4, 4}, {3, 5}, {4, 4}, {2, 2}}), 3},
  };
  for (const auto& s : synthetic) {
    ++rep.checks;
    if (monotone_monitor(s.t) != s.expected) {
      rep.passed = false;
      rep.counterexample = "monitor miscounted a synthetic trace: expected " +
                           std::to_string(s.expected) + " got " + std::to_string(monotone_monitor(s.t));
      return rep;
    }
  }

  std::vector<AlgorithmConfig> configs;
  for (auto mutation : {MutationKind::StandardBitwise, MutationKind::Local}) {
    AlgorithmConfig a;
    a.mutation = mutation;
    a.kind = AlgorithmKind::NSGA2;
    a.mu = 4;
    configs.push_back(a);
    a.kind = AlgorithmKind::NSGA3;
    configs.push_back(a);
    a.mu = 10;
    a.refpoints = das_dennis(2, 4);
    configs.push_back(a);
    a.kind = AlgorithmKind::SMSEMOA;
    a.mu = 3;
    configs.push_back(a);
  }
  const auto problem = ProblemInstance::otzt(n);
  for (std::size_t c = 0; c < configs.size(); ++c) {
    for (std::size_t r = 0; r < runs; ++r) {
      Rng rng(derive_run_seed(seed, c, r));
      const auto res = run_algorithm(problem, configs[c], 1'000'000, rng);
      ++rep.checks;
      if (res.monotone_violations != 0) {
        rep.passed = false;
        rep.counterexample = std::string(to_string(configs[c].kind)) + " mu=" +
                             std::to_string(configs[c].mu) + " " + to_string(configs[c].mutation) +
                             " run " + std::to_string(r) + ": " +
                             std::to_string(res.monotone_violations) + " violations";
        return rep;
      }
    }
  }
  return rep;
}

}  // namespace emolab
