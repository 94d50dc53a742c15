#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "emolab/core.hpp"
#include "emolab/hypervolume.hpp"
#include "emolab/nsga3_selection.hpp"
#include "emolab/problems.hpp"
#include "emolab/ranking.hpp"
#include "emolab/rng.hpp"
#include "emolab/trace.hpp"
#include "emolab/variation.hpp"

namespace emolab {

enum class AlgorithmKind { SEMO, GSEMO, NSGA2, NSGA3, SMSEMOA };

inline const char* to_string(AlgorithmKind k) {
  switch (k) {
    case AlgorithmKind::SEMO: return "semo";
    case AlgorithmKind::GSEMO: return "gsemo";
    case AlgorithmKind::NSGA2: return "nsga2";
    case AlgorithmKind::NSGA3: return "nsga3";
    case AlgorithmKind::SMSEMOA: return "smsemoa";
  }
  return "?";
}

inline AlgorithmKind parse_algorithm(std::string_view s) {
  if (s == "semo") return AlgorithmKind::SEMO;
  if (s == "gsemo") return AlgorithmKind::GSEMO;
  if (s == "nsga2") return AlgorithmKind::NSGA2;
  if (s == "nsga3") return AlgorithmKind::NSGA3;
  if (s == "smsemoa") return AlgorithmKind::SMSEMOA;
  throw std::invalid_argument("unknown algorithm '" + std::string(s) + "'");
}

struct AlgorithmConfig {
  AlgorithmKind kind = AlgorithmKind::NSGA2;
  std::size_t mu = 4;  ///< ignored by (G)SEMO, whose population is unbounded
  MutationKind mutation = MutationKind::StandardBitwise;
  bool dedup = true;
  ReferencePointSet refpoints = ReferencePointSet::unit_vectors(2);
  double eps_nadir = kDefaultEpsNadir;
  std::optional<HvReference> hv_ref;  ///< defaults to default_hv_reference(n)
  bool init_excludes_front = true;
};

/// The operator a run actually uses: SEMO is tied to local mutation and
/// GSEMO to standard bitwise mutation.
inline MutationKind effective_mutation(const AlgorithmConfig& cfg) {
  if (cfg.kind == AlgorithmKind::SEMO) return MutationKind::Local;
  if (cfg.kind == AlgorithmKind::GSEMO) return MutationKind::StandardBitwise;
  return cfg.mutation;
}

/// Whether the configuration meets the population-size precondition under
/// which NSGA-III keeps the extreme points (unit vectors present and
/// mu >= 2|R|).
inline bool nsga3_guarantee_holds(const AlgorithmConfig& cfg) {
  return cfg.refpoints.contains_unit_vectors() && cfg.mu >= 2 * cfg.refpoints.size();
}

struct RunResult {
  std::uint64_t run_id = 0;
  std::uint64_t seed = 0;
  bool success = false;
  /// Evaluations consumed; equals the hitting time when `success`.
  std::uint64_t evaluations = 0;
  /// Generations for NSGA-II/III, iterations for SMS-EMOA and (G)SEMO.
  std::uint64_t generations = 0;
  std::size_t monotone_violations = 0;
  std::size_t final_max_ones = 0;
  std::size_t final_max_zeros = 0;
  /// SMS-EMOA offspring rejected as genotype duplicates (never evaluated).
  std::uint64_t rejected_duplicates = 0;
};

// ---------------------------------------------------------------------------
// Shared pieces
// ---------------------------------------------------------------------------

inline Bitstring random_bitstring(std::size_t n, Rng& rng) {
  Bitstring b(n);
  auto& words = b.mutable_words();
  for (auto& w : words) w = rng();
  if (n % 64 != 0) words.back() &= (std::uint64_t{1} << (n % 64)) - 1;
  return b;
}

/// mu uniform random individuals. With `excludes_front`, Pareto-optimal
/// draws are resampled.
inline Population initialize_population(const ProblemInstance& problem, std::size_t mu,
                                        bool excludes_front, Rng& rng) {
  if (mu == 0) throw std::invalid_argument("initialize_population: mu must be positive");
  if (excludes_front && problem.n < 2)
    throw std::invalid_argument("initialize_population: every genotype is optimal for n < 2");
  Population p;
  p.reserve(mu);
  for (std::size_t i = 0; i < mu; ++i) {
    Bitstring x = random_bitstring(problem.n, rng);
    while (excludes_front && is_pareto_optimal(problem, x)) x = random_bitstring(problem.n, rng);
    p.push_back(make_individual(problem, std::move(x)));
  }
  return p;
}

inline bool contains_genotype(const Population& p, const Bitstring& x) {
  for (const auto& ind : p)
    if (ind.genotype == x) return true;
  return false;
}

/// R = P plus the offspring whose genotype is new: duplicates inside Q are
/// collapsed to their first copy and genotypes already in P are dropped.
inline Population dedup_merge(const Population& parents, const Population& offspring) {
  Population r = parents;
  for (const auto& q : offspring) {
    if (contains_genotype(r, q.genotype)) continue;
    r.push_back(q);
  }
  return r;
}

inline Population plain_merge(const Population& parents, const Population& offspring) {
  Population r = parents;
  r.insert(r.end(), offspring.begin(), offspring.end());
  return r;
}

/// (G)SEMO acceptance: y enters unless a member strictly dominates it, and
/// then every member y weakly dominates leaves. Returns whether y entered.
inline bool gsemo_insert(Population& pop, Individual y) {
  for (const auto& x : pop)
    if (dominates(x.fitness, y.fitness)) return false;
  std::erase_if(pop, [&](const Individual& x) { return weakly_dominates(y.fitness, x.fitness); });
  pop.push_back(std::move(y));
  return true;
}

namespace detail {

/// Bookkeeping common to every engine: trace emission, the monotonicity
/// audit and the stopping rule.
class RunTracker {
 public:
  RunTracker(const ProblemInstance& problem, std::uint64_t budget, const Observer& observer)
      : problem_(problem), budget_(budget), observer_(observer) {
    if (budget == 0) throw std::invalid_argument("run: budget must be positive");
  }

  /// Records the population after generation `generation`. Returns true once
  /// the front is covered.
  bool record(const Population& p, std::uint64_t generation, std::uint64_t evaluations) {
    last_ = snapshot(problem_, p, generation, evaluations);
    monitor_.observe(last_);
    if (observer_) observer_(last_);
    return last_.coverage == FrontCoverage::Both;
  }

  bool can_spend(std::uint64_t evaluations, std::uint64_t cost) const {
    return evaluations + cost <= budget_;
  }

  RunResult finish(bool covered, std::uint64_t evaluations, std::uint64_t generations) const {
    RunResult r;
    r.success = covered && evaluations <= budget_;
    r.evaluations = evaluations;
    r.generations = generations;
    r.monotone_violations = monitor_.violations();
    r.final_max_ones = last_.max_ones;
    r.final_max_zeros = last_.max_zeros;
    return r;
  }

 private:
  const ProblemInstance& problem_;
  std::uint64_t budget_;
  const Observer& observer_;
  MonotoneMonitor monitor_;
  GenerationTrace last_{};
};

inline void require_otzt(const ProblemInstance& problem) {
  if (problem.kind != ProblemKind::OneTrapZeroTrap)
    throw std::invalid_argument("run: algorithms optimise OneTrapZeroTrap instances only");
}

/// One (mu + mu) generation shared by NSGA-II and NSGA-III; `fill` picks r
/// members of the critical layer.
template <class FillCritical>
Population elitist_generation(const ProblemInstance& problem, const AlgorithmConfig& cfg,
                              const Population& parents, Rng& rng, FillCritical&& fill) {
  Population offspring;
  offspring.reserve(cfg.mu);
  for (std::size_t i = 0; i < cfg.mu; ++i) {
    const Individual& p = uniform_parent_select(parents, rng);
    offspring.push_back(make_individual(problem, mutate(cfg.mutation, p.genotype, rng)));
  }
  const Population merged =
      cfg.dedup ? dedup_merge(parents, offspring) : plain_merge(parents, offspring);
  const auto fitness = fitness_of(merged);
  const auto layers = non_dominated_sort(fitness);
  const auto crit = select_critical_layer(layers, cfg.mu);

  Population next;
  next.reserve(cfg.mu);
  std::vector<FitnessVector> selected_fitness;
  selected_fitness.reserve(crit.prefix);
  for (std::size_t l = 0; l < crit.index; ++l) {
    for (auto i : layers[l]) {
      next.push_back(merged[i]);
      selected_fitness.push_back(fitness[i]);
    }
  }
  const auto& critical = layers[crit.index];
  std::vector<FitnessVector> critical_fitness;
  critical_fitness.reserve(critical.size());
  for (auto i : critical) critical_fitness.push_back(fitness[i]);

  for (auto local : fill(selected_fitness, critical_fitness, crit.remaining))
    next.push_back(merged[critical[local]]);
  return next;
}

template <class FillCritical>
RunResult run_elitist(const ProblemInstance& problem, const AlgorithmConfig& cfg,
                      std::uint64_t budget, Rng& rng, const Observer& observer,
                      FillCritical&& fill) {
  require_otzt(problem);
  if (cfg.mu == 0) throw std::invalid_argument("run: mu must be positive");
  RunTracker tracker(problem, budget, observer);
  Population pop = initialize_population(problem, cfg.mu, cfg.init_excludes_front, rng);
  std::uint64_t evals = cfg.mu;
  std::uint64_t gen = 0;
  bool covered = tracker.record(pop, gen, evals);
  while (!covered && tracker.can_spend(evals, cfg.mu)) {
    pop = elitist_generation(problem, cfg, pop, rng, fill);
    evals += cfg.mu;
    ++gen;
    covered = tracker.record(pop, gen, evals);
  }
  return tracker.finish(covered, evals, gen);
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Engines
// ---------------------------------------------------------------------------

/// SEMO / GSEMO. Starts from one uniform string; an offspring enters when no
/// member strictly dominates it, evicting every member it weakly dominates.
inline RunResult run_gsemo(const ProblemInstance& problem, const AlgorithmConfig& cfg,
                           std::uint64_t budget, Rng& rng, const Observer& observer = {}) {
  if (cfg.kind != AlgorithmKind::SEMO && cfg.kind != AlgorithmKind::GSEMO)
    throw std::invalid_argument("run_gsemo: kind must be SEMO or GSEMO");
  detail::require_otzt(problem);
  const MutationKind mutation = effective_mutation(cfg);
  detail::RunTracker tracker(problem, budget, observer);
  Population pop = initialize_population(problem, 1, cfg.init_excludes_front, rng);
  std::uint64_t evals = 1;
  std::uint64_t iter = 0;
  bool covered = tracker.record(pop, iter, evals);
  while (!covered && tracker.can_spend(evals, 1)) {
    const Individual& parent = uniform_parent_select(pop, rng);
    Individual child = make_individual(problem, mutate(mutation, parent.genotype, rng));
    ++evals;
    ++iter;
    gsemo_insert(pop, std::move(child));
    covered = tracker.record(pop, iter, evals);
  }
  return tracker.finish(covered, evals, iter);
}

/// NSGA-II: the critical layer is cut by crowding distance.
inline RunResult run_nsga2(const ProblemInstance& problem, const AlgorithmConfig& cfg,
                           std::uint64_t budget, Rng& rng, const Observer& observer = {}) {
  if (cfg.kind != AlgorithmKind::NSGA2) throw std::invalid_argument("run_nsga2: kind must be NSGA2");
  return detail::run_elitist(
      problem, cfg, budget, rng, observer,
      [&rng](const std::vector<FitnessVector>&, const std::vector<FitnessVector>& critical,
             std::size_t r) { return nsga2_truncate(critical, r, rng); });
}

/// NSGA-III: the critical layer is filled by reference-point niching.
inline RunResult run_nsga3(const ProblemInstance& problem, const AlgorithmConfig& cfg,
                           std::uint64_t budget, Rng& rng, const Observer& observer = {}) {
  if (cfg.kind != AlgorithmKind::NSGA3) throw std::invalid_argument("run_nsga3: kind must be NSGA3");
  if (cfg.refpoints.size() == 0) throw std::invalid_argument("run_nsga3: empty reference set");
  if (cfg.refpoints.dims() != 2)
    throw std::invalid_argument("run_nsga3: reference points must be 2-dimensional");
  return detail::run_elitist(
      problem, cfg, budget, rng, observer,
      [&rng, &cfg](const std::vector<FitnessVector>& selected,
                   const std::vector<FitnessVector>& critical, std::size_t r) {
        return niching(selected, critical, cfg.refpoints, selected.size() + r, rng,
                       cfg.eps_nadir);
      });
}

/// SMS-EMOA, steady state. With dedup an offspring whose genotype is already
/// present is discarded before evaluation: the iteration counts, no
/// evaluation is spent.
inline RunResult run_smsemoa(const ProblemInstance& problem, const AlgorithmConfig& cfg,
                             std::uint64_t budget, Rng& rng, const Observer& observer = {}) {
  if (cfg.kind != AlgorithmKind::SMSEMOA)
    throw std::invalid_argument("run_smsemoa: kind must be SMSEMOA");
  detail::require_otzt(problem);
  if (cfg.mu == 0) throw std::invalid_argument("run: mu must be positive");
  const HvReference h = cfg.hv_ref.value_or(default_hv_reference(problem.n));
  detail::RunTracker tracker(problem, budget, observer);
  Population pop = initialize_population(problem, cfg.mu, cfg.init_excludes_front, rng);
  std::uint64_t evals = cfg.mu;
  std::uint64_t iter = 0;
  std::uint64_t rejected = 0;
  bool covered = tracker.record(pop, iter, evals);
  while (!covered && tracker.can_spend(evals, 1)) {
    const Individual& parent = uniform_parent_select(pop, rng);
    Bitstring x = mutate(cfg.mutation, parent.genotype, rng);
    ++iter;
    if (cfg.dedup && contains_genotype(pop, x)) {
      ++rejected;
      covered = tracker.record(pop, iter, evals);
      continue;
    }
    pop.push_back(make_individual(problem, std::move(x)));
    ++evals;
    const auto fitness = fitness_of(pop);
    const auto layers = non_dominated_sort(fitness);
    const auto& last = layers.back();
    std::vector<FitnessVector> last_fitness;
    last_fitness.reserve(last.size());
    for (auto i : last) last_fitness.push_back(fitness[i]);
    const std::size_t victim = last[smsemoa_eject(last_fitness, h, rng)];
    pop.erase(pop.begin() + static_cast<std::ptrdiff_t>(victim));
    covered = tracker.record(pop, iter, evals);
  }
  auto result = tracker.finish(covered, evals, iter);
  result.rejected_duplicates = rejected;
  return result;
}

/// Dispatches on cfg.kind.
inline RunResult run_algorithm(const ProblemInstance& problem, const AlgorithmConfig& cfg,
                               std::uint64_t budget, Rng& rng, const Observer& observer = {}) {
  switch (cfg.kind) {
    case AlgorithmKind::SEMO:
    case AlgorithmKind::GSEMO: return run_gsemo(problem, cfg, budget, rng, observer);
    case AlgorithmKind::NSGA2: return run_nsga2(problem, cfg, budget, rng, observer);
    case AlgorithmKind::NSGA3: return run_nsga3(problem, cfg, budget, rng, observer);
    case AlgorithmKind::SMSEMOA: return run_smsemoa(problem, cfg, budget, rng, observer);
  }
  throw std::invalid_argument("run_algorithm: unknown kind");
}

}  // namespace emolab
