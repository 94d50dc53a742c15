#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <ostream>
#include <span>

#include "emolab/problems.hpp"

namespace emolab {

/// Per-generation snapshot. `max_ones` and `max_zeros` are taken over
/// x XOR mask, so they are the unitation extremes the fitness sees.
struct GenerationTrace {
  std::uint64_t generation = 0;
  std::uint64_t evaluations = 0;
  std::size_t max_ones = 0;
  std::size_t max_zeros = 0;
  std::size_t population_size = 0;
  FrontCoverage coverage = FrontCoverage::None;
};

using Observer = std::function<void(const GenerationTrace&)>;

inline GenerationTrace snapshot(const ProblemInstance& inst, const Population& p,
                                std::uint64_t generation, std::uint64_t evaluations) {
  GenerationTrace t;
  t.generation = generation;
  t.evaluations = evaluations;
  t.population_size = p.size();
  std::size_t lo = inst.n;
  std::size_t hi = 0;
  for (const auto& ind : p) {
    const std::size_t u = inst.unitation(ind.genotype);
    lo = std::min(lo, u);
    hi = std::max(hi, u);
  }
  t.max_ones = p.empty() ? 0 : hi;
  t.max_zeros = p.empty() ? 0 : inst.n - lo;
  t.coverage = front_coverage(inst, p);
  return t;
}

/// One trace record: t,evals,max_ones,max_zeros,pop_size,coverage
inline std::ostream& write_trace_record(std::ostream& os, const GenerationTrace& t) {
  return os << t.generation << ',' << t.evaluations << ',' << t.max_ones << ','
            << t.max_zeros << ',' << t.population_size << ',' << to_string(t.coverage) << '\n';
}

inline constexpr const char* kTraceHeader = "t,evals,max_ones,max_zeros,pop_size,coverage";

/// Counts generations in which the maximal ones-count or the maximal
/// zeros-count of the population dropped.
class MonotoneMonitor {
 public:
  void observe(const GenerationTrace& t) {
    if (has_previous_ &&
        (t.max_ones < previous_.max_ones || t.max_zeros < previous_.max_zeros))
      ++violations_;
    previous_ = t;
    has_previous_ = true;
  }

  std::size_t violations() const noexcept { return violations_; }

 private:
  GenerationTrace previous_{};
  bool has_previous_ = false;
  std::size_t violations_ = 0;
};

inline std::size_t monotone_monitor(std::span<const GenerationTrace> traces) {
  MonotoneMonitor m;
  for (const auto& t : traces) m.observe(t);
  return m.violations();
}

}  // namespace emolab
