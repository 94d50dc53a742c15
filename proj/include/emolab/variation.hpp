#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

#include "emolab/core.hpp"
#include "emolab/rng.hpp"

namespace emolab {

enum class MutationKind {
  StandardBitwise,  ///< each bit flips independently with probability 1/n
  Local,            ///< exactly one uniformly chosen bit flips
};

inline const char* to_string(MutationKind m) {
  return m == MutationKind::Local ? "local" : "bitwise";
}

inline MutationKind parse_mutation(std::string_view s) {
  if (s == "bitwise") return MutationKind::StandardBitwise;
  if (s == "local") return MutationKind::Local;
  throw std::invalid_argument("unknown mutation '" + std::string(s) + "'");
}

/// Index of a uniformly chosen member (with replacement across calls).
inline std::size_t uniform_parent_select(std::size_t population_size, Rng& rng) {
  if (population_size == 0) throw std::invalid_argument("parent selection: empty population");
  return static_cast<std::size_t>(rng.below(population_size));
}

template <class T>
const T& uniform_parent_select(const std::vector<T>& population, Rng& rng) {
  return population[uniform_parent_select(population.size(), rng)];
}

/// Returns a mutated copy of x.
///
/// StandardBitwise draws one Bernoulli(1/n) trial per position, in position
/// order; this fixes how much of the stream a mutation consumes (n draws).
inline Bitstring mutate(MutationKind kind, const Bitstring& x, Rng& rng) {
  const std::size_t n = x.size();
  if (n == 0) throw std::invalid_argument("mutate: empty bitstring");
  if (kind == MutationKind::Local) return x.with_flipped(static_cast<std::size_t>(rng.below(n)));

  Bitstring y = x;
  auto& words = y.mutable_words();
  for (std::size_t i = 0; i < n; ++i) {
    if (rng.one_in(n)) words[i / 64] ^= std::uint64_t{1} << (i % 64);
  }
  return y;
}

}  // namespace emolab
