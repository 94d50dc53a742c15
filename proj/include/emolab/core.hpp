#pragma once

#include <algorithm>
#include <array>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace emolab {

// ---------------------------------------------------------------------------
// Bitstring
// ---------------------------------------------------------------------------

/// Fixed-length bit string, packed into 64-bit words. Position 0 is the
/// first character of the textual form.
///
/// Bits beyond `size()` in the last word are always zero, so word-wise
/// comparison and popcount are valid without masking.
class Bitstring {
 public:
  Bitstring() = default;

  /// All-zeros string of length n.
  explicit Bitstring(std::size_t n) : n_(n), words_((n + 63) / 64, 0) {}

  static Bitstring zeros(std::size_t n) { return Bitstring(n); }

  static Bitstring ones(std::size_t n) {
    Bitstring b(n);
    for (auto& w : b.words_) w = ~std::uint64_t{0};
    b.clear_tail();
    return b;
  }

  /// Parses a string of '0'/'1' characters.
  static Bitstring from_string(std::string_view s) {
    Bitstring b(s.size());
    for (std::size_t i = 0; i < s.size(); ++i) {
      if (s[i] == '1') {
        b.words_[i / 64] |= std::uint64_t{1} << (i % 64);
      } else if (s[i] != '0') {
        throw std::invalid_argument("bitstring: unexpected character '" +
                                    std::string(1, s[i]) + "'");
      }
    }
    return b;
  }

  std::size_t size() const noexcept { return n_; }

  bool operator[](std::size_t i) const noexcept {
    return (words_[i / 64] >> (i % 64)) & 1U;
  }

  std::size_t ones_count() const noexcept {
    std::size_t c = 0;
    for (auto w : words_) c += static_cast<std::size_t>(std::popcount(w));
    return c;
  }

  std::size_t zeros_count() const noexcept { return n_ - ones_count(); }

  bool all_zeros() const noexcept {
    return std::all_of(words_.begin(), words_.end(), [](auto w) { return w == 0; });
  }

  bool all_ones() const noexcept { return ones_count() == n_; }

  /// Copy with position i flipped.
  Bitstring with_flipped(std::size_t i) const {
    Bitstring b = *this;
    b.words_[i / 64] ^= std::uint64_t{1} << (i % 64);
    return b;
  }

  Bitstring operator^(const Bitstring& other) const {
    if (other.n_ != n_) throw std::invalid_argument("bitstring xor: length mismatch");
    Bitstring b = *this;
    for (std::size_t k = 0; k < words_.size(); ++k) b.words_[k] ^= other.words_[k];
    return b;
  }

  Bitstring complement() const {
    Bitstring b = *this;
    for (auto& w : b.words_) w = ~w;
    b.clear_tail();
    return b;
  }

  /// Number of positions where the two strings differ.
  std::size_t hamming(const Bitstring& other) const {
    if (other.n_ != n_) throw std::invalid_argument("hamming: length mismatch");
    std::size_t c = 0;
    for (std::size_t k = 0; k < words_.size(); ++k)
      c += static_cast<std::size_t>(std::popcount(words_[k] ^ other.words_[k]));
    return c;
  }

  std::string to_string() const {
    std::string s(n_, '0');
    for (std::size_t i = 0; i < n_; ++i)
      if ((*this)[i]) s[i] = '1';
    return s;
  }

  const std::vector<std::uint64_t>& words() const noexcept { return words_; }

  /// Word-level mutable access for operators that build a fresh string.
  /// Callers must keep the tail bits zero.
  std::vector<std::uint64_t>& mutable_words() noexcept { return words_; }

  friend bool operator==(const Bitstring&, const Bitstring&) = default;

 private:
  void clear_tail() {
    if (n_ % 64 != 0 && !words_.empty())
      words_.back() &= (std::uint64_t{1} << (n_ % 64)) - 1;
  }

  std::size_t n_ = 0;
  std::vector<std::uint64_t> words_;
};

inline std::ostream& operator<<(std::ostream& os, const Bitstring& b) {
  return os << b.to_string();
}

// ---------------------------------------------------------------------------
// FitnessVector and dominance
// ---------------------------------------------------------------------------

inline constexpr std::size_t kMaxObjectives = 4;

/// Integer objective vector (maximization), stored inline.
class FitnessVector {
 public:
  FitnessVector() = default;

  FitnessVector(std::initializer_list<std::int64_t> values) {
    if (values.size() == 0 || values.size() > kMaxObjectives)
      throw std::invalid_argument("fitness vector: unsupported number of objectives");
    d_ = values.size();
    std::copy(values.begin(), values.end(), v_.begin());
  }

  std::size_t dims() const noexcept { return d_; }
  std::int64_t operator[](std::size_t k) const noexcept { return v_[k]; }

  friend bool operator==(const FitnessVector& a, const FitnessVector& b) noexcept {
    if (a.d_ != b.d_) return false;
    return std::equal(a.v_.begin(), a.v_.begin() + static_cast<std::ptrdiff_t>(a.d_),
                      b.v_.begin());
  }

 private:
  std::array<std::int64_t, kMaxObjectives> v_{};
  std::size_t d_ = 0;
};

inline std::ostream& operator<<(std::ostream& os, const FitnessVector& f) {
  os << '(';
  for (std::size_t k = 0; k < f.dims(); ++k) os << (k ? "," : "") << f[k];
  return os << ')';
}

enum class Dominance { Dominates, DominatedBy, Incomparable, Equal };

inline std::ostream& operator<<(std::ostream& os, Dominance d) {
  switch (d) {
    case Dominance::Dominates: return os << "Dominates";
    case Dominance::DominatedBy: return os << "DominatedBy";
    case Dominance::Incomparable: return os << "Incomparable";
    case Dominance::Equal: return os << "Equal";
  }
  return os;
}

/// Pareto comparison of u against v under maximization.
inline Dominance dominance_compare(const FitnessVector& u, const FitnessVector& v) {
  if (u.dims() != v.dims())
    throw std::invalid_argument("dominance_compare: dimension mismatch");
  bool u_better = false;
  bool v_better = false;
  for (std::size_t k = 0; k < u.dims(); ++k) {
    if (u[k] > v[k]) u_better = true;
    if (v[k] > u[k]) v_better = true;
  }
  if (u_better && v_better) return Dominance::Incomparable;
  if (u_better) return Dominance::Dominates;
  if (v_better) return Dominance::DominatedBy;
  return Dominance::Equal;
}

inline bool dominates(const FitnessVector& u, const FitnessVector& v) {
  return dominance_compare(u, v) == Dominance::Dominates;
}

inline bool weakly_dominates(const FitnessVector& u, const FitnessVector& v) {
  const auto r = dominance_compare(u, v);
  return r == Dominance::Dominates || r == Dominance::Equal;
}

// ---------------------------------------------------------------------------
// Individual and Population
// ---------------------------------------------------------------------------

/// A genotype together with the fitness it was evaluated to. Built only by
/// a problem's `make_individual`, which is the single point where fitness
/// evaluations happen.
struct Individual {
  Bitstring genotype;
  FitnessVector fitness;
};

/// Ordered multiset of individuals. Insertion order is kept so that every
/// tie-break goes through the run's RNG rather than container order.
using Population = std::vector<Individual>;

inline std::vector<FitnessVector> fitness_of(const Population& p) {
  std::vector<FitnessVector> out;
  out.reserve(p.size());
  for (const auto& ind : p) out.push_back(ind.fitness);
  return out;
}

}  // namespace emolab
