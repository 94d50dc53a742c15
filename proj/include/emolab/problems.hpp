#pragma once

#include <charconv>
#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

#include "emolab/core.hpp"

namespace emolab {

enum class ProblemKind { OneTrapZeroTrap, Trap };

/// A benchmark instance. For OneTrapZeroTrap the mask selects a member of the
/// function class obtained by swapping the roles of 0 and 1 at the masked
/// positions: the function is evaluated at x XOR mask.
struct ProblemInstance {
  ProblemKind kind = ProblemKind::OneTrapZeroTrap;
  std::size_t n = 0;
  Bitstring mask;

  static ProblemInstance otzt(std::size_t n) { return otzt(n, Bitstring::zeros(n)); }

  static ProblemInstance otzt(std::size_t n, Bitstring mask) {
    if (n == 0) throw std::invalid_argument("problem: n must be positive");
    if (mask.size() != n) throw std::invalid_argument("problem: mask length must equal n");
    return ProblemInstance{ProblemKind::OneTrapZeroTrap, n, std::move(mask)};
  }

  /// |x XOR mask|_1, the quantity the fitness is a function of.
  std::size_t unitation(const Bitstring& x) const { return x.hamming(mask); }

  FitnessVector front_low() const {
    const auto n64 = static_cast<std::int64_t>(n);
    return {n64 + 1, n64};
  }
  FitnessVector front_high() const {
    const auto n64 = static_cast<std::int64_t>(n);
    return {n64, n64 + 1};
  }
};

/// Bi-objective OneTrapZeroTrap at y = x XOR mask:
///   f1 = |y|_1 + (n+1)[y = 0^n],  f2 = |y|_0 + (n+1)[y = 1^n].
inline FitnessVector evaluate_otzt(const ProblemInstance& inst, const Bitstring& x) {
  if (x.size() != inst.n) throw std::invalid_argument("evaluate_otzt: length mismatch");
  const auto n = static_cast<std::int64_t>(inst.n);
  const auto ones = static_cast<std::int64_t>(x.hamming(inst.mask));
  const auto zeros = n - ones;
  return {ones + (ones == 0 ? n + 1 : 0), zeros + (zeros == 0 ? n + 1 : 0)};
}

/// Scalar TRAP: |x|_1 + (n+1)[x = 0^n].
inline std::int64_t evaluate_trap(std::size_t n, const Bitstring& x) {
  if (x.size() != n) throw std::invalid_argument("evaluate_trap: length mismatch");
  const auto ones = static_cast<std::int64_t>(x.ones_count());
  return ones + (ones == 0 ? static_cast<std::int64_t>(n) + 1 : 0);
}

inline bool is_pareto_optimal(const ProblemInstance& inst, const Bitstring& x) {
  if (x.size() != inst.n) throw std::invalid_argument("is_pareto_optimal: length mismatch");
  const std::size_t u = x.hamming(inst.mask);
  return u == 0 || u == inst.n;
}

inline Individual make_individual(const ProblemInstance& inst, Bitstring x) {
  if (inst.kind != ProblemKind::OneTrapZeroTrap)
    throw std::invalid_argument("make_individual: only OneTrapZeroTrap is multi-objective");
  auto f = evaluate_otzt(inst, x);
  return Individual{std::move(x), f};
}

enum class FrontCoverage { None, One, Both };

inline const char* to_string(FrontCoverage c) {
  switch (c) {
    case FrontCoverage::None: return "none";
    case FrontCoverage::One: return "one";
    case FrontCoverage::Both: return "both";
  }
  return "?";
}

inline FrontCoverage front_coverage(const ProblemInstance& inst, const Population& p) {
  const auto lo = inst.front_low();
  const auto hi = inst.front_high();
  bool has_lo = false;
  bool has_hi = false;
  for (const auto& ind : p) {
    has_lo = has_lo || ind.fitness == lo;
    has_hi = has_hi || ind.fitness == hi;
  }
  if (has_lo && has_hi) return FrontCoverage::Both;
  return (has_lo || has_hi) ? FrontCoverage::One : FrontCoverage::None;
}

inline bool front_covered(const ProblemInstance& inst, const Population& p) {
  return front_coverage(inst, p) == FrontCoverage::Both;
}

// ---------------------------------------------------------------------------
// Descriptor strings: otzt:n=<N>[:mask=<hex>]
//
// The mask is a hexadecimal integer, most significant digit first; bit i of
// the integer is string position i.
// ---------------------------------------------------------------------------

inline std::string mask_to_hex(const Bitstring& mask) {
  static constexpr char kDigits[] = "0123456789abcdef";
  const std::size_t digits = std::max<std::size_t>(1, (mask.size() + 3) / 4);
  std::string s(digits, '0');
  for (std::size_t d = 0; d < digits; ++d) {
    unsigned v = 0;
    for (std::size_t b = 0; b < 4; ++b) {
      const std::size_t i = d * 4 + b;
      if (i < mask.size() && mask[i]) v |= 1U << b;
    }
    s[digits - 1 - d] = kDigits[v];
  }
  return s;
}

inline Bitstring mask_from_hex(std::string_view hex, std::size_t n) {
  if (hex.empty()) throw std::invalid_argument("mask: empty hex string");
  std::string bits(n, '0');
  for (std::size_t d = 0; d < hex.size(); ++d) {
    const char c = hex[hex.size() - 1 - d];
    unsigned v = 0;
    if (c >= '0' && c <= '9') v = static_cast<unsigned>(c - '0');
    else if (c >= 'a' && c <= 'f') v = static_cast<unsigned>(c - 'a' + 10);
    else if (c >= 'A' && c <= 'F') v = static_cast<unsigned>(c - 'A' + 10);
    else throw std::invalid_argument("mask: invalid hex digit '" + std::string(1, c) + "'");
    for (std::size_t b = 0; b < 4; ++b) {
      if (!((v >> b) & 1U)) continue;
      const std::size_t i = d * 4 + b;
      if (i >= n) throw std::invalid_argument("mask: value has bits beyond n");
      bits[i] = '1';
    }
  }
  return Bitstring::from_string(bits);
}

inline std::string to_descriptor(const ProblemInstance& inst) {
  std::string s = inst.kind == ProblemKind::Trap ? "trap" : "otzt";
  s += ":n=" + std::to_string(inst.n);
  if (!inst.mask.all_zeros()) s += ":mask=" + mask_to_hex(inst.mask);
  return s;
}

inline ProblemInstance parse_problem_descriptor(std::string_view text) {
  auto next_field = [&text]() {
    const auto pos = text.find(':');
    std::string_view field = text.substr(0, pos);
    text = pos == std::string_view::npos ? std::string_view{} : text.substr(pos + 1);
    return field;
  };
  const std::string_view kind = next_field();
  if (kind != "otzt" && kind != "trap")
    throw std::invalid_argument("problem: unknown kind '" + std::string(kind) + "'");

  std::size_t n = 0;
  std::string_view mask_hex;
  while (!text.empty()) {
    const std::string_view field = next_field();
    const auto eq = field.find('=');
    if (eq == std::string_view::npos)
      throw std::invalid_argument("problem: malformed field '" + std::string(field) + "'");
    const auto key = field.substr(0, eq);
    const auto value = field.substr(eq + 1);
    if (key == "n") {
      auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), n);
      if (ec != std::errc{} || ptr != value.data() + value.size() || n == 0)
        throw std::invalid_argument("problem: invalid n '" + std::string(value) + "'");
    } else if (key == "mask") {
      mask_hex = value;
    } else {
      throw std::invalid_argument("problem: unknown key '" + std::string(key) + "'");
    }
  }
  if (n == 0) throw std::invalid_argument("problem: missing n");
  Bitstring mask = mask_hex.empty() ? Bitstring::zeros(n) : mask_from_hex(mask_hex, n);
  auto inst = ProblemInstance::otzt(n, std::move(mask));
  if (kind == "trap") inst.kind = ProblemKind::Trap;
  return inst;
}

}  // namespace emolab
