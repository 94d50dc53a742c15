#include <gtest/gtest.h>

#include "emolab/algorithms.hpp"
#include "emolab/problems.hpp"

using namespace emolab;

namespace {

Bitstring bits(const char* s) { return Bitstring::from_string(s); }

Bitstring with_ones(std::size_t n, std::size_t k) {
  std::string s(n, '0');
  for (std::size_t i = 0; i < k; ++i) s[i] = '1';
  return Bitstring::from_string(s);
}

}  // namespace

TEST(Otzt, FrontValuesAtTwenty) {
  const auto inst = ProblemInstance::otzt(20);
  EXPECT_EQ(evaluate_otzt(inst, Bitstring::zeros(20)), (FitnessVector{21, 20}));
  EXPECT_EQ(evaluate_otzt(inst, Bitstring::ones(20)), (FitnessVector{20, 21}));
  EXPECT_EQ(inst.front_low(), (FitnessVector{21, 20}));
  EXPECT_EQ(inst.front_high(), (FitnessVector{20, 21}));
}

TEST(Otzt, InteriorPoint) {
  EXPECT_EQ(evaluate_otzt(ProblemInstance::otzt(5), bits("10100")), (FitnessVector{2, 3}));
}

TEST(Otzt, MaskedPoint) {
  const auto inst = ProblemInstance::otzt(5, bits("11111"));
  EXPECT_EQ(evaluate_otzt(inst, bits("11111")), (FitnessVector{6, 5}));
  EXPECT_EQ(evaluate_otzt(inst, bits("00000")), (FitnessVector{5, 6}));
}

TEST(Otzt, LengthMismatchRejected) {
  EXPECT_THROW(evaluate_otzt(ProblemInstance::otzt(5), bits("101")), std::invalid_argument);
  EXPECT_THROW(ProblemInstance::otzt(5, bits("101")), std::invalid_argument);
  EXPECT_THROW(ProblemInstance::otzt(0), std::invalid_argument);
}

TEST(Otzt, SmallestInstance) {
  const auto inst = ProblemInstance::otzt(1);
  EXPECT_EQ(evaluate_otzt(inst, bits("0")), (FitnessVector{2, 1}));
  EXPECT_EQ(evaluate_otzt(inst, bits("1")), (FitnessVector{1, 2}));
}

TEST(Otzt, InteriorDependsOnlyOnUnitation) {
  for (std::size_t n : {3u, 7u, 70u}) {
    const auto inst = ProblemInstance::otzt(n);
    Rng rng(n);
    for (int k = 0; k < 500; ++k) {
      const auto x = random_bitstring(n, rng);
      const auto ones = static_cast<std::int64_t>(x.ones_count());
      if (ones == 0 || ones == static_cast<std::int64_t>(n)) continue;
      const auto f = evaluate_otzt(inst, x);
      EXPECT_EQ(f, (FitnessVector{ones, static_cast<std::int64_t>(n) - ones}));
      EXPECT_EQ(f[0] + f[1], static_cast<std::int64_t>(n));
    }
  }
}

TEST(Otzt, MaskInvarianceExhaustive) {
  for (std::size_t n = 1; n <= 10; ++n) {
    const auto plain = ProblemInstance::otzt(n);
    Rng rng(100 + n);
    const auto mask = random_bitstring(n, rng);
    const auto masked = ProblemInstance::otzt(n, mask);
    for (std::uint64_t v = 0; v < (1ULL << n); ++v) {
      Bitstring x(n);
      x.mutable_words()[0] = v;
      EXPECT_EQ(evaluate_otzt(masked, x), evaluate_otzt(plain, x ^ mask));
      EXPECT_EQ(is_pareto_optimal(masked, x), is_pareto_optimal(plain, x ^ mask));
    }
  }
}

TEST(Otzt, MaskInvarianceRandomized) {
  Rng rng(77);
  for (std::size_t n : {64u, 100u, 200u}) {
    const auto mask = random_bitstring(n, rng);
    const auto plain = ProblemInstance::otzt(n);
    const auto masked = ProblemInstance::otzt(n, mask);
    for (int k = 0; k < 300; ++k) {
      const auto x = random_bitstring(n, rng);
      EXPECT_EQ(evaluate_otzt(masked, x), evaluate_otzt(plain, x ^ mask));
    }
    EXPECT_EQ(evaluate_otzt(masked, mask), plain.front_low());
    EXPECT_EQ(evaluate_otzt(masked, mask.complement()), plain.front_high());
  }
}

TEST(Trap, Values) {
  EXPECT_EQ(evaluate_trap(5, bits("00000")), 6);
  EXPECT_EQ(evaluate_trap(5, bits("11111")), 5);
  EXPECT_EQ(evaluate_trap(5, bits("10100")), 2);
  EXPECT_THROW(evaluate_trap(4, bits("10100")), std::invalid_argument);
}

TEST(ParetoOptimal, Cases) {
  const std::size_t n = 8;
  const auto inst = ProblemInstance::otzt(n);
  EXPECT_TRUE(is_pareto_optimal(inst, Bitstring::zeros(n)));
  EXPECT_TRUE(is_pareto_optimal(inst, Bitstring::ones(n)));
  EXPECT_FALSE(is_pareto_optimal(inst, bits("10000000")));
  const auto masked = ProblemInstance::otzt(n, bits("10000000"));
  EXPECT_TRUE(is_pareto_optimal(masked, bits("01111111")));
  EXPECT_TRUE(is_pareto_optimal(masked, bits("10000000")));
  EXPECT_FALSE(is_pareto_optimal(masked, Bitstring::zeros(n)));
}

TEST(ParetoOptimal, SetIsMaskAndComplement) {
  const std::size_t n = 6;
  const auto mask = bits("110100");
  const auto inst = ProblemInstance::otzt(n, mask);
  std::vector<std::string> optimal;
  for (std::uint64_t v = 0; v < 64; ++v) {
    Bitstring x(n);
    x.mutable_words()[0] = v;
    if (is_pareto_optimal(inst, x)) optimal.push_back(x.to_string());
  }
  std::sort(optimal.begin(), optimal.end());
  EXPECT_EQ(optimal, (std::vector<std::string>{"001011", "110100"}));
}

TEST(FrontCovered, Cases) {
  const std::size_t n = 6;
  const auto inst = ProblemInstance::otzt(n);
  const auto lo = make_individual(inst, Bitstring::zeros(n));
  const auto hi = make_individual(inst, Bitstring::ones(n));
  const auto mid = make_individual(inst, with_ones(n, 3));
  EXPECT_TRUE(front_covered(inst, {mid, lo, hi}));
  EXPECT_FALSE(front_covered(inst, {lo}));
  EXPECT_EQ(front_coverage(inst, {lo}), FrontCoverage::One);
  EXPECT_FALSE(front_covered(inst, {mid, make_individual(inst, with_ones(n, 1))}));
  EXPECT_EQ(front_coverage(inst, {mid}), FrontCoverage::None);
  EXPECT_EQ(front_coverage(inst, {}), FrontCoverage::None);
  EXPECT_STREQ(to_string(FrontCoverage::Both), "both");
}

TEST(MakeIndividual, CachesFitness) {
  const auto inst = ProblemInstance::otzt(5);
  const auto ind = make_individual(inst, bits("10100"));
  EXPECT_EQ(ind.fitness, evaluate_otzt(inst, ind.genotype));
  ProblemInstance trap{ProblemKind::Trap, 5, Bitstring::zeros(5)};
  EXPECT_THROW(make_individual(trap, bits("10100")), std::invalid_argument);
}

TEST(Descriptor, RoundTrip) {
  const auto plain = ProblemInstance::otzt(32);
  EXPECT_EQ(to_descriptor(plain), "otzt:n=32");
  const auto parsed = parse_problem_descriptor("otzt:n=32");
  EXPECT_EQ(parsed.n, 32u);
  EXPECT_TRUE(parsed.mask.all_zeros());

  const auto masked = ProblemInstance::otzt(10, bits("1000000001"));
  EXPECT_EQ(to_descriptor(masked), "otzt:n=10:mask=201");
  const auto back = parse_problem_descriptor(to_descriptor(masked));
  EXPECT_EQ(back.mask, masked.mask);

  Rng rng(4);
  for (std::size_t n : {1u, 5u, 64u, 65u, 130u}) {
    const auto m = random_bitstring(n, rng);
    EXPECT_EQ(mask_from_hex(mask_to_hex(m), n), m);
  }
}

TEST(Descriptor, Errors) {
  EXPECT_THROW(parse_problem_descriptor("ojzj:n=5"), std::invalid_argument);
  EXPECT_THROW(parse_problem_descriptor("otzt:n=0"), std::invalid_argument);
  EXPECT_THROW(parse_problem_descriptor("otzt:n=abc"), std::invalid_argument);
  EXPECT_THROW(parse_problem_descriptor("otzt"), std::invalid_argument);
  EXPECT_THROW(parse_problem_descriptor("otzt:n=4:mask=1f"), std::invalid_argument);
  EXPECT_THROW(parse_problem_descriptor("otzt:n=4:mask=g"), std::invalid_argument);
  EXPECT_THROW(parse_problem_descriptor("otzt:n=4:size=3"), std::invalid_argument);
}
