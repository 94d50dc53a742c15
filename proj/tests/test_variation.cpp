#include <gtest/gtest.h>

#include <array>
#include <cmath>

#include "emolab/variation.hpp"

using namespace emolab;

TEST(ParentSelect, SingletonAlwaysChosen) {
  Rng rng(1);
  for (int i = 0; i < 100; ++i) EXPECT_EQ(uniform_parent_select(1, rng), 0u);
}

TEST(ParentSelect, EmptyRejected) {
  Rng rng(1);
  EXPECT_THROW(uniform_parent_select(0, rng), std::invalid_argument);
}

TEST(ParentSelect, UniformOverFour) {
  Rng rng(2);
  std::array<int, 4> counts{};
  const int draws = 100000;
  for (int i = 0; i < draws; ++i) ++counts[uniform_parent_select(4, rng)];
  for (int c : counts) EXPECT_NEAR(c / double(draws), 0.25, 0.02);
}

TEST(ParentSelect, DuplicatesAreDistinctMembers) {
  Rng rng(3);
  const std::vector<Bitstring> pop{Bitstring::from_string("0101"), Bitstring::from_string("0101")};
  int first = 0;
  const int draws = 100000;
  for (int i = 0; i < draws; ++i) first += &uniform_parent_select(pop, rng) == &pop[0];
  EXPECT_NEAR(first / double(draws), 0.5, 0.01);
}

TEST(Mutation, LocalFlipsExactlyOne) {
  Rng rng(4);
  for (std::size_t n : {1u, 2u, 17u, 64u, 100u}) {
    const auto x = Bitstring::zeros(n);
    for (int i = 0; i < 200; ++i) EXPECT_EQ(mutate(MutationKind::Local, x, rng).hamming(x), 1u);
  }
}

TEST(Mutation, LocalPositionUniform) {
  Rng rng(5);
  const auto x = Bitstring::zeros(5);
  std::array<int, 5> counts{};
  for (int i = 0; i < 50000; ++i) {
    const auto y = mutate(MutationKind::Local, x, rng);
    for (std::size_t k = 0; k < 5; ++k) counts[k] += y[k];
  }
  for (int c : counts) EXPECT_NEAR(c / 50000.0, 0.2, 0.01);
}

TEST(Mutation, BitwiseMeanFlips) {
  Rng rng(6);
  const auto x = Bitstring::zeros(20);
  std::size_t flips = 0;
  const int trials = 100000;
  for (int i = 0; i < trials; ++i) flips += mutate(MutationKind::StandardBitwise, x, rng).ones_count();
  EXPECT_NEAR(flips / double(trials), 1.0, 0.05);
}

TEST(Mutation, BitwiseAllFlipProbability) {
  Rng rng(7);
  const auto x = Bitstring::from_string("0110");
  const int trials = 1000000;
  int all = 0;
  for (int i = 0; i < trials; ++i) all += mutate(MutationKind::StandardBitwise, x, rng).hamming(x) == 4;
  const double p = 1.0 / 256;
  const double sigma = std::sqrt(p * (1 - p) / trials);
  EXPECT_NEAR(all / double(trials), p, 3 * sigma);
}

TEST(Mutation, InputUnchangedAndTailClean) {
  Rng rng(8);
  const auto x = Bitstring::ones(70);
  for (int i = 0; i < 1000; ++i) {
    const auto y = mutate(MutationKind::StandardBitwise, x, rng);
    EXPECT_LE(y.ones_count(), 70u);
    EXPECT_EQ(y.ones_count() + y.zeros_count(), 70u);
  }
  EXPECT_TRUE(x.all_ones());
}

TEST(Mutation, Names) {
  EXPECT_EQ(parse_mutation("bitwise"), MutationKind::StandardBitwise);
  EXPECT_EQ(parse_mutation("local"), MutationKind::Local);
  EXPECT_STREQ(to_string(MutationKind::Local), "local");
  EXPECT_THROW(parse_mutation("uniform"), std::invalid_argument);
  Rng rng(9);
  EXPECT_THROW(mutate(MutationKind::Local, Bitstring(0), rng), std::invalid_argument);
}
