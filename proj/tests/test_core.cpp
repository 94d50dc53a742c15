#include <gtest/gtest.h>

#include <sstream>

#include "emolab/core.hpp"
#include "emolab/rng.hpp"

using namespace emolab;

TEST(Bitstring, OnesCount) {
  EXPECT_EQ(Bitstring::from_string("00000").ones_count(), 0u);
  EXPECT_EQ(Bitstring::from_string("11111").ones_count(), 5u);
  EXPECT_EQ(Bitstring::from_string("10100").ones_count(), 2u);
}

TEST(Bitstring, ZeroLength) {
  const Bitstring e(0);
  EXPECT_EQ(e.size(), 0u);
  EXPECT_EQ(e.ones_count(), 0u);
  EXPECT_EQ(e.to_string(), "");
}

TEST(Bitstring, RoundTripAcrossWordBoundary) {
  std::string s;
  for (int i = 0; i < 130; ++i) s += (i % 3 == 0) ? '1' : '0';
  const auto b = Bitstring::from_string(s);
  EXPECT_EQ(b.size(), 130u);
  EXPECT_EQ(b.to_string(), s);
  EXPECT_EQ(b.ones_count() + b.zeros_count(), 130u);
  EXPECT_TRUE(b[0]);
  EXPECT_FALSE(b[1]);
  EXPECT_TRUE(b[129]);
}

TEST(Bitstring, FromStringRejectsOtherCharacters) {
  EXPECT_THROW(Bitstring::from_string("10a1"), std::invalid_argument);
}

TEST(Bitstring, OnesZerosPredicates) {
  for (std::size_t n : {1u, 63u, 64u, 65u, 128u}) {
    const auto z = Bitstring::zeros(n);
    const auto o = Bitstring::ones(n);
    EXPECT_TRUE(z.all_zeros());
    EXPECT_FALSE(z.all_ones());
    EXPECT_TRUE(o.all_ones());
    EXPECT_EQ(o.ones_count(), n);
    EXPECT_EQ(z.complement(), o);
    EXPECT_EQ(z.hamming(o), n);
  }
}

TEST(Bitstring, FlipAndXor) {
  const auto x = Bitstring::from_string("1010");
  EXPECT_EQ(x.with_flipped(0).to_string(), "0010");
  EXPECT_EQ(x.with_flipped(3).to_string(), "1011");
  EXPECT_EQ(x.to_string(), "1010");
  EXPECT_EQ((x ^ Bitstring::from_string("0110")).to_string(), "1100");
  EXPECT_EQ(x.hamming(Bitstring::from_string("0110")), 2u);
  EXPECT_THROW(x ^ Bitstring::from_string("01"), std::invalid_argument);
}

TEST(Bitstring, CountInvariantsOnRandomStrings) {
  Rng rng(1);
  for (int k = 0; k < 200; ++k) {
    const std::size_t n = 1 + rng.below(200);
    std::string s(n, '0');
    for (auto& c : s) c = rng.one_in(2) ? '1' : '0';
    const auto b = Bitstring::from_string(s);
    EXPECT_EQ(b.ones_count() + b.zeros_count(), n);
    EXPECT_LE(b.ones_count(), n);
    EXPECT_EQ(b.complement().ones_count(), b.zeros_count());
  }
}

TEST(Dominance, ReferenceCases) {
  EXPECT_EQ(dominance_compare({21, 20}, {5, 15}), Dominance::Dominates);
  EXPECT_EQ(dominance_compare({5, 15}, {21, 20}), Dominance::DominatedBy);
  EXPECT_EQ(dominance_compare({21, 20}, {20, 21}), Dominance::Incomparable);
  EXPECT_EQ(dominance_compare({7, 13}, {7, 13}), Dominance::Equal);
  EXPECT_EQ(dominance_compare({5, 15}, {10, 10}), Dominance::Incomparable);
  EXPECT_EQ(dominance_compare({3, 5}, {3, 4}), Dominance::Dominates);
}

TEST(Dominance, DimensionMismatchRejected) {
  EXPECT_THROW(dominance_compare({1, 2}, {1, 2, 3}), std::invalid_argument);
}

TEST(Dominance, WeakDominance) {
  EXPECT_TRUE(weakly_dominates({3, 3}, {3, 3}));
  EXPECT_TRUE(weakly_dominates({4, 3}, {3, 3}));
  EXPECT_FALSE(weakly_dominates({4, 2}, {3, 3}));
  EXPECT_FALSE(dominates({3, 3}, {3, 3}));
}

TEST(Dominance, OrderProperties) {
  Rng rng(17);
  auto draw = [&] {
    const bool three = rng.one_in(2);
    auto v = [&] { return static_cast<std::int64_t>(rng.below(5)); };
    return three ? FitnessVector{v(), v(), v()} : FitnessVector{v(), v()};
  };
  for (int k = 0; k < 20000; ++k) {
    const auto u = draw();
    auto v = draw();
    auto w = draw();
    if (v.dims() != u.dims() || w.dims() != u.dims()) continue;
    EXPECT_TRUE(weakly_dominates(u, u));
    EXPECT_FALSE(dominates(u, v) && dominates(v, u));
    if (dominates(u, v) && dominates(v, w)) { EXPECT_TRUE(dominates(u, w)); }
    const auto uv = dominance_compare(u, v);
    const auto vu = dominance_compare(v, u);
    if (uv == Dominance::Dominates) { EXPECT_EQ(vu, Dominance::DominatedBy); }
    if (uv == Dominance::Equal || uv == Dominance::Incomparable) { EXPECT_EQ(vu, uv); }
  }
}

TEST(FitnessVector, Printing) {
  std::ostringstream os;
  os << FitnessVector{21, 20};
  EXPECT_EQ(os.str(), "(21,20)");
  EXPECT_THROW((FitnessVector{1, 2, 3, 4, 5}), std::invalid_argument);
}
