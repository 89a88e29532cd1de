#include <gtest/gtest.h>

#include "fedo/core/random.hpp"
#include "fedo/invariants/matchings.hpp"

namespace fedo {
namespace {

using Q = Rational;

TEST(Matchings, CountsAreDoubleFactorials) {
  EXPECT_EQ(enumerate_matchings(0).size(), 1u);
  EXPECT_EQ(enumerate_matchings(3).size(), 0u);
  EXPECT_EQ(enumerate_matchings(6).size(), 15u);
  EXPECT_EQ(enumerate_matchings(8).size(), 105u);
  EXPECT_EQ(enumerate_matchings(10).size(), 945u);
}

TEST(Matchings, CanonicalFormFoldsSwapsIntoSign) {
  const auto m = Matching::from_pairs({{3, 0}, {1, 2}});
  EXPECT_EQ(m.sign(), -1);
  EXPECT_EQ(m.pairs(), (std::vector<std::pair<int, int>>{{0, 3}, {1, 2}}));
  EXPECT_EQ(Matching::parse(m.str()), m.unsigned_form());
}

TEST(Matchings, EvaluationOnVectorsUsesOmega) {
  const auto w = standard_form(1);
  Tensor<Q> u(2, 1), v(2, 1);
  u.at({0}) = Q(1);
  v.at({1}) = Q(1);
  const auto m = Matching::from_pairs({{0, 1}});
  EXPECT_EQ(eval_combination<Q>({{m, Q(1)}}, {u, v}, w), Q(1));
  EXPECT_EQ(eval_combination<Q>({{m, Q(1)}}, {v, u}, w), Q(-1));
}

TEST(Matchings, AlternationVanishesAboveDimension) {
  for (int n : {1, 2}) {
    const auto w = standard_form(n);
    const int m = 2 * n + 1;
    const int p = m % 2 == 0 ? m : m + 1;
    const auto slots = identity_permutation(m);
    const auto combo = sft_alternation(p, slots);
    Rng rng = make_rng({42, static_cast<std::uint64_t>(n)});
    std::vector<Tensor<Q>> vs;
    for (int i = 0; i < p; ++i) vs.push_back(random_integer_tensor<Q>(2 * n, 1, rng));
    EXPECT_TRUE(eval_combination(combo, vs, w).is_zero());
  }
}

TEST(Matchings, AlternationAtDimensionIsNonzero) {
  const auto w = standard_form(2);
  const auto slots = identity_permutation(4);
  const auto combo = sft_alternation(4, slots);
  Rng rng = make_rng({43});
  std::vector<Tensor<Q>> vs;
  for (int i = 0; i < 4; ++i) vs.push_back(random_integer_tensor<Q>(4, 1, rng));
  EXPECT_FALSE(eval_combination(combo, vs, w).is_zero());
}

}  // namespace
}  // namespace fedo
