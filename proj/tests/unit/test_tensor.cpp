#include <gtest/gtest.h>

#include "fedo/core/contract.hpp"
#include "fedo/core/forms.hpp"
#include "fedo/core/permutation.hpp"
#include "fedo/core/random.hpp"
#include "fedo/core/tensor.hpp"

namespace fedo {
namespace {

using Q = Rational;

Tensor<Q> rand_tensor(int dim, int order, std::uint64_t seed) {
  Rng rng = make_rng({seed, 0x7465ULL});
  return random_integer_tensor<Q>(dim, order, rng);
}

TEST(Permutation, SignAndInverse) {
  EXPECT_EQ(permutation_sign(Permutation{1, 0, 2}), -1);
  EXPECT_EQ(permutation_sign(Permutation{1, 2, 0}), 1);
  const Permutation p{2, 0, 3, 1};
  EXPECT_EQ(compose(p, inverse(p)), identity_permutation(4));
  EXPECT_EQ(all_permutations(4).size(), 24u);
}

TEST(Tensor, IndexingIsRowMajor) {
  Tensor<Q> t(3, 2);
  t.at({1, 2}) = Q(5);
  EXPECT_EQ(t[1 * 3 + 2], Q(5));
  std::vector<int> idx(2);
  t.unflat(5, idx);
  EXPECT_EQ(idx, (std::vector<int>{1, 2}));
}

TEST(Tensor, PermuteSlotsComposes) {
  const auto t = rand_tensor(3, 3, 1);
  const Permutation p{1, 2, 0};
  EXPECT_EQ(permute_slots(permute_slots(t, p), inverse(p)), t);
  EXPECT_EQ(swap_slots(swap_slots(t, 0, 2), 0, 2), t);
}

TEST(Contract, MatrixProductMatchesLoops) {
  const auto a = rand_tensor(4, 2, 2), b = rand_tensor(4, 2, 3);
  const ContractionPlan plan{{{0, 1}, {1, 2}}, {0, 2}};
  const auto c = contract<Q>(plan, std::vector<Tensor<Q>>{a, b});
  for (int i = 0; i < 4; ++i)
    for (int k = 0; k < 4; ++k) {
      Q s;
      for (int j = 0; j < 4; ++j) s += a.at({i, j}) * b.at({j, k});
      EXPECT_EQ(c.at({i, k}), s);
    }
}

TEST(Contract, OrderIndependent) {
  const std::vector<Tensor<Q>> f{rand_tensor(3, 3, 4), rand_tensor(3, 2, 5), rand_tensor(3, 3, 6)};
  const ContractionPlan plan{{{0, 1, 2}, {1, 3}, {3, 2, 4}}, {4, 0}};
  const auto greedy = contract<Q>(plan, f);
  for (std::uint64_t s = 0; s < 5; ++s) EXPECT_EQ(contract<Q>(plan, f, PlanOrder::Shuffled, s), greedy);
}

TEST(Contract, RejectsBadPlans) {
  EXPECT_THROW((ContractionPlan{{{0, 0, 0}}, {}}.validate()), ShapeError);
  EXPECT_THROW((ContractionPlan{{{0, 1}}, {0}}.validate()), ShapeError);
  EXPECT_THROW((ContractionPlan{{{0, 0}}, {0}}.validate()), ShapeError);
}

TEST(Forms, WedgeIsGradedCommutative) {
  const auto a = Form<Q>::from_tensor(alternate_all(rand_tensor(4, 1, 7)));
  const auto b = Form<Q>::from_tensor(alternate_all(rand_tensor(4, 2, 8)));
  const auto c = Form<Q>::from_tensor(alternate_all(rand_tensor(4, 1, 9)));
  EXPECT_EQ(wedge(a, b), wedge(b, a));
  EXPECT_EQ(wedge(a, c), wedge(c, a) * Q(-1));
  EXPECT_TRUE(wedge(a, a).is_zero());
}

TEST(Forms, AlternateHasNoFactorialNormalization) {
  Tensor<Q> t(2, 2);
  t.at({0, 1}) = Q(1);
  const auto a = alternate_all(t);
  EXPECT_EQ(a.at({0, 1}), Q(1));
  EXPECT_EQ(a.at({1, 0}), Q(-1));
  const auto twice = alternate_all(a);
  EXPECT_EQ(twice, a * Q(2));
}

TEST(Forms, TopWedgePowerInDimFour) {
  Tensor<Q> w(4, 2);
  w.at({0, 2}) = Q(1);
  w.at({2, 0}) = Q(-1);
  w.at({1, 3}) = Q(1);
  w.at({3, 1}) = Q(-1);
  const auto om = Form<Q>::from_tensor(w);
  EXPECT_EQ(wedge_power(om, 2).at(std::vector<int>{0, 1, 2, 3}), Q(-2));
  EXPECT_TRUE(wedge_power(om, 3).is_zero());
}

}  // namespace
}  // namespace fedo
