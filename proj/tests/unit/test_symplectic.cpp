#include <gtest/gtest.h>

#include "fedo/core/random.hpp"
#include "fedo/symplectic/symplectic.hpp"

namespace fedo {
namespace {

using Q = Rational;

TEST(Symplectic, StandardFormConventions) {
  const auto w = standard_form(2);
  EXPECT_EQ(w.lower().at({0, 2}), Q(1));
  EXPECT_EQ(w.lower().at({2, 0}), Q(-1));
  const auto m = w.matrix();
  Matrix<Q> inv(4, 4);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) inv(i, j) = w.upper().at({i, j});
  EXPECT_EQ(inv * m, Matrix<Q>::identity(4));
}

TEST(Symplectic, RaiseThenLowerIsMinusIdentity) {
  const auto w = standard_form(2);
  Rng rng = make_rng({1});
  const auto t = random_integer_tensor<Q>(4, 3, rng);
  for (int s = 0; s < 3; ++s) EXPECT_EQ(lower_slot(raise_slot(t, s, w), s, w), -t);
}

TEST(Symplectic, RandomSymplecticPreservesForm) {
  for (int n = 1; n <= 3; ++n) {
    const auto w = standard_form(n);
    for (std::uint64_t s = 0; s < 5; ++s) {
      const auto a = random_symplectic(n, s);
      EXPECT_TRUE(is_symplectic(a, w));
      EXPECT_EQ(pullback(a, w.lower()), w.lower());
    }
  }
}

TEST(Symplectic, PairFormsOfOmegaWithItself) {
  for (int n = 1; n <= 3; ++n) {
    const auto w = standard_form(n);
    const auto v = pair_forms(w.lower(), w.lower(), w);
    EXPECT_EQ(v.value(), Q(2 * n));
  }
}

TEST(Symplectic, RejectsDegenerateForms) {
  Tensor<Q> t(2, 2);
  EXPECT_THROW(SymplecticForm{t}, std::invalid_argument);
}

}  // namespace
}  // namespace fedo
