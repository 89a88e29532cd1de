#include <gtest/gtest.h>

#include "fedo/jets/polynomial.hpp"

namespace fedo {
namespace {

using Q = Rational;

Poly monomial(const std::shared_ptr<const PolySpace>& sp, std::vector<int> exps, Q c = Q(1)) {
  Poly p(sp);
  p[sp->index(exps)] = c;
  return p;
}

TEST(PolySpace, MonomialCounts) {
  const auto sp = PolySpace::get(2, 3);
  EXPECT_EQ(sp->size(), 10);
  EXPECT_EQ(sp->count(1), 3);
  EXPECT_EQ(sp->index(std::vector<int>{0, 0}), 0);
  EXPECT_EQ(sp->index(std::vector<int>{2, 2}), -1);
}

TEST(Poly, DerivativeAndProduct) {
  const auto sp = PolySpace::get(2, 3);
  const Poly p = monomial(sp, {2, 1}, Q(3));
  EXPECT_EQ(p.derivative(0, 3), monomial(sp, {1, 1}, Q(6)));
  EXPECT_EQ(p.derivative(1, 3), monomial(sp, {2, 0}, Q(3)));
  EXPECT_EQ(p.actual_degree(), 3);
  Poly acc(sp);
  Poly::fma(acc, Q(2), monomial(sp, {1, 0}), monomial(sp, {0, 1}), 3);
  EXPECT_EQ(acc, monomial(sp, {1, 1}, Q(2)));
  Poly trunc(sp);
  Poly::fma(trunc, Q(1), monomial(sp, {1, 1}), monomial(sp, {0, 1}), 2);
  EXPECT_TRUE(trunc.is_zero());
}

TEST(Poly, LinearSubstitution) {
  const auto sp = PolySpace::get(2, 2);
  Matrix<Q> m(2, 2);
  m(0, 0) = Q(1);
  m(0, 1) = Q(1);
  m(1, 1) = Q(1);
  // x0 -> x0 + x1
  const Poly p = monomial(sp, {2, 0});
  const Poly expect = monomial(sp, {2, 0}) + monomial(sp, {1, 1}, Q(2)) + monomial(sp, {0, 2});
  EXPECT_EQ(p.linear_substitution(m), expect);
}

TEST(Poly, EmbeddingMovesVariables) {
  const auto small = PolySpace::get(2, 2), big = PolySpace::get(4, 2);
  const std::vector<int> map{0, 2};
  EXPECT_EQ(monomial(small, {1, 1}).embedded(big, map), monomial(big, {1, 0, 1, 0}));
}

}  // namespace
}  // namespace fedo
