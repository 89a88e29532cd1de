#include <gtest/gtest.h>

#include "fedo/core/linalg.hpp"
#include "fedo/core/scalar.hpp"

namespace fedo {
namespace {

TEST(Rational, ArithmeticIsExact) {
  const Rational a(1, 3), b(1, 6);
  EXPECT_EQ(a + b, Rational(1, 2));
  EXPECT_EQ(a - b, Rational(1, 6));
  EXPECT_EQ(a * b, Rational(1, 18));
  EXPECT_EQ(a / b, Rational(2));
  EXPECT_TRUE((a - a).is_zero());
  EXPECT_LT(b, a);
}

TEST(Rational, ParseAndPrint) {
  EXPECT_EQ(Rational::parse("-6/4"), Rational(-3, 2));
  EXPECT_EQ(Rational::parse("7"), Rational(7));
  EXPECT_EQ(Rational(-3, 2).str(), "-3/2");
  EXPECT_THROW(Rational::parse("1/0"), std::exception);
  EXPECT_THROW(Rational::parse("abc"), std::exception);
}

TEST(ModP, FieldOperations) {
  const FieldA a(5), b(-3);
  EXPECT_EQ((a + b).signed_value(), 2);
  EXPECT_EQ((a * b).signed_value(), -15);
  EXPECT_EQ((a * a.inverse()).value(), 1u);
  EXPECT_EQ(FieldA::from_rational(Rational(1, 2)) * FieldA(2), FieldA(1));
}

TEST(ModP, RationalReconstruction) {
  for (const Rational& q : {Rational(3, 7), Rational(-22, 9), Rational(1000), Rational(-1, 65536)}) {
    const auto back = rational_reconstruct(FieldWide::from_rational(q));
    ASSERT_TRUE(back.has_value());
    EXPECT_EQ(*back, q);
  }
}

TEST(Dual, ProductRule) {
  const Dual<Rational> x(Rational(3), Rational(1));
  const Dual<Rational> y = x * x * x;
  EXPECT_EQ(y.re(), Rational(27));
  EXPECT_EQ(y.eps(), Rational(27));
}

}  // namespace
}  // namespace fedo
