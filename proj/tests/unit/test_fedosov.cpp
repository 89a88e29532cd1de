#include <gtest/gtest.h>

#include "fedo/jets/fedosov.hpp"
#include "fedo/symmetry/symmetry.hpp"

namespace fedo {
namespace {

using Q = Rational;

TEST(Fedosov, FlatStructureHasZeroCurvature) {
  for (int n : {1, 2}) {
    const auto f = PolyFedosov::flat(n);
    EXPECT_TRUE(f.is_flat());
    EXPECT_TRUE(curvature(f).is_zero());
  }
}

TEST(Fedosov, CurvatureHasCurvatureSymmetries) {
  for (int n : {1, 2, 3}) {
    const auto r = curvature(random_fedosov(n, 2, 17));
    EXPECT_TRUE(SymmetryClass::curvature().contains(r));
    EXPECT_FALSE(r.is_zero());
  }
}

TEST(Fedosov, RicciIsSymmetric) {
  const auto f = random_fedosov(2, 2, 5);
  const auto k = ricci(curvature(f), f.form());
  EXPECT_EQ(k, swap_slots(k, 0, 1));
}

TEST(Fedosov, SerializationRoundTrips) {
  const auto f = random_fedosov(2, 2, 9);
  EXPECT_EQ(PolyFedosov::parse(f.serialize()), f);
  const auto g = f.scaled(Q(3));
  EXPECT_EQ(PolyFedosov::parse(g.serialize()), g);
  EXPECT_THROW(PolyFedosov::parse("2 2\n1 1 1 : 0 0 0 : 1\n"), std::invalid_argument);
  EXPECT_THROW(PolyFedosov::parse(""), std::invalid_argument);
}

TEST(Fedosov, ScalingMultipliesCurvatureByLambdaSquared) {
  const auto f = random_fedosov(2, 1, 2);
  EXPECT_EQ(curvature(f.scaled(Q(2))), curvature(f) * Q(4));
}

TEST(Fedosov, PullbackNaturality) {
  const auto f = random_fedosov(2, 2, 4);
  const auto a = random_symplectic(2, 8);
  EXPECT_EQ(curvature(f.pullback(a)), pullback(a, curvature(f)));
  const auto jf = curvature_derivatives(f.pullback(a), 1);
  EXPECT_EQ(jf[1], pullback(a, curvature_derivatives(f, 1)[1]));
}

TEST(Fedosov, ProductWithFlatReducesToOriginal) {
  const auto f = random_fedosov(1, 2, 6);
  const auto g = f.product_with_flat();
  EXPECT_EQ(g.n(), 2);
  const auto jg = curvature_derivatives(g, 1);
  const auto jf = curvature_derivatives(f, 1);
  EXPECT_EQ(reduce(jg[0], 1), jf[0]);
  EXPECT_EQ(reduce(jg[1], 1), jf[1]);
}

TEST(Fedosov, ContractedBianchiIdentity) {
  // ω^{iq} (∇_i R)_{qjkl} = ∇_k K_{jl} - ∇_l K_{jk}, with ∇K the trace of ∇R.
  const auto f = random_fedosov(2, 2, 12);
  const auto& w = f.form();
  const auto dr = curvature_derivatives(f, 1)[1];
  const int d = f.dim();
  Tensor<Q> dk(d, 3);
  for_each_index(d, 3, [&](std::span<const int> x, std::size_t flat) {
    Q s;
    for (int a = 0; a < d; ++a)
      for (int m = 0; m < d; ++m) s += w.upper().at({a, m}) * dr.at({x[0], m, x[1], a, x[2]});
    dk[flat] = s;
  });
  for_each_index(d, 3, [&](std::span<const int> x, std::size_t) {
    Q lhs;
    for (int i = 0; i < d; ++i)
      for (int q = 0; q < d; ++q) lhs += w.upper().at({i, q}) * dr.at({i, q, x[0], x[1], x[2]});
    const Q rhs = dk.at({x[1], x[0], x[2]}) - dk.at({x[2], x[0], x[1]});
    EXPECT_EQ(lhs, rhs);
  });
}

TEST(Fedosov, DerivativeOrderIsBoundedByDegree) {
  EXPECT_THROW(curvature_derivatives(random_fedosov(1, 1, 1), 2), std::invalid_argument);
  EXPECT_EQ(curvature_derivatives(random_fedosov(1, 2, 1), 1).order(), 1);
}

}  // namespace
}  // namespace fedo
