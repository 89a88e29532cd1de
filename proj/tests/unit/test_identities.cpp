#include <gtest/gtest.h>

#include "fedo/identities/identities.hpp"
#include "fedo/symmetry/symmetry.hpp"

namespace fedo {
namespace {

using Q = Rational;

Tensor<Q> random_r(int n, std::uint64_t seed) { return curvature_projector(n).random_element<Q>(seed); }

/// 1/4 R_i^{mjk} R_m^{ipq} Alt(ω⊗ω)_{jkpq} by explicit loops, independent of the
/// library contraction and wedge code.
Q scalar_by_loops(const Tensor<Q>& r, const SymplecticForm& w) {
  const int d = r.dim();
  const auto& wi = w.upper();
  const auto& wl = w.lower();
  Tensor<Q> up(d, 4);
  for_each_index(d, 4, [&](std::span<const int> x, std::size_t flat) {
    Q s;
    for (int a = 0; a < d; ++a)
      for (int b = 0; b < d; ++b)
        for (int c = 0; c < d; ++c) s += wi.at({x[1], a}) * wi.at({x[2], b}) * wi.at({x[3], c}) * r.at({x[0], a, b, c});
    up[flat] = s;
  });
  Tensor<Q> alt(d, 4);
  const auto perms = all_permutations(4);
  for_each_index(d, 4, [&](std::span<const int> x, std::size_t flat) {
    Q s;
    for (const auto& p : perms) {
      const int sg = permutation_sign(p);
      s += Q(sg) * wl.at({x[p[0]], x[p[1]]}) * wl.at({x[p[2]], x[p[3]]});
    }
    alt[flat] = s;
  });
  Q total;
  for_each_index(d, 4, [&](std::span<const int> x, std::size_t flat) {
    if (alt[flat].is_zero()) return;
    for (int i = 0; i < d; ++i)
      for (int m = 0; m < d; ++m) total += up.at({i, m, x[0], x[1]}) * up.at({m, i, x[2], x[3]}) * alt[flat];
  });
  return total * Q(1, 4);
}

TEST(Identities, ScalarMatchesLoopOracle) {
  for (int n : {1, 2, 3}) {
    const auto w = standard_form(n);
    const auto r = random_r(n, 40 + static_cast<std::uint64_t>(n));
    EXPECT_EQ(builtin("eq2")(r, w).value(), scalar_by_loops(r, w)) << "dim " << 2 * n;
  }
}

TEST(Identities, ScalarVanishesInDimTwo) {
  const auto w = standard_form(1);
  for (std::uint64_t s = 0; s < 5; ++s) EXPECT_TRUE(scalar_identity(random_r(1, s), w).is_zero());
}

TEST(Identities, TwoFormFamily) {
  const auto w4 = standard_form(2), w6 = standard_form(3);
  const auto r4 = random_r(2, 1), r6 = random_r(3, 1);
  EXPECT_TRUE(expr1(r4, ricci(r4, w4), w4).is_zero());
  EXPECT_TRUE(two_form_identity(r4, w4).is_zero());
  const auto e1 = expr1(r6, ricci(r6, w6), w6);
  EXPECT_FALSE(e1.is_zero());
  EXPECT_EQ(e1, -swap_slots(e1, 0, 1));
  EXPECT_EQ(exact_ratio(two_form_identity(r6, w6), e1), frozen_constant("eq4/eq1"));
}

TEST(Identities, ChernForms) {
  const auto w = standard_form(3);
  const auto r = random_r(3, 2);
  EXPECT_TRUE(chern_form(r, w, 1).is_zero());
  EXPECT_TRUE(chern_form(r, w, 3).is_zero());
  EXPECT_FALSE(chern_form(r, w, 2).is_zero());
  EXPECT_EQ(chern_generator(r, w, 2), chern_form(r, w, 2).to_tensor());
}

TEST(Identities, MainTheoremFormDimensionHandling) {
  const auto w4 = standard_form(2);
  const auto r4 = random_r(2, 3);
  EXPECT_THROW(main_theorem_form(r4, w4, 4, 2), std::invalid_argument);
  EXPECT_TRUE(main_theorem_form(r4, w4, 2, 2).is_zero());
  EXPECT_THROW(main_theorem_form(r4, w4, 1, 2), std::invalid_argument);
  EXPECT_EQ(main_theorem_form(r4, w4, 0, 2).value(),
            frozen_constant("main-p0-k2/eq2") * scalar_identity(r4, w4));
}

TEST(Identities, FrozenConstantsAreListed) {
  EXPECT_EQ(frozen_constant("eq4/eq1"), Q(12));
  EXPECT_EQ(frozen_constant("main-p0-k2/eq2"), Q(24));
  EXPECT_EQ(frozen_constant("main-p2-k2/eq4"), Q(24));
  EXPECT_THROW(frozen_constant("nope"), std::invalid_argument);
}

TEST(Identities, BuiltinCatalogue) {
  EXPECT_EQ(builtin_expressions().size(), 8u);
  EXPECT_THROW(builtin("nope"), std::invalid_argument);
  EXPECT_EQ(builtin("main-p2-k2").weight, -2);
  EXPECT_EQ(builtin("main-p4-k2").min_dim, 6);
}

TEST(Identities, ExactRatio) {
  Tensor<Q> a(2, 1), b(2, 1);
  b.at({0}) = Q(2);
  a.at({0}) = Q(3);
  EXPECT_EQ(exact_ratio(a, b), Q(3, 2));
  a.at({1}) = Q(1);
  EXPECT_FALSE(exact_ratio(a, b).has_value());
}

TEST(Identities, DivergenceOfEq1Vanishes) {
  const auto f = random_fedosov(3, 2, 21);
  EXPECT_TRUE(divergence(f, builtin("eq1")).is_zero());
}

TEST(Identities, HomogeneityAndEquivariance) {
  const auto f = random_fedosov(2, 1, 13);
  const auto h = homogeneity_check(builtin("eq2"), f, Q(3));
  EXPECT_TRUE(h.pass);
  EXPECT_EQ(h.measured, -4);
  const auto w = standard_form(2);
  EXPECT_TRUE(is_equivariant(builtin("eq1"), random_r(2, 4), w, random_symplectic(2, 4)));
}

}  // namespace
}  // namespace fedo
