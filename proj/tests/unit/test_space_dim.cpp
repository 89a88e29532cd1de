#include <gtest/gtest.h>

#include "fedo/identities/identities.hpp"
#include "fedo/invariants/space_dim.hpp"
#include "fedo/symmetry/symmetry.hpp"

namespace fedo {
namespace {

using Q = Rational;

TEST(SpaceDim, WeightSolutions) {
  EXPECT_EQ(weight_solutions(0, -4), (std::vector<SolutionTuple>{{0, 0, 1}, {2}}));
  EXPECT_EQ(weight_solutions(2, -2), (std::vector<SolutionTuple>{{0, 0, 1}, {2}}));
  EXPECT_TRUE(weight_solutions(2, 4).empty());
  EXPECT_EQ(tuple_order({2}, 2), 10);
}

TEST(SpaceDim, ValidationRejectsOddWeightAndCaps) {
  EXPECT_THROW(validate_spec({3, -1, 2}), std::invalid_argument);
  EXPECT_THROW(validate_spec({0, -4, 5}), CapError);
  EXPECT_THROW(validate_spec({0, -20, 1}), CapError);
  EXPECT_NO_THROW(validate_spec({2, -2, 3}));
}

TEST(SpaceDim, ScalarWeightMinusFour) {
  RankOptions opts;
  opts.seed = 7;
  EXPECT_EQ(space_dim({0, -4, 1}, opts).total, 2);
  EXPECT_EQ(space_dim({0, -4, 2}, opts).total, 3);
  EXPECT_EQ(identity_space_dim({0, -4, 1}, opts).dim, 1);
}

TEST(SpaceDim, WeightAboveOrderIsEmpty) {
  const auto r = space_dim({2, 4, 2});
  EXPECT_EQ(r.total, 0);
  EXPECT_TRUE(r.tuples.empty());
}

TEST(SpaceDim, IndependentOfThreadCount) {
  RankOptions a, b;
  a.seed = b.seed = 5;
  b.threads = 3;
  const auto ra = space_dim({2, -2, 2}, a), rb = space_dim({2, -2, 2}, b);
  ASSERT_EQ(ra.tuples.size(), rb.tuples.size());
  for (size_t i = 0; i < ra.tuples.size(); ++i) {
    EXPECT_EQ(ra.tuples[i].rank, rb.tuples[i].rank);
    EXPECT_EQ(ra.tuples[i].samples_used, rb.tuples[i].samples_used);
  }
}

TEST(SpaceDim, ExactFallbackAgreesWithPrimeFields) {
  RankOptions prime, exact;
  prime.seed = exact.seed = 11;
  exact.exact = true;
  for (int n : {1, 2}) {
    const auto a = space_dim({0, -4, n}, prime), b = space_dim({0, -4, n}, exact);
    ASSERT_EQ(a.tuples.size(), b.tuples.size());
    for (size_t i = 0; i < a.tuples.size(); ++i) EXPECT_EQ(a.tuples[i].rank, b.tuples[i].rank);
  }
}

TEST(Certificate, ScalarIdentityRoundTripAndVanishing) {
  RankOptions opts;
  opts.seed = 3;
  const auto certs = find_identity({0, -4, 1}, opts);
  ASSERT_EQ(certs.size(), 1u);
  const auto back = IdentityCertificate::parse(certs[0].serialize());
  EXPECT_EQ(back.serialize(), certs[0].serialize());
  // An identity in dim 2 vanishes on every dim-2 sample.
  for (std::uint64_t s = 0; s < 3; ++s) {
    std::vector<Tensor<Q>> normals;
    for (int kind : sample_layout(certs[0].tuple, 0).source_kind)
      if (kind > 0) normals.push_back(normal_projector(kind, 1).random_element<Q>(100 + s));
    EXPECT_TRUE(certificate_tensor(certs[0], normals).is_zero());
  }
}

TEST(Certificate, ParseRejectsGarbage) { EXPECT_THROW(IdentityCertificate::parse("not a certificate"), std::exception); }

}  // namespace
}  // namespace fedo
