#include <gtest/gtest.h>

#include "fedo/core/linalg.hpp"
#include "fedo/core/random.hpp"
#include "fedo/symmetry/symmetry.hpp"

namespace fedo {
namespace {

using Q = Rational;

/// Dimension of {R : R_ijkl = R_jikl, R_ijkl = -R_ijlk, cyclic sum over jkl = 0}
/// by direct elimination on the dim^4 components.
long curvature_space_dim_by_elimination(int dim) {
  const int n = dim * dim * dim * dim;
  auto at = [dim](int i, int j, int k, int l) { return ((i * dim + j) * dim + k) * dim + l; };
  std::vector<std::vector<std::pair<int, long>>> rows;
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j)
      for (int k = 0; k < dim; ++k)
        for (int l = 0; l < dim; ++l) {
          rows.push_back({{at(i, j, k, l), 1}, {at(j, i, k, l), -1}});
          rows.push_back({{at(i, j, k, l), 1}, {at(i, j, l, k), 1}});
          rows.push_back({{at(i, j, k, l), 1}, {at(i, k, l, j), 1}, {at(i, l, j, k), 1}});
        }
  IncrementalRank<FieldA> r(n);
  for (const auto& row : rows) {
    std::vector<FieldA> v(static_cast<size_t>(n), FieldA(0));
    for (const auto& [c, x] : row) v[static_cast<size_t>(c)] += FieldA(x);
    r.add(std::move(v));
  }
  return n - r.rank();
}

TEST(Symmetry, CurvatureProjectorRankMatchesElimination) {
  for (int n : {1, 2}) EXPECT_EQ(curvature_projector(n).rank(), curvature_space_dim_by_elimination(2 * n));
}

TEST(Symmetry, ProjectorIsIdempotentAndLandsInClass) {
  const auto p = curvature_projector(2);
  Rng rng = make_rng({3});
  const auto t = random_integer_tensor<Q>(4, 4, rng);
  const auto pt = p.apply(t);
  EXPECT_TRUE(SymmetryClass::curvature().contains(pt));
  EXPECT_EQ(p.apply(pt), pt);
  EXPECT_FALSE(SymmetryClass::curvature().contains(t));
}

TEST(Symmetry, NormalTensorsMapToCurvature) {
  for (int n : {1, 2, 3}) {
    const auto t = normal_projector(1, n).random_element<Q>(11);
    EXPECT_TRUE(SymmetryClass::normal(1).contains(t));
    EXPECT_TRUE(SymmetryClass::curvature().contains(normal_to_curvature(t)));
  }
}

TEST(Symmetry, FloatResidualIsRelative) {
  const auto r = curvature_projector(2).random_element<Q>(5);
  const auto d = tensor_cast<double>(r);
  EXPECT_LT(SymmetryClass::curvature().residual(d), 1e-12);
}

TEST(Symmetry, CapsAreEnforced) {
  EXPECT_THROW(curvature_projector(5), std::invalid_argument);
  EXPECT_THROW(normal_projector(4, 1), std::invalid_argument);
}

}  // namespace
}  // namespace fedo
