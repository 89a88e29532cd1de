#include <gtest/gtest.h>

#include "fedo/core/linalg.hpp"

namespace fedo {
namespace {

using Q = Rational;

Matrix<Q> from_rows(const std::vector<std::vector<long>>& rows) {
  Matrix<Q> m(static_cast<int>(rows.size()), static_cast<int>(rows[0].size()));
  for (size_t r = 0; r < rows.size(); ++r)
    for (size_t c = 0; c < rows[r].size(); ++c) m(static_cast<int>(r), static_cast<int>(c)) = Q(rows[r][c]);
  return m;
}

TEST(Linalg, RankAndNullspace) {
  const auto m = from_rows({{1, 2, 3}, {2, 4, 6}, {1, 0, 1}});
  EXPECT_EQ(rank(m), 2);
  const auto ns = nullspace(m);
  ASSERT_EQ(ns.size(), 1u);
  for (int r = 0; r < 3; ++r) {
    Q s;
    for (int c = 0; c < 3; ++c) s += m(r, c) * ns[0][static_cast<size_t>(c)];
    EXPECT_TRUE(s.is_zero());
  }
}

TEST(Linalg, InverseAndDeterminant) {
  const auto m = from_rows({{2, 1}, {7, 4}});
  EXPECT_EQ(determinant(m), Q(1));
  const auto inv = inverse(m);
  ASSERT_TRUE(inv.has_value());
  EXPECT_EQ(m * *inv, Matrix<Q>::identity(2));
  EXPECT_FALSE(inverse(from_rows({{1, 2}, {2, 4}})).has_value());
}

TEST(Linalg, IncrementalRankOverPrimeField) {
  IncrementalRank<FieldA> r(3);
  EXPECT_TRUE(r.add({FieldA(1), FieldA(2), FieldA(3)}));
  EXPECT_FALSE(r.add({FieldA(2), FieldA(4), FieldA(6)}));
  EXPECT_TRUE(r.add({FieldA(0), FieldA(1), FieldA(1)}));
  EXPECT_EQ(r.rank(), 2);
  EXPECT_THROW(r.add({FieldA(1)}), std::invalid_argument);
}

}  // namespace
}  // namespace fedo
