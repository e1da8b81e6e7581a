#include <gtest/gtest.h>

#include <random>

#include "nlcs/reduction.hpp"

using namespace nlcs;

TEST(MatrixToSystem, Examples) {
  auto one = matrix_to_system({{1}});
  ASSERT_EQ(one.size(), 1U);
  EXPECT_EQ(one.constraints[0].poly, MultiPoly::constant(1, 1));
  EXPECT_EQ(one.constraints[0].rel, Relation::Eq);
  auto r1 = extract_conflict(one);
  EXPECT_EQ(r1.decision.status, Status::Unsat);
  EXPECT_EQ(r1.conflict->ids, (std::vector<std::size_t>{1}));

  auto anti = matrix_to_system({{0, 1}, {1, 0}});
  MultiPoly x = MultiPoly::var(1, 0);
  EXPECT_EQ(anti.constraints[0].poly, x - MultiPoly::constant(1, 1));
  EXPECT_EQ(anti.constraints[1].poly, x - MultiPoly::constant(1, 2));
  auto r2 = extract_conflict(anti);
  EXPECT_EQ(r2.conflict->ids.size(), 2U);

  auto ones = matrix_to_system({{1, 1}, {1, 1}});
  EXPECT_TRUE(ones.constraints[0].poly == MultiPoly::constant(1, 1));
  EXPECT_EQ(extract_conflict(ones).conflict->ids.size(), 1U);

  EXPECT_THROW(matrix_to_system({{0, 0}}), std::invalid_argument);
  EXPECT_THROW(matrix_to_system({{1, 0}, {1}}), std::invalid_argument);
}

TEST(MatrixToSystem, RootsAtRowIndices) {
  BinaryMatrix M{{1, 0, 1}, {0, 1, 1}, {1, 1, 0}, {0, 0, 1}};
  std::vector<std::size_t> muls;
  auto s = matrix_to_system(M, &muls);
  for (std::size_t i = 0; i < 3; ++i) {
    EXPECT_LE(muls[i], M.size());
    for (std::size_t j = 0; j < M.size(); ++j) {
      Rational v = s.constraints[i].poly.evaluate({Rational(static_cast<long>(j + 1))});
      EXPECT_EQ(v != 0, M[j][i] == 1);
    }
  }
}

TEST(Roundtrip, AllTwoByTwoAndThreeByThree) {
  int checked = 0;
  for (std::size_t n : {2U, 3U}) {
    for (std::uint32_t bits = 0; bits < (1U << (n * n)); ++bits) {
      BinaryMatrix M(n, std::vector<std::uint8_t>(n));
      bool ok = true;
      for (std::size_t r = 0; r < n; ++r) {
        bool any = false;
        for (std::size_t c = 0; c < n; ++c) any = any || (M[r][c] = bits >> (r * n + c) & 1U);
        ok = ok && any;
      }
      if (!ok) continue;
      EXPECT_TRUE(roundtrip_check(M)) << n << " " << bits;
      ++checked;
    }
  }
  EXPECT_EQ(checked, 9 + 343);
}

TEST(Roundtrip, RandomFourByFour) {
  std::mt19937 rng(99);
  std::bernoulli_distribution bit(0.45);
  std::uniform_int_distribution<std::size_t> col(0, 3);
  for (int t = 0; t < 100; ++t) {
    BinaryMatrix M(4, std::vector<std::uint8_t>(4));
    for (auto& r : M) {
      for (auto& e : r) e = bit(rng);
      r[col(rng)] = 1;
    }
    EXPECT_TRUE(roundtrip_check(M)) << t;
  }
  BinaryMatrix I{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}};
  EXPECT_TRUE(roundtrip_check(I));
  EXPECT_EQ(cover_exact(to_evaluation_matrix(I)).ids.size(), 3U);
}
