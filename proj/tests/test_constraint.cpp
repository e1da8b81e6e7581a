#include <gtest/gtest.h>

#include "nlcs/constraint.hpp"
#include "nlcs/errors.hpp"
#include "nlcs/parser.hpp"

using namespace nlcs;

namespace {

Rational q(long n, long d = 1) { return make_rational(n, d); }

}  // namespace

TEST(Relation, HoldsTable) {
  const Sign signs[] = {Sign::Negative, Sign::Zero, Sign::Positive};
  const bool expected[6][3] = {
      {true, false, false},  // <
      {true, true, false},   // <=
      {false, true, false},  // =
      {true, false, true},   // !=
      {false, false, true},  // >
      {false, true, true},   // >=
  };
  const Relation rels[] = {Relation::Lt, Relation::Le, Relation::Eq, Relation::Ne, Relation::Gt, Relation::Ge};
  for (int r = 0; r < 6; ++r)
    for (int s = 0; s < 3; ++s) {
      EXPECT_EQ(holds(rels[r], signs[s]), expected[r][s]);
      EXPECT_EQ(holds(negate(rels[r]), signs[s]), !expected[r][s]);
      EXPECT_EQ(holds(mirror(rels[r]), -signs[s]), expected[r][s]);
    }
}

TEST(ParseNative, Examples) {
  auto sys = parse_native("vars: x y\nx^2 + y^2 - 1 < 0\n");
  ASSERT_EQ(sys.size(), 1U);
  MultiPoly x = MultiPoly::var(2, 0), y = MultiPoly::var(2, 1);
  EXPECT_EQ(sys.constraints[0].poly, x * x + y * y - MultiPoly::constant(2, 1));
  EXPECT_EQ(sys.constraints[0].rel, Relation::Lt);
  EXPECT_EQ(sys.constraints[0].id, 1U);

  auto s2 = parse_native("vars: x\n# comment\n3*x + 2 >= 5\n");
  EXPECT_EQ(s2.constraints[0].poly, MultiPoly::constant(1, 3) * MultiPoly::var(1, 0) - MultiPoly::constant(1, 3));
  EXPECT_EQ(s2.constraints[0].rel, Relation::Ge);

  auto s3 = parse_native("vars: x y\nx*y < x*y\n");
  EXPECT_TRUE(s3.constraints[0].poly.is_zero());
  auto pre = preprocess(s3);
  ASSERT_TRUE(pre.trivially_false.has_value());
  EXPECT_EQ(*pre.trivially_false, 1U);
}

TEST(ParseNative, RationalCoefficientsAndPowers) {
  auto sys = parse_native("vars: x\n(x+5)*(x+2)*(x-6)/10 >= 0\nx^2 <= 9\n");
  MultiPoly x = MultiPoly::var(1, 0);
  EXPECT_EQ(sys.constraints[0].poly, q(1, 10) * x.pow(3) + q(1, 10) * x.pow(2) - q(32, 10) * x - MultiPoly::constant(1, 6));
  EXPECT_EQ(sys.constraints[1].poly, x * x - MultiPoly::constant(1, 9));
  EXPECT_EQ(sys.constraints[1].id, 2U);
  EXPECT_EQ(sys.num_original, 2U);
}

TEST(ParseNative, Errors) {
  EXPECT_THROW(parse_native("x > 0\n"), ParseError);
  EXPECT_THROW(parse_native("vars: x\ny > 0\n"), ParseError);
  EXPECT_THROW(parse_native("vars: x x\n"), ParseError);
  EXPECT_THROW(parse_native("vars: x\nx + > 0\n"), ParseError);
  EXPECT_THROW(parse_native("vars: x\nx / x > 0\n"), NlcsError);
  try {
    parse_native("vars: x\nx > 0\nx + z < 1\n");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line, 3U);
    EXPECT_EQ(e.column, 5U);
  }
}

TEST(ParseSmt, Examples) {
  auto sys = parse_smtlib_subset(
      "(set-logic QF_NRA)\n(declare-fun x () Real)\n(assert (and (> x 0) (< x 0)))\n(check-sat)\n");
  ASSERT_EQ(sys.size(), 2U);
  EXPECT_EQ(sys.constraints[0].rel, Relation::Gt);
  EXPECT_EQ(sys.constraints[1].rel, Relation::Lt);
  EXPECT_EQ(sys.constraints[1].id, 2U);

  auto s2 = parse_smtlib_subset("(declare-const x Real)\n(assert (not (<= (* x x) 9)))\n");
  MultiPoly x = MultiPoly::var(1, 0);
  ASSERT_EQ(s2.size(), 1U);
  EXPECT_EQ(s2.constraints[0].poly, x * x - MultiPoly::constant(1, 9));
  EXPECT_EQ(s2.constraints[0].rel, Relation::Gt);

  auto s3 = parse_smtlib_subset("(declare-fun x () Real)\n(assert (>= (* (+ x 5) (+ x 2) (- x 6)) 0))\n");
  EXPECT_EQ(s3.constraints[0].poly, (x + MultiPoly::constant(1, 5)) * (x + MultiPoly::constant(1, 2)) *
                                        (x - MultiPoly::constant(1, 6)));
  EXPECT_EQ(s3.constraints[0].rel, Relation::Ge);
}

TEST(ParseSmt, LateDeclarationsExtendUniverse) {
  auto sys = parse_smtlib_subset(
      "(declare-fun x () Real)\n(assert (> x (/ 1 2)))\n(declare-fun y () Real)\n(assert (= (- y x) 0))\n");
  ASSERT_EQ(sys.nvars(), 2U);
  EXPECT_EQ(sys.constraints[0].poly, MultiPoly::var(2, 0) - MultiPoly::constant(2, q(1, 2)));
  EXPECT_EQ(sys.constraints[1].poly, MultiPoly::var(2, 1) - MultiPoly::var(2, 0));
}

TEST(ParseSmt, UnsupportedConstructs) {
  const char* head = "(declare-fun x () Real)\n(declare-fun y () Real)\n";
  for (const char* body : {"(assert (or (> x 0) (< y 0)))", "(assert (let ((z x)) (> z 0)))",
                           "(assert (> (/ x y) 0))", "(assert (forall ((z Real)) (> z 0)))",
                           "(assert (not (and (> x 0) (> y 0))))", "(assert (=> (> x 0) (> y 0)))"}) {
    EXPECT_THROW(parse_smtlib_subset(std::string(head) + body), UnsupportedFeature) << body;
  }
  EXPECT_THROW(parse_smtlib_subset("(declare-fun b () Bool)"), UnsupportedFeature);
  EXPECT_THROW(parse_smtlib_subset("(assert (> x 0)"), ParseError);
  EXPECT_THROW(parse_smtlib_subset("(assert (> z 0))"), ParseError);
}

TEST(ParseSmt, DistinctAndChains) {
  auto sys = parse_smtlib_subset("(declare-fun x () Real)\n(declare-fun y () Real)\n(assert (distinct x y 1))\n"
                                 "(assert (< 0 x y))\n");
  ASSERT_EQ(sys.size(), 5U);
  EXPECT_EQ(sys.constraints[0].rel, Relation::Ne);
  EXPECT_EQ(sys.constraints[3].rel, Relation::Lt);
  EXPECT_EQ(sys.constraints[4].id, 5U);
}

TEST(Preprocess, Examples) {
  auto s = parse_native("vars: x\nx/2 >= 0\n");
  auto p = preprocess(s);
  ASSERT_EQ(p.system.size(), 1U);
  EXPECT_EQ(p.system.constraints[0].poly, MultiPoly::var(1, 0));
  EXPECT_EQ(p.system.constraints[0].rel, Relation::Ge);

  auto d = preprocess(parse_native("vars: x y\nx*y > 1\n2*x*y > 2\n-x*y < -1\ny < 0\n"));
  ASSERT_EQ(d.system.size(), 2U);
  EXPECT_EQ(d.system.constraints[0].id, 1U);
  EXPECT_EQ(d.system.constraints[1].id, 4U);

  auto f = preprocess(parse_native("vars: x\nx > 3\n0 < 0\n"));
  ASSERT_TRUE(f.trivially_false.has_value());
  EXPECT_EQ(*f.trivially_false, 2U);
  ASSERT_EQ(f.system.size(), 1U);
  EXPECT_EQ(f.system.constraints[0].id, 2U);

  auto t = preprocess(parse_native("vars: x\n1 > 0\nx > 3\n"));
  ASSERT_EQ(t.system.size(), 1U);
  EXPECT_EQ(t.system.constraints[0].id, 2U);
}

TEST(Preprocess, Idempotent) {
  auto s = parse_native("vars: x y\n-3*x^2 + y/7 <= 2\n4*x - 6*y != 0\nx*y/3 = 1/3\n1/2 >= 0\n");
  auto once = preprocess(s).system;
  auto twice = preprocess(once).system;
  ASSERT_EQ(once.size(), twice.size());
  for (std::size_t i = 0; i < once.size(); ++i) EXPECT_EQ(once.constraints[i], twice.constraints[i]);
  // Scaled by 7: y is the leading variable and keeps a positive coefficient.
  MultiPoly x = MultiPoly::var(2, 0), y = MultiPoly::var(2, 1);
  EXPECT_EQ(once.constraints[0].poly, y - MultiPoly::constant(2, 21) * x * x - MultiPoly::constant(2, 14));
  EXPECT_EQ(once.constraints[0].rel, Relation::Le);
  // 4x - 6y != 0 has a negative leading coefficient: mirrored to 3y - 2x != 0.
  EXPECT_EQ(once.constraints[1].poly, MultiPoly::constant(2, 3) * y - MultiPoly::constant(2, 2) * x);
  EXPECT_EQ(once.constraints[1].rel, Relation::Ne);
}

TEST(ConstraintSystem, ReorderAndRestrict) {
  auto s = parse_native("vars: x y\nx - y^2 > 0\ny > 1\n");
  auto r = s.reordered({"y", "x"});
  EXPECT_EQ(r.constraints[0].poly, MultiPoly::var(2, 1) - MultiPoly::var(2, 0).pow(2));
  EXPECT_TRUE(r.satisfied_by({q(2), q(5)}));
  EXPECT_FALSE(r.satisfied_by({q(5), q(2)}));
  EXPECT_THROW(s.reordered({"x", "x"}), std::invalid_argument);
  auto k = s.restricted({2});
  ASSERT_EQ(k.size(), 1U);
  EXPECT_EQ(k.constraints[0].id, 2U);
}
