#include <gtest/gtest.h>

#include <random>

#include "nlcs/elimination.hpp"
#include "nlcs/real_algebraic.hpp"

using namespace nlcs;

namespace {

Rational q(long n, long d = 1) { return make_rational(n, d); }
MultiPoly C(const Rational& c, std::size_t n = 2) { return MultiPoly::constant(n, c); }
const MultiPoly X = MultiPoly::var(2, 0);
const MultiPoly Y = MultiPoly::var(2, 1);

MultiPoly random_poly(std::mt19937& rng, std::size_t nvars, int max_deg, int terms) {
  std::uniform_int_distribution<int> coef(-4, 4), e(0, max_deg);
  MultiPoly p(nvars);
  for (int t = 0; t < terms; ++t) {
    Monomial m(nvars);
    for (auto& x : m) x = static_cast<unsigned>(e(rng));
    p += MultiPoly::term(m, coef(rng));
  }
  return p;
}

// Oracle for univariate resultants: product formula over exact planted roots.
Rational res_from_roots(const Rational& la, const std::vector<Rational>& ra, const Rational& lb,
                        const std::vector<Rational>& rb) {
  Rational r = pow_of(la, rb.size()) * pow_of(lb, ra.size());
  for (const auto& x : ra)
    for (const auto& y : rb) r *= x - y;
  return r;
}

}  // namespace

TEST(MultiPoly, RingExamples) {
  EXPECT_EQ((X + C(1)) * (X - C(1)), X * X - C(1));
  MultiPoly p = X * Y + C(3);
  EXPECT_EQ(p + MultiPoly(2), p);
  MultiPoly e = q(1, 10) * (X + C(5)) * (X + C(2)) * (X - C(6));
  EXPECT_EQ(e, q(1, 10) * X.pow(3) + q(1, 10) * X.pow(2) - q(32, 10) * X - C(6));
  EXPECT_EQ(e.evaluate({q(0), q(0)}), -6);
  EXPECT_EQ(e.evaluate({q(6), q(0)}), 0);
}

TEST(MultiPoly, RingAxiomsRandom) {
  std::mt19937 rng(3);
  for (int t = 0; t < 100; ++t) {
    MultiPoly a = random_poly(rng, 3, 2, 4), b = random_poly(rng, 3, 2, 4), c = random_poly(rng, 3, 2, 4);
    EXPECT_EQ((a * b) * c, a * (b * c));
    EXPECT_EQ(a * (b + c), a * b + a * c);
    EXPECT_EQ(a + b, b + a);
    EXPECT_EQ(a - a, MultiPoly(3));
  }
}

TEST(MultiPoly, DegreeCoefficientDerivative) {
  MultiPoly circle = X * X + Y * Y - C(1);
  MultiPoly parab = X * X - Y + C(q(1, 2));
  EXPECT_EQ(circle.degree(1), 2);
  EXPECT_EQ(parab.coefficient(1, 1), C(-1));
  EXPECT_EQ(circle.derivative(1), C(2) * Y);
  EXPECT_EQ(circle.main_var(), 1);
  EXPECT_EQ(C(5).main_var(), -1);
}

TEST(MultiPoly, ExactDivisionAndGcd) {
  MultiPoly a = X * Y - C(1), b = X + Y, c = Y * Y - X;
  EXPECT_EQ((a * b) / b, a);
  EXPECT_FALSE(divide_exact(a, b).has_value());
  EXPECT_EQ(gcd(a * b, a * c), a.normalized());
  EXPECT_EQ(gcd(C(2) * X * b, C(3) * X * X), X);
  EXPECT_EQ(gcd(a, c), C(1));
}

TEST(MultiPoly, GcdRandomPlanted) {
  std::mt19937 rng(5);
  for (int t = 0; t < 60; ++t) {
    MultiPoly g = random_poly(rng, 3, 1, 3);
    MultiPoly a = random_poly(rng, 3, 1, 3), b = random_poly(rng, 3, 1, 3);
    if (g.is_zero() || a.is_zero() || b.is_zero()) continue;
    MultiPoly h = gcd(g * a, g * b);
    // The planted factor divides the gcd and the gcd divides both inputs.
    EXPECT_TRUE(divide_exact(h, g).has_value() || g.is_constant()) << g << " | " << h;
    EXPECT_TRUE(divide_exact(g * a, h).has_value());
    EXPECT_TRUE(divide_exact(g * b, h).has_value());
  }
}

TEST(MultiPoly, SquarefreePart) {
  EXPECT_EQ(squarefree_part((Y - C(1)).pow(2), 1), Y - C(1));
  EXPECT_EQ(squarefree_part(Y * Y - X, 1), Y * Y - X);
  MultiPoly p = (Y * Y - X).pow(2) * (Y + C(1));
  EXPECT_EQ(squarefree_part(p, 1), ((Y * Y - X) * (Y + C(1))).normalized());
}

TEST(MultiPoly, Substitution) {
  MultiPoly circle = X * X + Y * Y - C(1);
  EXPECT_EQ(circle.substitute(0, q(4, 5)), Y * Y - C(q(9, 25)));
  EXPECT_EQ(circle.evaluate({q(4, 5), q(3, 5)}), 0);
  EXPECT_EQ((X * X - Y + C(q(1, 2))).evaluate({q(0), q(1, 2)}), 0);
  EXPECT_EQ((X * Y).substitute(1, X + C(1)), X * X + X);
}

TEST(Resultant, CircleAndParabola) {
  MultiPoly circle = X * X + Y * Y - C(1);
  MultiPoly parab = X * X - Y + C(q(1, 2));
  MultiPoly r = resultant(circle, parab, 1);
  EXPECT_FALSE(r.has_var(1));
  // Eliminating y by y = x^2 + 1/2 in the circle.
  MultiPoly expected = X * X + (X * X + C(q(1, 2))).pow(2) - C(1);
  EXPECT_EQ(r.normalized(), expected.normalized());
  // Sign change between 0.5 and 0.6 locates c = sqrt(0.5(sqrt7 - 2)) ~ 0.568.
  Sign s1 = sign_of(r.evaluate({q(1, 2), q(0)})), s2 = sign_of(r.evaluate({q(3, 5), q(0)}));
  EXPECT_NE(s1, s2);
  EXPECT_NE(s1, Sign::Zero);
}

TEST(Resultant, LinearAndDegenerate) {
  const std::size_t n = 3;
  MultiPoly x = MultiPoly::var(n, 0), a = MultiPoly::var(n, 1), b = MultiPoly::var(n, 2);
  MultiPoly r = resultant(x - a, x - b, 0);
  EXPECT_TRUE(r == a - b || r == b - a);
  EXPECT_TRUE(resultant(X * X + Y, X * X + Y, 0).is_zero());
  EXPECT_THROW(resultant(X, C(3), 0), NlcsError);
}

TEST(Resultant, MatchesRootProductOracle) {
  std::mt19937 rng(9);
  std::uniform_int_distribution<int> num(-6, 6), cnt(1, 3);
  for (int t = 0; t < 40; ++t) {
    std::vector<Rational> ra, rb;
    MultiPoly pa = C(2, 1), pb = C(-3, 1);
    MultiPoly x = MultiPoly::var(1, 0);
    for (int i = cnt(rng); i > 0; --i) {
      ra.push_back(num(rng));
      pa = pa * (x - MultiPoly::constant(1, ra.back()));
    }
    for (int i = cnt(rng); i > 0; --i) {
      rb.push_back(q(num(rng), 2));
      pb = pb * (x - MultiPoly::constant(1, rb.back()));
    }
    MultiPoly r = resultant(pa, pb, 0);
    EXPECT_EQ(r.constant_value(), res_from_roots(2, ra, -3, rb));
  }
}

TEST(Resultant, SpecializationCommutes) {
  // res(p, q)(a) = res(p(a), q(a)) when leading coefficients survive at a.
  std::mt19937 rng(13);
  for (int t = 0; t < 40; ++t) {
    MultiPoly p = random_poly(rng, 2, 2, 4) + Y * Y, qq = random_poly(rng, 2, 2, 3) + Y * Y * Y;
    if (p.degree(1) < 1 || qq.degree(1) < 1) continue;
    Rational a = q(static_cast<long>(t % 7) - 3, 2);
    MultiPoly lp = p.leading_coefficient(1), lq = qq.leading_coefficient(1);
    if (lp.substitute(0, a).is_zero() || lq.substitute(0, a).is_zero()) continue;
    MultiPoly lhs = resultant(p, qq, 1).substitute(0, a);
    MultiPoly rhs = resultant(p.substitute(0, a), qq.substitute(0, a), 1);
    EXPECT_EQ(lhs, rhs);
  }
}

TEST(Discriminant, Examples) {
  const std::size_t n = 3;
  MultiPoly y = MultiPoly::var(n, 0), b = MultiPoly::var(n, 1), c = MultiPoly::var(n, 2);
  EXPECT_EQ(discriminant(y * y + b * y + c, 0), b * b - MultiPoly::constant(n, 4) * c);
  MultiPoly d = discriminant(X * X + Y * Y - C(1), 1);
  EXPECT_EQ(d.normalized(), (X * X - C(1)).normalized());
  EXPECT_NE(sign_of(d.evaluate({q(9, 10), q(0)})), sign_of(d.evaluate({q(11, 10), q(0)})));
  EXPECT_TRUE(discriminant((Y - C(1)).pow(2), 1).is_zero());
  EXPECT_THROW(discriminant(Y + X, 1), NlcsError);
}

TEST(Discriminant, VanishesExactlyAtDoubleRoots) {
  // (y - x)(y - 1) has a double root exactly at x = 1.
  MultiPoly p = (Y - X) * (Y - C(1));
  MultiPoly d = discriminant(p, 1);
  for (long k = -3; k <= 3; ++k) EXPECT_EQ(d.evaluate({q(k), q(0)}) == 0, k == 1);
}

TEST(Psc, Examples) {
  MultiPoly circle = X * X + Y * Y - C(1);
  auto chain = subresultant_psc(circle, C(2) * Y, 1);
  ASSERT_EQ(chain.size(), 1U);
  EXPECT_EQ(chain[0], resultant(circle, C(2) * Y, 1));
  // Brute-force 3x3 Sylvester determinant: rows [1 0 x^2-1], [2 0 0], [0 2 0].
  EXPECT_EQ(chain[0], C(4) * (X * X - C(1)));
  auto chain2 = subresultant_psc(Y * Y - X, Y - C(1), 1);
  EXPECT_TRUE(chain2[0] == C(1) - X || chain2[0] == X - C(1));
  auto chain3 = subresultant_psc(Y * Y * Y + X, Y * Y - X * Y, 1);
  ASSERT_EQ(chain3.size(), 2U);
  EXPECT_EQ(chain3[0], resultant(Y * Y * Y + X, Y * Y - X * Y, 1));
}

TEST(SturmHabicht, MatchesSturmCount) {
  std::mt19937 rng(21);
  std::uniform_int_distribution<int> coef(-5, 5), deg(1, 6), nroots(0, 4), rnum(-5, 5);
  MultiPoly x = MultiPoly::var(1, 0);
  for (int t = 0; t < 300; ++t) {
    MultiPoly p = MultiPoly::constant(1, 1);
    for (int i = nroots(rng); i > 0; --i) p = p * (x - MultiPoly::constant(1, rnum(rng)));
    int d = deg(rng);
    std::vector<Rational> c(static_cast<std::size_t>(d) + 1);
    for (auto& v : c) v = coef(rng);
    c.back() = t % 2 == 0 ? 1 : -2;
    p = p * MultiPoly::from_upoly(1, 0, UPoly(c));
    if (t % 5 == 0) p = p * (x - MultiPoly::constant(1, 1)).pow(2);
    std::vector<Sign> signs;
    for (const auto& s : sturm_habicht_principal(p, 0)) signs.push_back(sign_of(s.constant_value()));
    int expected = count_real_roots(sturm_sequence(squarefree_part(p.to_upoly(0))));
    EXPECT_EQ(sturm_habicht_count(signs), expected) << p;
  }
}
