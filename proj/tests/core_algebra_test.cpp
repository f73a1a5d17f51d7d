#include <random>

#include <gtest/gtest.h>

#include "kform/bilinear.hpp"
#include "kform/error.hpp"
#include "kform/multi_index.hpp"
#include "kform/parser.hpp"
#include "kform/poly.hpp"
#include "oracle.hpp"

using namespace kform;
using kform::testing::random_gaussian;

namespace {

Poly random_poly(std::mt19937_64& rng) {
  static const std::vector<std::string> vars{"a", "b", "c"};
  std::uniform_int_distribution<int> terms(0, 4), exp(0, 3);
  Poly p;
  for (int t = terms(rng); t > 0; --t) {
    Poly m(random_gaussian(rng));
    for (const auto& v : vars)
      if (int e = exp(rng)) m *= Poly::variable(v, static_cast<unsigned>(e));
    p += m;
  }
  return p;
}

}  // namespace

TEST(GaussianRational, FieldOperations) {
  GaussianRational a(mpq_class(1, 2), mpq_class(3));
  GaussianRational b(mpq_class(-2), mpq_class(1, 3));
  EXPECT_EQ(a * b, GaussianRational(mpq_class(-2), mpq_class(-35, 6)));
  EXPECT_EQ(a * a.inverse(), GaussianRational(1));
  EXPECT_EQ((a / b) * b, a);
  EXPECT_EQ(GaussianRational::imaginary_unit() * GaussianRational::imaginary_unit(), GaussianRational(-1));
  EXPECT_EQ(a.conj(), GaussianRational(mpq_class(1, 2), mpq_class(-3)));
}

TEST(GaussianRational, InverseOfZeroThrows) { EXPECT_THROW((void)GaussianRational().inverse(), Error); }

TEST(GaussianRational, DecimalLiteralsAreExact) {
  EXPECT_EQ(GaussianRational::from_decimal("0.125"), GaussianRational(mpq_class(1, 8)));
  EXPECT_EQ(GaussianRational::from_decimal("3e-2"), GaussianRational(mpq_class(3, 100)));
}

TEST(GaussianRational, TextRoundTrip) {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 50; ++i) {
    GaussianRational z = random_gaussian(rng);
    EXPECT_EQ(parse_poly(z.to_string()), Poly(z)) << z.to_string();
  }
}

TEST(Poly, RingLaws) {
  std::mt19937_64 rng(3);
  for (int i = 0; i < 40; ++i) {
    Poly p = random_poly(rng), q = random_poly(rng), r = random_poly(rng);
    EXPECT_EQ(p * q, q * p);
    EXPECT_EQ(p * (q + r), p * q + p * r);
    EXPECT_EQ((p + q) - q, p);
    EXPECT_TRUE((p - p).is_zero());
  }
}

TEST(Poly, EvaluationIsARingHomomorphism) {
  std::mt19937_64 rng(5);
  for (int i = 0; i < 40; ++i) {
    Poly p = random_poly(rng), q = random_poly(rng);
    std::map<std::string, GaussianRational> at{{"a", random_gaussian(rng)}, {"b", random_gaussian(rng)},
                                               {"c", random_gaussian(rng)}};
    EXPECT_EQ((p * q).evaluate_exact(at), p.evaluate_exact(at) * q.evaluate_exact(at));
    EXPECT_EQ((p + q).evaluate_exact(at), p.evaluate_exact(at) + q.evaluate_exact(at));
  }
}

TEST(Poly, TextRoundTrip) {
  std::mt19937_64 rng(7);
  for (int i = 0; i < 40; ++i) {
    Poly p = random_poly(rng);
    EXPECT_EQ(parse_poly(p.to_string()), p) << p.to_string();
  }
}

TEST(Poly, SubstituteAndCoefficients) {
  Poly p = parse_poly("s^4 + 3*s^2*t + t^2");
  EXPECT_EQ(p.degree("s"), 4u);
  EXPECT_EQ(p.coefficient("s", 2), parse_poly("3*t"));
  EXPECT_EQ(p.substitute("t", parse_poly("-s^2")), parse_poly("-s^4"));
}

TEST(Poly, ExactRootAndDivision) {
  Poly base = parse_poly("a^2 + b^2 + c^2");
  EXPECT_EQ(base.pow(2).exact_root(2), base);
  EXPECT_FALSE(parse_poly("a^2 + b").exact_root(2).has_value());
  EXPECT_EQ((base * parse_poly("a - b")).exact_divide(base), parse_poly("a - b"));
  EXPECT_FALSE(parse_poly("a + 1").exact_divide(parse_poly("b")).has_value());
}

TEST(Poly, ClearDenominators) {
  Poly p = parse_poly("a/2 + b/3");
  EXPECT_EQ(p.clear_denominators(), parse_poly("3*a + 2*b"));
}

TEST(RationalFunction, PolesAreReported) {
  RationalFunction r = parse_rational_function("2/(l^2 - 1)");
  EXPECT_FALSE(r.evaluate_exact({{"l", GaussianRational(1)}}).has_value());
  EXPECT_EQ(*r.evaluate_exact({{"l", GaussianRational(3)}}), GaussianRational(mpq_class(1, 4)));
}

TEST(MultiIndex, SplitIntoHalfAndOddPart) {
  MultiIndex a{2, 2, 5, 6};
  EXPECT_EQ(a.order(), 15);
  EXPECT_EQ(a.odd_count(), 1u);
  EXPECT_EQ(a.half(), (MultiIndex{1, 1, 2, 3}));
  EXPECT_EQ(a.odd_axes(), std::vector<std::size_t>{2});
  EXPECT_EQ(a.lowered(2).raised(2), a);
}

TEST(MultiIndex, Errors) {
  EXPECT_THROW((void)MultiIndex({1, 0}).lowered(1), DimensionError);
  EXPECT_THROW((void)(MultiIndex{1, 0} + MultiIndex{1, 0, 0}), DimensionError);
  EXPECT_THROW((void)MultiIndex::unit(2, 2), DimensionError);
}

TEST(Bilinear, BracketIsAntisymmetricBraceSymmetric) {
  MultiIndex a{2, 1}, b{0, 3};
  EXPECT_EQ(bracket(a, b), -bracket(b, a));
  EXPECT_EQ(brace(a, b), brace(b, a));
  EXPECT_TRUE(bracket(a, a).is_zero());
}

TEST(Bilinear, PartialsCommute) {
  BilinearExpr e = bracket({3, 1, 0}, {0, 2, 1}) + brace({1, 0, 2}, {1, 1, 1});
  for (std::size_t j = 0; j < 3; ++j)
    for (std::size_t k = 0; k < 3; ++k) EXPECT_EQ(partial(partial(e, j), k), partial(partial(e, k), j));
}

TEST(Bilinear, PartialMatchesExponentialOracle) {
  std::mt19937_64 rng(13);
  BilinearExpr e = bracket({2, 1}, {0, 1}) * Coeff(parse_poly("3/2 - i")) + brace({1, 0}, {0, 2});
  for (int s = 0; s < 5; ++s) {
    auto p = kform::testing::random_point(rng, 2);
    for (std::size_t j = 0; j < 2; ++j)
      EXPECT_EQ(kform::testing::value(partial(e, j), p), (p.a[j] + p.b[j]) * kform::testing::value(e, p));
  }
}

TEST(Bilinear, DimensionMismatchThrows) {
  BilinearExpr a(2), b(3);
  EXPECT_THROW(a += b, DimensionError);
  EXPECT_THROW((void)partial(a, 2), DimensionError);
}
