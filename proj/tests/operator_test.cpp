#include <random>

#include <gtest/gtest.h>

#include "kform/catalog.hpp"
#include "kform/error.hpp"
#include "kform/operator.hpp"
#include "kform/parser.hpp"
#include "oracle.hpp"

using namespace kform;
namespace kt = kform::testing;

TEST(Parser, ReadsParamsAndAxes) {
  ScalarPDO op = parse_scalar_operator("params nu; axes x,t; Dt - nu*Dx^2 + 3/2");
  EXPECT_EQ(op.header().params, std::vector<std::string>{"nu"});
  EXPECT_EQ(op.header().axes, (std::vector<std::string>{"x", "t"}));
  EXPECT_EQ(op.terms().size(), 3u);
  EXPECT_EQ(op.terms().at(MultiIndex{2, 0}), parse_poly("-nu"));
  EXPECT_EQ(op.terms().at(MultiIndex{0, 0}), parse_poly("3/2"));
}

TEST(Parser, ExpandsProductsOfSums) {
  ScalarPDO a = parse_scalar_operator("axes x,y; (Dx + Dy)^2");
  ScalarPDO b = parse_scalar_operator("axes x,y; Dx^2 + 2*Dx*Dy + Dy^2");
  EXPECT_EQ(a, b);
}

TEST(Parser, PrintParseRoundTrip) {
  std::mt19937_64 rng(21);
  for (int i = 0; i < 100; ++i) {
    ScalarPDO op = kt::random_operator(rng);
    EXPECT_EQ(parse_scalar_operator(print_operator(op)), op) << print_operator(op);
  }
  for (const auto& name : catalog_names()) {
    AnyOperator op = catalog_operator(name);
    EXPECT_EQ(parse_operator(print_operator(op)), op) << name;
  }
}

TEST(Parser, ErrorsCarryPositionAndExpectations) {
  try {
    (void)parse_operator("axes x,t; Dt^2 - Dq");
    FAIL() << "expected a parse error";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.position(), 17u);
  }
  EXPECT_THROW((void)parse_operator("axes x,x; Dx"), ParseError);
  EXPECT_THROW((void)parse_operator("axes x,t; Dt^0"), ParseError);
  EXPECT_THROW((void)parse_operator("axes x; Dx +"), ParseError);
  EXPECT_THROW((void)parse_operator("Dx"), ParseError);
  EXPECT_THROW((void)parse_operator("{\"axes\": [\"x\"]"), ParseError);
}

TEST(Parser, MatrixOperators) {
  MatrixPDO m = parse_matrix_operator(
      R"({"axes": ["x", "t"], "params": [], "fields": ["u", "v"], "entries": [["Dt", "Dx"], ["Dx", "0"]]})");
  EXPECT_EQ(m.size(), 2u);
  EXPECT_TRUE(m.entry(1, 1).is_zero());
  EXPECT_THROW((void)parse_matrix_operator(R"({"axes": ["x"], "params": [], "fields": ["u"], "entries": [["Dx", "1"]]})"),
               ParseError);
}

TEST(Operator, AdjointIsAnInvolution) {
  std::mt19937_64 rng(22);
  for (int i = 0; i < 100; ++i) {
    ScalarPDO op = kt::random_operator(rng);
    EXPECT_EQ(adjoint(adjoint(op)), op);
  }
  MatrixPDO m = std::get<MatrixPDO>(catalog_operator("stokes"));
  EXPECT_EQ(adjoint(adjoint(m)), m);
}

TEST(Operator, StokesAdjointNegatesFirstOrderBorder) {
  MatrixPDO m = std::get<MatrixPDO>(catalog_operator("stokes"));
  MatrixPDO a = adjoint(m);
  const OperatorHeader& h = m.header();
  EXPECT_EQ(a.entry(0, 3), parse_operator_expression("-Dx", h));
  EXPECT_EQ(a.entry(3, 0), parse_operator_expression("-Dx", h));
  EXPECT_EQ(a.entry(0, 0), parse_operator_expression("-Dt - nu*(Dx^2 + Dy^2 + Dz^2)", h));
}

TEST(Operator, SymbolOfAdjointFlipsSign) {
  std::mt19937_64 rng(23);
  for (int i = 0; i < 50; ++i) {
    ScalarPDO op = kt::random_operator(rng);
    auto names = spectral_names(op.header());
    EXPECT_EQ(symbol(adjoint(op), SymbolSign::Plus, names), symbol(op, SymbolSign::Minus, names));
  }
}

TEST(Operator, EvenOddSplit) {
  std::mt19937_64 rng(24);
  for (int i = 0; i < 50; ++i) {
    ScalarPDO op = kt::random_operator(rng);
    auto [even, odd] = even_odd_split(op);
    EXPECT_EQ(even + odd, op);
    EXPECT_EQ(adjoint(even), even);
    EXPECT_EQ(adjoint(odd), -odd);
  }
  auto [e, o] = even_odd_split(parse_scalar_operator("axes x,t; Dt - Dx^2"));
  EXPECT_EQ(e, parse_scalar_operator("axes x,t; -Dx^2"));
  EXPECT_EQ(o, parse_scalar_operator("axes x,t; Dt"));
}

TEST(Operator, ConcomitantMatchesDirectExpansion) {
  std::mt19937_64 rng(25);
  for (int i = 0; i < 100; ++i) {
    ScalarPDO op = kt::random_operator(rng);
    BilinearExpr rhs = bilinear_rhs(op);
    for (int s = 0; s < 2; ++s) {
      auto p = kt::random_point(rng, op.dimension());
      EXPECT_EQ(kt::value(rhs, p), kt::concomitant_value(op, p));
    }
  }
}

TEST(Operator, WaveConcomitant) {
  ScalarPDO wave = parse_scalar_operator("axes x,t; Dt^2 - Dx^2");
  EXPECT_EQ(bilinear_rhs(wave), bracket({0, 2}, {0, 0}) - bracket({2, 0}, {0, 0}));
  ScalarPDO helmholtz = parse_scalar_operator("axes x,y; Dx^2 + Dy^2 + 7");
  EXPECT_EQ(bilinear_rhs(helmholtz), bilinear_rhs(parse_scalar_operator("axes x,y; Dx^2 + Dy^2")));
}

TEST(Operator, SystemConcomitant) {
  MatrixPDO one = parse_matrix_operator(
      R"({"axes": ["x", "t"], "params": [], "fields": ["u"], "entries": [["Dt^2 - Dx^2"]]})");
  EXPECT_EQ(system_bilinear_rhs(one), bilinear_rhs(parse_scalar_operator("axes x,t; Dt^2 - Dx^2")));

  std::mt19937_64 rng(26);
  AnyOperator stokes = catalog_operator("stokes");
  BilinearExpr rhs = bilinear_rhs(stokes);
  for (int s = 0; s < 3; ++s) {
    auto p = kt::random_point(rng, 4, 4, {"nu"});
    EXPECT_EQ(kt::value(rhs, p), kt::concomitant_value(stokes, p));
  }
}
