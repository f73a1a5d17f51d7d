#include <gtest/gtest.h>

#include "fixtures.hpp"
#include "kform/catalog.hpp"
#include "kform/error.hpp"
#include "kform/forms.hpp"
#include "kform/parser.hpp"

using namespace kform;
namespace kt = kform::testing;

TEST(Forms, ExteriorDerivativeIsTheConcomitant) {
  for (const auto& name : catalog_names()) {
    AnyOperator op = catalog_operator(name);
    FundamentalForm f = assemble(decompose(op));
    EXPECT_EQ(exterior_derivative(f), bilinear_rhs(op)) << name;
  }
}

TEST(Forms, AssembleRefusesUnverifiedInput) {
  DivergenceDecomposition d = decompose(catalog_operator("wave"));
  d.verified = false;
  EXPECT_THROW((void)assemble(d), VerificationError);
}

TEST(Forms, OrientationAlternates) {
  EXPECT_EQ(FundamentalForm::orientation_sign(0), 1);
  EXPECT_EQ(FundamentalForm::orientation_sign(1), -1);
  EXPECT_EQ(FundamentalForm::orientation_sign(2), 1);
  EXPECT_EQ(FundamentalForm::orientation_sign(3), -1);
}

TEST(Forms, AllPlansAreEquivalent) {
  for (const char* name : {"example2", "biharmonic"}) {
    AnyOperator op = catalog_operator(name);
    auto plans = enumerate_plans(op);
    FundamentalForm first = assemble(decompose(op, plans.front()));
    for (const auto& p : plans) EXPECT_TRUE(forms_equivalent(first, assemble(decompose(op, p))));
  }
}

TEST(Forms, AddingACurlKeepsEquivalence) {
  FundamentalForm f = assemble(decompose(catalog_operator("example2")));
  FundamentalForm g = f;
  // (d_y psi, -d_x psi, 0) is divergence free for any psi.
  BilinearExpr psi = bracket({1, 0, 3}, {0, 2, 0});
  g.fluxes[0] += partial(psi, 1);
  g.fluxes[1] -= partial(psi, 0);
  EXPECT_TRUE(forms_equivalent(f, g));
  g.fluxes[2] += psi;
  EXPECT_FALSE(forms_equivalent(f, g));
}

TEST(Forms, DimensionMismatch) {
  FundamentalForm a = assemble(decompose(catalog_operator("wave")));
  FundamentalForm b = assemble(decompose(catalog_operator("example2")));
  EXPECT_THROW((void)forms_equivalent(a, b), DimensionError);
}

TEST(Forms, LatexHasHatsAndSigns) {
  FundamentalForm f = assemble(decompose(catalog_operator("wave")));
  std::string tex = to_latex(f);
  EXPECT_EQ(tex.rfind("\\eta = ", 0), 0u);
  EXPECT_NE(tex.find("\\widehat{dx} \\wedge dt"), std::string::npos);
  EXPECT_NE(tex.find(" - \\left("), std::string::npos);
  EXPECT_NE(tex.find("dx \\wedge \\widehat{dt}"), std::string::npos);
}

TEST(Forms, WaveFormReadsNaturallyInTimeFirstOrder) {
  // eta = (qt q_t - q qt_t) dx + (qt q_x - q qt_x) dt needs the axes ordered (t, x).
  FundamentalForm f = assemble(decompose(parse_operator("axes t,x; Dt^2 - Dx^2")));
  Naming n{{"t", "x"}, {}};
  EXPECT_EQ(FundamentalForm::orientation_sign(0) * f.fluxes[0], kt::parse_bilinear("qt*q_t - q*qt_t", n));
  EXPECT_EQ(FundamentalForm::orientation_sign(1) * f.fluxes[1], kt::parse_bilinear("qt*q_x - q*qt_x", n));
}
