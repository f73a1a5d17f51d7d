// One line per criterion: "PASS <n> <label> (<details>)" or "FAIL ...". Exit status is the
// number of failures.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>

#include "fixtures.hpp"
#include "kform/catalog.hpp"
#include "kform/numeric.hpp"
#include "kform/parser.hpp"
#include "kform/spectral.hpp"
#include "oracle.hpp"

using namespace kform;
namespace kt = kform::testing;

namespace {

constexpr double kCountSeconds = 1.0;
constexpr double kOracleSeconds = 30.0;
constexpr double kEnumerateSeconds = 10.0;
constexpr double kNumericSeconds = 10.0;
constexpr double kNumericTolerance = 1e-8;
constexpr double kControlFloor = 1e-2;
constexpr std::size_t kGaussNodes = 20;
constexpr int kRandomOperators = 200;
constexpr int kRandomSymbols = 50;

struct Check {
  bool ok = true;
  std::ostringstream note;
  void require(bool cond, const std::string& what) {
    if (!cond) {
      ok = false;
      note << what << "; ";
    }
  }
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

int failures = 0;

void report(int id, const char* label, const std::function<void(Check&)>& body) {
  Check c;
  const auto t0 = Clock::now();
  try {
    body(c);
  } catch (const std::exception& e) {
    c.ok = false;
    c.note << "exception: " << e.what() << "; ";
  }
  const double s = seconds_since(t0);
  if (!c.ok) ++failures;
  std::printf("%s %2d %s (%.3f s) %s\n", c.ok ? "PASS" : "FAIL", id, label, s, c.note.str().c_str());
  std::fflush(stdout);
}

ExponentialAdjoint plain_adjoint(const AnyOperator& op) {
  return exponential_adjoint(spectral_names(header_of(op)), SymbolSign::Plus);
}

SubstitutedForm substituted(const AnyOperator& op, const ExponentialAdjoint& adj) {
  return substitute_exponential(assemble(decompose(op)), adj);
}

void counting(Check& c) {
  const auto t0 = Clock::now();
  c.require(count_forms(catalog_operator("wave")) == 1, "wave count");
  c.require(count_forms(catalog_operator("example2")) == 12, "example2 count");
  c.require(count_forms(catalog_operator("biharmonic")) == 8, "biharmonic count");
  c.require(sigma_count({2, 2, 4}) == 12, "sigma(2,2,4)");
  c.require(sigma_count({2, 2, 5, 6}) == 420, "sigma(2,2,5,6)");
  c.require(seconds_since(t0) < kCountSeconds, "too slow");
}

void oracle_soundness(Check& c) {
  const auto t0 = Clock::now();
  std::mt19937_64 rng(20240601);
  kt::RandomOperatorSpec spec{4, 6, 6};
  int bad = 0;
  for (int i = 0; i < kRandomOperators; ++i) {
    ScalarPDO op = kt::random_operator(rng, spec);
    DivergenceDecomposition d = decompose(op);
    if (!verify_divergence(d, bilinear_rhs(op)).pass || !kt::oracle_agrees(d, op, rng, 1)) ++bad;
  }
  c.note << kRandomOperators - bad << "/" << kRandomOperators << " verified; ";
  c.require(bad == 0, "oracle mismatch");
  c.require(seconds_since(t0) < kOracleSeconds, "too slow");
}

void enumeration(Check& c) {
  const auto t0 = Clock::now();
  AnyOperator op = catalog_operator("example2");
  auto plans = enumerate_plans(op);
  c.require(plans.size() == 12, "plan count " + std::to_string(plans.size()));
  std::vector<FundamentalForm> forms;
  const BilinearExpr rhs = bilinear_rhs(op);
  for (const auto& p : plans) {
    DivergenceDecomposition d = decompose(op, p);
    c.require(verify_divergence(d, rhs).pass, "unverified plan");
    forms.push_back(assemble(d));
  }
  int pairs = 0, equivalent = 0;
  for (std::size_t i = 0; i < forms.size(); ++i)
    for (std::size_t j = i + 1; j < forms.size(); ++j) {
      ++pairs;
      equivalent += forms_equivalent(forms[i], forms[j]);
    }
  c.note << equivalent << "/" << pairs << " pairs equivalent; ";
  c.require(pairs == 66 && equivalent == 66, "equivalence");
  c.require(seconds_since(t0) < kEnumerateSeconds, "too slow");
}

void fixtures(Check& c) {
  c.require(decompose(catalog_operator("wave")).fluxes == kt::example1_fluxes(), "wave fluxes");
  c.require(decompose(catalog_operator("example2")).fluxes == kt::example2_fluxes(), "example2 fluxes");
  AnyOperator stokes = catalog_operator("stokes");
  DivergenceDecomposition d = decompose(stokes);
  auto slipped = kt::stokes_fluxes(true);
  for (std::size_t j = 0; j < 3; ++j) c.require(d.fluxes[j] == slipped[j], "stokes flux " + std::to_string(j));
  c.require(d.fluxes[3] == kt::stokes_fluxes(false)[3], "stokes J3 with d_z");
  c.require(d.fluxes[3] != slipped[3], "J3 with d_x should not match");
  c.require(verify_divergence(d, system_bilinear_rhs(std::get<MatrixPDO>(stokes))).pass, "stokes verification");
}

void wave_relations(Check& c) {
  AnyOperator op = catalog_operator("wave");
  Box box = parse_box("x=0:l,t=0:T");
  for (bool plus : {false, true}) {
    ExponentialAdjoint adj = plain_adjoint(op);
    std::map<std::string, Poly> sub{{"s_x", parse_poly("k")}, {"s_t", parse_poly(plus ? "k" : "-k")}};
    for (auto& k : adj.wavevector) k = k.substitute(sub);
    GlobalRelation g = global_relation(substituted(op, adj), box);
    auto want = kt::wave_relation(plus);
    bool same = g.terms.size() == want.size() && std::is_permutation(g.terms.begin(), g.terms.end(), want.begin());
    c.require(same, plus ? "branch x+t" : "branch x-t");
  }
}

void constraint(Check& c) {
  ConstraintVariety v = adjoint_constraint(std::get<ScalarPDO>(catalog_operator("example2")));
  const Poly target = parse_poly("s_x^2*s_y^2*(1 - s_z^2) - s_z^2");
  bool unit = false;
  for (const char* u : {"1", "-1", "i", "-i"}) unit = unit || v.polynomial == parse_poly(u) * target;
  c.require(unit, "constraint " + v.polynomial.to_string());
  std::map<std::string, RationalFunction> sub{{"s_x", parse_rational_function("2/(l^2 - 1)")},
                                              {"s_y", parse_rational_function("l")},
                                              {"s_z", parse_rational_function("2*l/(l^2 + 1)")}};
  ParameterizationCheck ok = check_parameterization(v, sub, "l", 20);
  c.require(ok.pass && ok.samples.size() == 20, "parameterization");
  sub["s_z"] = parse_rational_function("2*l/(l^2 + 2)");
  c.require(!check_parameterization(v, sub, "l", 20).pass, "perturbed substitution accepted");
}

void biharmonic(Check& c) {
  AnyOperator op = catalog_operator("biharmonic");
  ExponentialAdjoint adj = plain_adjoint(op);
  SubstitutedForm f = substituted(op, adj);
  QuadricRule rule{"s_z", parse_poly("-s_x^2 - s_y^2")};
  auto reduce = [&](const TraceSum& t) {
    return t.map_coefficients([&](const Poly& p) { return reduce_mod_quadric(p, rule); });
  };
  const TraceSum target = reduce(apply_weighted(op, adj));
  f.fluxes = kt::biharmonic_reference(false);
  c.require(reduce(exterior_derivative(f)) == target, "reference fluxes");
  f.fluxes = kt::biharmonic_reference(true);
  TraceSum slip = reduce(exterior_derivative(f)) - target;
  c.note << "slipped coefficients leave " << slip.terms().size() << " residual traces; ";
}

void spinor(Check& c) {
  SpinorTriple s = spinor_isotropic(Poly::variable("xi1"), Poly::variable("xi2"));
  c.require(isotropy_defect(s).is_zero(), "k.k");
  for (const auto& d : parity_defect(s)) c.require(d.is_zero(), "k(-xi)");
  c.require(verify_stokes_adjoint(std::get<MatrixPDO>(catalog_operator("stokes")), s).pass, "adjoint");
}

void numeric(Check& c) {
  const auto t0 = Clock::now();
  for (const auto& name : numeric_case_names()) {
    CaseReport r = run_case(numeric_case(name), kGaussNodes);
    c.note << name << " " << r.boundary.relative() << "; ";
    c.require(r.boundary.relative() <= kNumericTolerance, name);
  }
  NumericCase wrong = numeric_case("wave");
  wrong.solution.fields = {parse_expr("x^4", wrong.solution.axes)};
  SubstitutedForm f = substitute_exponential(assemble(decompose(wrong.op)), wrong.adjoint);
  double control = boundary_residual(f, wrong.point, wrong.solution, wrong.box, QuadratureSpec::uniform(2, kGaussNodes))
                       .relative();
  c.note << "control " << control << "; ";
  c.require(control >= kControlFloor, "control not detected");
  c.require(seconds_since(t0) < kNumericSeconds, "too slow");
}

void representation(Check& c) {
  std::mt19937_64 rng(7);
  int bad = 0;
  for (int i = 0; i < kRandomSymbols; ++i) {
    ScalarPDO op = kt::random_operator(rng);
    if (op.terms().empty()) continue;
    IntegralRepresentation r = integral_representation(op);
    std::vector<GaussianRational> k;
    std::map<std::string, GaussianRational> at;
    for (std::size_t j = 0; j < op.dimension(); ++j) {
      k.push_back(kt::random_gaussian(rng));
      at[r.spectral[j]] = k.back();
    }
    bad += r.denominator.evaluate_exact(at) != kt::symbol_value(op, k);
  }
  c.require(bad == 0, std::to_string(bad) + " denominators differ");
  std::string tex = to_latex(integral_representation(std::get<ScalarPDO>(catalog_operator("wave"))));
  for (const char* piece : {"\\frac{-1}{(2\\pi)^{2}}", "\\int_{\\mathbb{R}^{2}}", "\\int_{\\partial\\Omega}", "\\eta(y,k)"})
    c.require(tex.find(piece) != std::string::npos, std::string("missing ") + piece);
}

}  // namespace

int main() {
  report(1, "counting", counting);
  report(2, "oracle soundness", oracle_soundness);
  report(3, "enumeration completeness", enumeration);
  report(4, "reference fluxes", fixtures);
  report(5, "wave global relations", wave_relations);
  report(6, "constraint and parameterization", constraint);
  report(7, "biharmonic closure", biharmonic);
  report(8, "spinor identities", spinor);
  report(9, "numeric global relations", numeric);
  report(10, "integral representation", representation);
  return failures;
}
