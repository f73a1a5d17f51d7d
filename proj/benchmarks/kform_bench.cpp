#include <benchmark/benchmark.h>

#include "kform/catalog.hpp"
#include "kform/numeric.hpp"
#include "kform/parser.hpp"

using namespace kform;

static void BM_DecomposeCatalog(benchmark::State& state) {
  static const char* names[] = {"wave", "example2", "biharmonic", "stokes"};
  AnyOperator op = catalog_operator(names[state.range(0)]);
  for (auto _ : state) benchmark::DoNotOptimize(decompose(op));
  state.SetLabel(names[state.range(0)]);
}
BENCHMARK(BM_DecomposeCatalog)->DenseRange(0, 3);

static void BM_DecomposeHighOrder(benchmark::State& state) {
  AnyOperator op = parse_operator("axes x,y,z,w; Dx^3*Dy*Dz^5*Dw + Dx^2*Dy^4*Dw^3 + 2*Dz^6");
  for (auto _ : state) benchmark::DoNotOptimize(decompose(op));
}
BENCHMARK(BM_DecomposeHighOrder);

static void BM_EnumerateAndCompare(benchmark::State& state) {
  AnyOperator op = catalog_operator("example2");
  for (auto _ : state) {
    std::vector<FundamentalForm> forms;
    for (const auto& p : enumerate_plans(op)) forms.push_back(assemble(decompose(op, p)));
    int n = 0;
    for (std::size_t i = 0; i < forms.size(); ++i)
      for (std::size_t j = i + 1; j < forms.size(); ++j) n += forms_equivalent(forms[i], forms[j]);
    benchmark::DoNotOptimize(n);
  }
}
BENCHMARK(BM_EnumerateAndCompare)->Unit(benchmark::kMillisecond);

static void BM_BoundaryResidual(benchmark::State& state) {
  NumericCase c = numeric_case("biharmonic");
  SubstitutedForm f = substitute_exponential(assemble(decompose(c.op)), c.adjoint);
  auto quad = QuadratureSpec::uniform(3, static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(boundary_residual(f, c.point, c.solution, c.box, quad));
}
BENCHMARK(BM_BoundaryResidual)->Arg(5)->Arg(10)->Arg(20)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
