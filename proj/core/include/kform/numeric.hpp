#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "kform/decomposition.hpp"
#include "kform/spectral.hpp"

namespace kform {

using Complex = std::complex<double>;

/// Expression tree over the coordinate axes with complex constants and exact
/// symbolic differentiation. Nodes are immutable and shared.
class Expr {
 public:
  enum class Kind { Const, Var, Add, Mul, Pow, Exp, Sin, Cos, Neg };

  static Expr constant(Complex c);
  static Expr variable(std::size_t axis);
  static Expr exp(const Expr& a);
  static Expr sin(const Expr& a);
  static Expr cos(const Expr& a);
  Expr pow(unsigned e) const;

  friend Expr operator+(const Expr& a, const Expr& b);
  friend Expr operator-(const Expr& a, const Expr& b);
  friend Expr operator*(const Expr& a, const Expr& b);
  Expr operator-() const;

  Kind kind() const;
  bool is_zero() const;

  Expr derivative(std::size_t axis) const;
  Expr derivative(const MultiIndex& alpha) const;
  Complex evaluate(const std::vector<double>& x) const;
  std::string to_string(const std::vector<std::string>& axes) const;

 struct Node;

 private:
  explicit Expr(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;
};

/// Parses sums and products of axis names, complex literals (`2i`, `i`), named
/// constants, `^<int>`, exp(...), sin(...), cos(...). Division only by constants.
Expr parse_expr(std::string_view src, const std::vector<std::string>& axes,
                const std::map<std::string, Complex>& constants = {});

/// One expression per field, over the operator's axes.
struct ManufacturedSolution {
  std::string label;
  std::vector<std::string> axes;
  std::vector<Expr> fields;
};

struct Interval {
  double lo = 0;
  double hi = 1;
};

/// Gauss-Legendre node count per axis.
struct QuadratureSpec {
  std::vector<std::size_t> nodes;

  static QuadratureSpec uniform(std::size_t dimension, std::size_t count) {
    return {std::vector<std::size_t>(dimension, count)};
  }
};

struct FaceIntegral {
  std::size_t axis = 0;
  FaceEnd end = FaceEnd::Lo;
  Complex value;
};

struct BoundaryResidual {
  Complex residual;
  /// Largest single face integral in magnitude.
  double scale = 0;
  std::vector<FaceIntegral> faces;

  double relative() const { return std::abs(residual) / std::max(scale, 1.0); }
};

/// Sum over the faces of the box of the oriented integral of the substituted form.
/// `point` binds every spectral variable and parameter occurring in the form.
BoundaryResidual boundary_residual(const SubstitutedForm& f, const std::map<std::string, Complex>& point,
                                   const ManufacturedSolution& q, const std::vector<Interval>& box,
                                   const QuadratureSpec& quad);

/// max |(L q)_i| over seeded random points of the box.
double pde_residual(const AnyOperator& op, const std::map<std::string, Complex>& params,
                    const ManufacturedSolution& q, const std::vector<Interval>& box, std::size_t points = 50,
                    std::uint64_t seed = 7);

/// max |L^dagger q~| / |weight| at the point.
double adjoint_defect(const AnyOperator& op, const ExponentialAdjoint& adj, const std::map<std::string, Complex>& point);

/// Verified solutions for wave, heat, biharmonic and stokes.
std::vector<ManufacturedSolution> builtin_solutions(const std::string& tag);

/// Everything needed to check one global relation numerically.
struct NumericCase {
  std::string name;
  AnyOperator op;
  ManufacturedSolution solution;
  ExponentialAdjoint adjoint;
  std::map<std::string, Complex> point;
  std::vector<Interval> box;
};

NumericCase numeric_case(const std::string& tag);
std::vector<std::string> numeric_case_names();

struct CaseReport {
  double pde = 0;
  double adjoint = 0;
  BoundaryResidual boundary;
};

/// Decomposes along `plan`, substitutes the case adjoint and integrates over the box.
/// `seed` drives the PDE pre-check points.
CaseReport run_case(const NumericCase& c, const DecompositionPlan& plan, std::size_t nodes, std::uint64_t seed = 7);
CaseReport run_case(const NumericCase& c, std::size_t nodes, std::uint64_t seed = 7);

}  // namespace kform
