#pragma once

#include <array>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "kform/forms.hpp"
#include "kform/operator.hpp"
#include "kform/poly.hpp"

namespace kform {

/// d^deriv of field `field` (the q side of a bilinear term).
struct Trace {
  std::size_t field = 0;
  MultiIndex deriv;

  friend auto operator<=>(const Trace&, const Trace&) = default;
  friend bool operator==(const Trace&, const Trace&) = default;
};

/// Finite sum  sum coeff * d^mu q_field  with polynomial coefficients; no zero entries.
class TraceSum {
 public:
  using TermMap = std::map<Trace, SpectralPoly>;

  void add(const Trace& t, const SpectralPoly& c);
  const TermMap& terms() const noexcept { return terms_; }
  bool is_zero() const noexcept { return terms_.empty(); }

  TraceSum& operator+=(const TraceSum& o);
  TraceSum& operator-=(const TraceSum& o);
  friend TraceSum operator+(TraceSum a, const TraceSum& b) { return a += b; }
  friend TraceSum operator-(TraceSum a, const TraceSum& b) { return a -= b; }
  friend bool operator==(const TraceSum&, const TraceSum&) = default;

  /// Applies `f` to every coefficient, dropping zeros.
  template <class F>
  TraceSum map_coefficients(F f) const {
    TraceSum out;
    for (const auto& [t, c] : terms_) out.add(t, f(c));
    return out;
  }

 private:
  TermMap terms_;
};

std::string trace_name(const Trace& t, const Naming& naming);
std::string to_text(const TraceSum& s, const Naming& naming);
std::string to_latex(const TraceSum& s, const Naming& naming);

/// Reads a sum such as "q_xxx + i*s_x^3*q - 2*s_x*s_y*q_x". Identifiers `<field>` or
/// `<field>_<axis letters>` name traces (axis names must be single characters);
/// every other identifier is a coefficient variable. Each term must hold exactly one trace.
TraceSum parse_trace_sum(std::string_view src, const Naming& naming);

/// q~_i = A_i exp(i sum_j kappa_j x_j).
struct ExponentialAdjoint {
  std::vector<SpectralPoly> amplitudes;
  std::vector<SpectralPoly> wavevector;

  /// (i kappa)^nu.
  SpectralPoly derivative_factor(const MultiIndex& nu) const;
};

/// Scalar adjoint with kappa_j = +/- names[j] (sign Plus: exp(+i s.x)).
ExponentialAdjoint exponential_adjoint(const std::vector<std::string>& names, SymbolSign sign,
                                       std::size_t fields = 1);

/// Fundamental form after q~ -> A exp(i kappa.x); the common weight is implicit.
struct SubstitutedForm {
  std::size_t dimension = 0;
  Naming naming;
  ExponentialAdjoint adjoint;
  std::vector<TraceSum> fluxes;
};

/// Throws DomainError if a spectral variable collides with an axis name.
SubstitutedForm substitute_exponential(const FundamentalForm& f, const ExponentialAdjoint& adj);

/// Coefficient of weight * dx^1 ^ ... ^ dx^n in d eta; derivatives act on traces and weight.
TraceSum exterior_derivative(const SubstitutedForm& f);

/// weight^{-1} * sum_ij q~_i L_ij q_j, as traces of q.
TraceSum apply_weighted(const AnyOperator& op, const ExponentialAdjoint& adj);
/// Component j of L^dagger q~ divided by the weight.
std::vector<SpectralPoly> adjoint_residual(const AnyOperator& op, const ExponentialAdjoint& adj);
/// weight^{-1} (q~ L q - q L^dagger q~) for the given adjoint.
TraceSum substituted_rhs(const AnyOperator& op, const ExponentialAdjoint& adj);

/// s_var^2 = rhs.
struct QuadricRule {
  std::string var;
  SpectralPoly rhs;
};

/// Rewrites s^{2a+b} -> rhs^a s^b so the result has degree <= 1 in `var`.
SpectralPoly reduce_mod_quadric(const SpectralPoly& p, const QuadricRule& rule);

/// P(s) = 0 with P = symbol(L^dagger, +i s), denominators cleared.
struct ConstraintVariety {
  std::vector<std::string> names;
  SpectralPoly polynomial;
  /// P (up to a unit) is reduced^k for k >= 2, e.g. (sum s^2)^2.
  std::optional<SpectralPoly> reduced;
  /// s_k^2 = R when the (reduced) polynomial is linear in s_k^2 with constant leading coefficient.
  std::optional<QuadricRule> solved;
};

ConstraintVariety adjoint_constraint(const ScalarPDO& op, const std::vector<std::string>& names);
ConstraintVariety adjoint_constraint(const ScalarPDO& op);

struct ParameterizationCheck {
  bool pass = false;
  std::vector<GaussianRational> samples;
  std::vector<GaussianRational> poles;
  std::optional<GaussianRational> witness;
  GaussianRational witness_value;
};

/// Evaluates the constraint under s_i -> r_i(parameter) at exact rational samples,
/// candidates 1 and -1 first, then seeded random rationals; poles are skipped.
ParameterizationCheck check_parameterization(const ConstraintVariety& c,
                                             const std::map<std::string, RationalFunction>& substitution,
                                             const std::string& parameter, std::size_t samples = 20,
                                             std::uint64_t seed = 1);

struct BoxInterval {
  std::string axis;
  SpectralPoly lo;
  SpectralPoly hi;
};

using Box = std::vector<BoxInterval>;

/// "x=0:l,t=0:T".
Box parse_box(std::string_view src);

enum class FaceEnd { Lo, Hi };

struct RelationTerm {
  std::size_t axis = 0;
  FaceEnd end = FaceEnd::Lo;
  int sign = 1;
  SpectralPoly coeff;
  /// Exponent of the weight on the face: i * kappa_axis * endpoint.
  SpectralPoly weight;
  Trace trace;

  friend bool operator==(const RelationTerm&, const RelationTerm&) = default;
};

/// sum over terms of sign * coeff * exp(weight) * T[trace] = 0, where T[trace] is the
/// integral over the face of exp(i sum_{k != axis} kappa_k x_k) times the trace.
struct GlobalRelation {
  Box box;
  Naming naming;
  std::vector<SpectralPoly> wavevector;
  std::vector<RelationTerm> terms;
};

GlobalRelation global_relation(const SubstitutedForm& f, const Box& box);
std::string to_latex(const GlobalRelation& g);
std::string to_latex(const SubstitutedForm& f);

struct IntegralRepresentation {
  std::size_t dimension = 0;
  std::vector<std::string> axes;
  std::vector<std::string> spectral;
  /// L(i k_1, ..., i k_n).
  SpectralPoly denominator;
  /// Fundamental form with q~ = exp(-i k.x).
  SubstitutedForm eta;
};

/// q(x) = -(2 pi)^{-n} int dk int_{boundary} exp(i k.x) eta(y,k) / L(ik).
/// Throws DomainError when the symbol vanishes identically.
IntegralRepresentation integral_representation(const ScalarPDO& op, const std::string& prefix = "k_");
std::string to_latex(const IntegralRepresentation& r);

/// k(xi) = (xi1^2 - xi2^2, i(xi1^2 + xi2^2), -2 xi1 xi2) with free xi3.
struct SpinorTriple {
  SpectralPoly xi1, xi2, xi3;
  std::array<SpectralPoly, 3> k;
};

SpinorTriple spinor_isotropic(const SpectralPoly& xi1, const SpectralPoly& xi2,
                              const SpectralPoly& xi3 = Poly::variable("xi3"));
/// k.k
SpectralPoly isotropy_defect(const SpinorTriple& s);
/// k(-xi) - k(xi), componentwise; needs symbolic xi1, xi2.
std::array<SpectralPoly, 3> parity_defect(const SpinorTriple& s);

/// phi~ = (k, xi3) exp(-i k.x + i xi3 t) on a system with axes named x, y, z, t.
ExponentialAdjoint stokes_adjoint(const MatrixPDO& op, const SpinorTriple& s);

struct AdjointCheck {
  bool pass = false;
  std::vector<SpectralPoly> residual;
};

AdjointCheck verify_stokes_adjoint(const MatrixPDO& op, const SpinorTriple& s);

}  // namespace kform
