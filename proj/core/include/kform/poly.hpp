#pragma once

#include <complex>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "kform/gaussian.hpp"

namespace kform {

/// Power product of named commuting variables, sorted by name, exponents > 0.
using Monomial = std::vector<std::pair<std::string, unsigned>>;

Monomial monomial_product(const Monomial& a, const Monomial& b);
unsigned monomial_degree(const Monomial& m);
/// Graded-lexicographic comparison (higher total degree first); used for leading terms.
bool monomial_graded_less(const Monomial& a, const Monomial& b);

/// Sparse multivariate polynomial over the Gaussian rationals.
///
/// Serves both as the coefficient ring of operators (named parameters such as
/// `nu`) and as the ring of spectral polynomials (variables `s_x`, `k_t`,
/// `xi1`, ...). No zero coefficient is ever stored.
class Poly {
 public:
  using TermMap = std::map<Monomial, GaussianRational>;

  Poly() = default;
  Poly(GaussianRational c);  // NOLINT(google-explicit-constructor)
  Poly(long c) : Poly(GaussianRational(c)) {}  // NOLINT(google-explicit-constructor)

  static Poly variable(const std::string& name, unsigned exponent = 1);
  static Poly imaginary_unit() { return Poly(GaussianRational::imaginary_unit()); }
  static Poly term(Monomial m, GaussianRational c);

  const TermMap& terms() const noexcept { return terms_; }
  std::size_t size() const noexcept { return terms_.size(); }
  bool is_zero() const noexcept { return terms_.empty(); }
  bool is_constant() const noexcept;
  /// Value of a constant polynomial; nullopt if any variable occurs.
  std::optional<GaussianRational> constant_value() const;

  std::set<std::string> variables() const;
  unsigned degree(const std::string& var) const;
  unsigned total_degree() const;
  /// Coefficient of var^d, as a polynomial in the remaining variables.
  Poly coefficient(const std::string& var, unsigned d) const;

  Poly& operator+=(const Poly& o);
  Poly& operator-=(const Poly& o);
  Poly& operator*=(const Poly& o);
  Poly& operator*=(const GaussianRational& c);
  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
  friend Poly operator*(const Poly& a, const Poly& b);
  Poly operator-() const;
  friend bool operator==(const Poly& a, const Poly& b) { return a.terms_ == b.terms_; }

  Poly pow(unsigned e) const;
  Poly substitute(const std::string& var, const Poly& value) const;
  Poly substitute(const std::map<std::string, Poly>& values) const;

  std::complex<double> evaluate(const std::map<std::string, std::complex<double>>& at) const;
  GaussianRational evaluate_exact(const std::map<std::string, GaussianRational>& at) const;

  /// Leading monomial/coefficient under the graded-lex order.
  std::pair<Monomial, GaussianRational> leading_term() const;
  /// Exact division by a polynomial whose quotient has no remainder; nullopt otherwise.
  std::optional<Poly> exact_divide(const Poly& divisor) const;
  /// Exact k-th root if this polynomial is the k-th power of another (leading coefficient
  /// must be a perfect k-th power in Q or the polynomial must be monic).
  std::optional<Poly> exact_root(unsigned k) const;
  /// Multiply through by the lcm of all rational denominators.
  Poly clear_denominators() const;

  std::string to_string() const;
  std::string to_latex() const;

 private:
  void add_term(const Monomial& m, const GaussianRational& c);
  TermMap terms_;
};

using Coeff = Poly;
using SpectralPoly = Poly;

/// Quotient num/den of two polynomials, kept unreduced.
struct RationalFunction {
  Poly num;
  Poly den{1};

  RationalFunction() = default;
  RationalFunction(Poly n, Poly d = Poly(1)) : num(std::move(n)), den(std::move(d)) {}  // NOLINT

  friend RationalFunction operator+(const RationalFunction& a, const RationalFunction& b) {
    return {a.num * b.den + b.num * a.den, a.den * b.den};
  }
  friend RationalFunction operator-(const RationalFunction& a, const RationalFunction& b) {
    return {a.num * b.den - b.num * a.den, a.den * b.den};
  }
  friend RationalFunction operator*(const RationalFunction& a, const RationalFunction& b) {
    return {a.num * b.num, a.den * b.den};
  }
  friend RationalFunction operator/(const RationalFunction& a, const RationalFunction& b) {
    return {a.num * b.den, a.den * b.num};
  }
  RationalFunction operator-() const { return {-num, den}; }
  RationalFunction pow(unsigned e) const { return {num.pow(e), den.pow(e)}; }

  /// nullopt at a pole (denominator zero).
  std::optional<GaussianRational> evaluate_exact(const std::map<std::string, GaussianRational>& at) const;
  std::string to_string() const;
};

/// LaTeX rendering of a variable name (`nu` -> `\nu`, `s_x` -> `s_{x}`, `xi1` -> `\xi_{1}`).
std::string latex_variable(const std::string& name);

}  // namespace kform
