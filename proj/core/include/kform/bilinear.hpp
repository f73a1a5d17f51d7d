#pragma once

#include <compare>
#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include "kform/multi_index.hpp"
#include "kform/poly.hpp"

namespace kform {

/// Key of one bilinear monomial  d^dq q_{q_field} * d^dqt q~_{qt_field}.
/// Field indices are 0 for scalar problems.
struct BilinearKey {
  std::size_t q_field = 0;
  std::size_t qt_field = 0;
  MultiIndex dq;
  MultiIndex dqt;

  friend auto operator<=>(const BilinearKey&, const BilinearKey&) = default;
  friend bool operator==(const BilinearKey&, const BilinearKey&) = default;
};

struct BilinearTerm {
  Coeff coeff;
  BilinearKey key;
};

/// Canonical finite sum of terms c * d^mu q_i * d^nu q~_j.
///
/// Terms are kept ordered by (q_field, qt_field, dq, dqt) with no duplicate keys
/// and no zero coefficients, so `==` is an exact identity test.
class BilinearExpr {
 public:
  using TermMap = std::map<BilinearKey, Coeff>;

  explicit BilinearExpr(std::size_t dimension) : dimension_(dimension) {}

  static BilinearExpr product(const Coeff& c, const MultiIndex& dq, const MultiIndex& dqt,
                              std::size_t q_field = 0, std::size_t qt_field = 0);

  std::size_t dimension() const noexcept { return dimension_; }
  const TermMap& terms() const noexcept { return terms_; }
  std::size_t size() const noexcept { return terms_.size(); }
  bool is_zero() const noexcept { return terms_.empty(); }
  std::vector<BilinearTerm> term_list() const;

  void add(const BilinearKey& key, const Coeff& c);

  BilinearExpr& operator+=(const BilinearExpr& o);
  BilinearExpr& operator-=(const BilinearExpr& o);
  BilinearExpr& operator*=(const Coeff& c);
  friend BilinearExpr operator+(BilinearExpr a, const BilinearExpr& b) { return a += b; }
  friend BilinearExpr operator-(BilinearExpr a, const BilinearExpr& b) { return a -= b; }
  friend BilinearExpr operator*(BilinearExpr a, const Coeff& c) { return a *= c; }
  friend BilinearExpr operator*(const Coeff& c, BilinearExpr a) { return a *= c; }
  BilinearExpr operator-() const;

  friend bool operator==(const BilinearExpr& a, const BilinearExpr& b) {
    return a.dimension_ == b.dimension_ && a.terms_ == b.terms_;
  }

 private:
  void require_dimension(const BilinearExpr& o) const;

  std::size_t dimension_;
  TermMap terms_;
};

/// [alpha, beta] = d^beta q~ d^alpha q - d^beta q d^alpha q~.
BilinearExpr bracket(const MultiIndex& alpha, const MultiIndex& beta, std::size_t q_field = 0,
                     std::size_t qt_field = 0);
/// {alpha, beta} = d^beta q~ d^alpha q + d^beta q d^alpha q~.
BilinearExpr brace(const MultiIndex& alpha, const MultiIndex& beta, std::size_t q_field = 0,
                   std::size_t qt_field = 0);

/// Total derivative d_k by the product rule. `k` is 0-based.
BilinearExpr partial(const BilinearExpr& expr, std::size_t k);

/// Names used when rendering bilinear expressions.
struct Naming {
  std::vector<std::string> axes;
  /// Empty for scalar problems (rendered as q and \tilde q).
  std::vector<std::string> fields;

  std::string field_name(std::size_t i) const;
};

std::string derivative_suffix(const MultiIndex& m, const std::vector<std::string>& axes);
std::string to_text(const BilinearExpr& e, const Naming& naming);
std::string to_latex(const BilinearExpr& e, const Naming& naming);

}  // namespace kform
