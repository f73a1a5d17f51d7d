#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "kform/bilinear.hpp"
#include "kform/multi_index.hpp"
#include "kform/poly.hpp"

namespace kform {

/// Declared axis and parameter names of an operator session.
struct OperatorHeader {
  std::vector<std::string> axes;
  std::vector<std::string> params;

  std::size_t dimension() const noexcept { return axes.size(); }
  std::optional<std::size_t> axis_index(const std::string& name) const;
  bool is_param(const std::string& name) const;
  /// Throws ParseError on duplicate, reserved or overlapping names.
  void validate() const;

  friend bool operator==(const OperatorHeader&, const OperatorHeader&) = default;
};

/// Constant-coefficient linear operator L = sum_alpha c_alpha d^alpha.
class ScalarPDO {
 public:
  using TermMap = std::map<MultiIndex, Coeff>;

  explicit ScalarPDO(OperatorHeader header);
  ScalarPDO(OperatorHeader header, const TermMap& terms);

  const OperatorHeader& header() const noexcept { return header_; }
  std::size_t dimension() const noexcept { return header_.dimension(); }
  const TermMap& terms() const noexcept { return terms_; }
  bool is_zero() const noexcept { return terms_.empty(); }

  void add_term(const MultiIndex& alpha, const Coeff& c);

  ScalarPDO& operator+=(const ScalarPDO& o);
  friend ScalarPDO operator+(ScalarPDO a, const ScalarPDO& b) { return a += b; }
  ScalarPDO operator-() const;
  friend ScalarPDO operator-(const ScalarPDO& a, const ScalarPDO& b) { return a + (-b); }
  friend bool operator==(const ScalarPDO& a, const ScalarPDO& b) {
    return a.header_ == b.header_ && a.terms_ == b.terms_;
  }

 private:
  OperatorHeader header_;
  TermMap terms_;
};

/// Square m x m grid of scalar operators acting on fields phi_1..phi_m.
class MatrixPDO {
 public:
  MatrixPDO(OperatorHeader header, std::vector<std::string> fields,
            std::vector<std::vector<ScalarPDO>> entries);

  const OperatorHeader& header() const noexcept { return header_; }
  std::size_t dimension() const noexcept { return header_.dimension(); }
  std::size_t size() const noexcept { return entries_.size(); }
  const std::vector<std::string>& fields() const noexcept { return fields_; }
  const ScalarPDO& entry(std::size_t i, std::size_t j) const { return entries_.at(i).at(j); }
  const std::vector<std::vector<ScalarPDO>>& entries() const noexcept { return entries_; }

  friend bool operator==(const MatrixPDO&, const MatrixPDO&) = default;

 private:
  OperatorHeader header_;
  std::vector<std::string> fields_;
  std::vector<std::vector<ScalarPDO>> entries_;
};

using AnyOperator = std::variant<ScalarPDO, MatrixPDO>;

/// One scalar term c * d^alpha of entry (qt_field, q_field) of an operator; it
/// contributes c * [alpha, 0] (even order) or c * {alpha, 0} (odd order) with q
/// carrying field `q_field` and q~ carrying `qt_field`.
struct OperatorTerm {
  std::size_t qt_field = 0;
  std::size_t q_field = 0;
  MultiIndex alpha;
  Coeff coeff;
};

/// Terms in canonical order: row-major over entries, then ascending alpha.
std::vector<OperatorTerm> operator_terms(const ScalarPDO& op);
std::vector<OperatorTerm> operator_terms(const MatrixPDO& op);
std::vector<OperatorTerm> operator_terms(const AnyOperator& op);

const OperatorHeader& header_of(const AnyOperator& op);
Naming naming_of(const AnyOperator& op);

/// Formal adjoint: c_alpha -> (-1)^{|alpha|} c_alpha; matrices also transpose.
ScalarPDO adjoint(const ScalarPDO& op);
MatrixPDO adjoint(const MatrixPDO& op);

/// (L_e, L_o): even-order and odd-order parts.
std::pair<ScalarPDO, ScalarPDO> even_odd_split(const ScalarPDO& op);

/// q~ L q - q L^dagger q~ as  sum_{odd} c {alpha,0} + sum_{even} c [alpha,0].
BilinearExpr bilinear_rhs(const ScalarPDO& op);
/// phi~_i L_ij phi_j - phi_j L^dagger_ij phi~_i summed over all entries.
BilinearExpr system_bilinear_rhs(const MatrixPDO& op);
BilinearExpr bilinear_rhs(const AnyOperator& op);

/// Sign of the substitution d_k -> sign * i * s_k.
enum class SymbolSign { Plus, Minus };

/// Spectral variable names `<prefix><axis>` for every declared axis.
std::vector<std::string> spectral_names(const OperatorHeader& header, const std::string& prefix = "s_");

/// Polynomial obtained by substituting d_k -> (+/-) i s_k.
SpectralPoly symbol(const ScalarPDO& op, SymbolSign sign, const std::vector<std::string>& names);

}  // namespace kform
