#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "kform/bilinear.hpp"
#include "kform/decomposition.hpp"

namespace kform {

/// eta = sum_j (-1)^{j+1} a_j dx^1 ^ ... ^ (dx^j omitted) ^ ... ^ dx^n, axes in declared order.
/// With this orientation d eta = (sum_j d_j a_j) dx^1 ^ ... ^ dx^n.
struct FundamentalForm {
  std::size_t dimension = 0;
  Naming naming;
  std::vector<BilinearExpr> fluxes;
  BilinearExpr rhs{0};

  /// (-1)^{j+1} for the 0-based axis j, i.e. +1, -1, +1, ...
  static int orientation_sign(std::size_t j) { return j % 2 == 0 ? 1 : -1; }
};

/// Throws VerificationError on a decomposition that was not verified.
FundamentalForm assemble(const DivergenceDecomposition& d);

/// Coefficient of dx^1 ^ ... ^ dx^n in d eta.
BilinearExpr exterior_derivative(const FundamentalForm& f);

/// True iff sum_j d_j(a_j - b_j) vanishes identically.
bool forms_equivalent(const FundamentalForm& f, const FundamentalForm& g);

/// "dx \wedge \widehat{dt}"-style basis element for the omitted axis j.
std::string wedge_latex(const std::vector<std::string>& axes, std::size_t omitted);
/// eta = ... with every flux and the hatted basis elements.
std::string to_latex(const FundamentalForm& f);

}  // namespace kform
