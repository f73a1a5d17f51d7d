#include "kform/forms.hpp"

#include "kform/error.hpp"
#include "kform/poly.hpp"

namespace kform {

FundamentalForm assemble(const DivergenceDecomposition& d) {
  if (!d.verified) throw VerificationError("refusing to assemble an unverified decomposition");
  return {d.dimension, d.naming, d.fluxes, d.rhs};
}

BilinearExpr exterior_derivative(const FundamentalForm& f) {
  BilinearExpr out(f.dimension);
  for (std::size_t j = 0; j < f.fluxes.size(); ++j) out += partial(f.fluxes[j], j);
  return out;
}

bool forms_equivalent(const FundamentalForm& f, const FundamentalForm& g) {
  if (f.dimension != g.dimension || f.fluxes.size() != g.fluxes.size())
    throw DimensionError("forms of different dimension");
  BilinearExpr div(f.dimension);
  for (std::size_t j = 0; j < f.fluxes.size(); ++j) div += partial(f.fluxes[j] - g.fluxes[j], j);
  return div.is_zero();
}

std::string wedge_latex(const std::vector<std::string>& axes, std::size_t omitted) {
  std::string out;
  for (std::size_t k = 0; k < axes.size(); ++k) {
    if (!out.empty()) out += " \\wedge ";
    std::string d = "d" + latex_variable(axes[k]);
    out += k == omitted ? "\\widehat{" + d + "}" : d;
  }
  return out;
}

std::string to_latex(const FundamentalForm& f) {
  std::string out = "\\eta = ";
  bool first = true;
  for (std::size_t j = 0; j < f.fluxes.size(); ++j) {
    if (f.fluxes[j].is_zero()) continue;
    int sign = FundamentalForm::orientation_sign(j);
    if (first) {
      if (sign < 0) out += "-";
    } else {
      out += sign < 0 ? " - " : " + ";
    }
    first = false;
    out += "\\left(" + to_latex(f.fluxes[j], f.naming) + "\\right) " + wedge_latex(f.naming.axes, j);
  }
  if (first) out += "0";
  return out;
}

}  // namespace kform
