#pragma once

#include <string>
#include <vector>

#include "kform/bilinear.hpp"
#include "kform/spectral.hpp"

namespace kform::testing {

/// Reads "qt*q_xyy - q*qt_xyy + 2*nu*u1~_x*u1". Field factors are `<field>` or
/// `<field>_<axes>` for q and `<field>~...` (or `qt...` in scalar problems) for q~;
/// every other factor is a coefficient.
BilinearExpr parse_bilinear(const std::string& text, const Naming& naming);

/// Reference wave fluxes, axes (x, t).
std::vector<BilinearExpr> example1_fluxes();
/// Reference fluxes of the sixth-order operator, axes (x, y, z).
std::vector<BilinearExpr> example2_fluxes();
/// rho, J1, J2, J3 for the Stokes system, axes (t, x, y, z). `with_slips` puts
/// d_x in the last term of J3.
std::vector<BilinearExpr> stokes_fluxes(bool with_slips);

/// Biharmonic substituted fluxes over s_x, s_y, s_z. `with_slips` swaps in
/// two wrong coefficients: i s_x s_y^2 for 2i, and s_x for s_y in the s_z^2 term.
std::vector<TraceSum> biharmonic_reference(bool with_slips);

/// Wave relation terms on the box x=0:l, t=0:T for q~ = exp(ik(x - t)) (`plus` false)
/// or exp(ik(x + t)) (`plus` true).
std::vector<RelationTerm> wave_relation(bool plus);

}  // namespace kform::testing
