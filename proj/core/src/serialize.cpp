#include "kform/serialize.hpp"

#include <algorithm>

#include "kform/error.hpp"
#include "kform/parser.hpp"

namespace kform {

namespace {

json flux_terms(const BilinearExpr& e) {
  json terms = json::array();
  for (const auto& [k, c] : e.terms())
    terms.push_back({{"coeff", c.to_string()},
                     {"dq", k.dq.entries()},
                     {"dqt", k.dqt.entries()},
                     {"field_q", k.q_field},
                     {"field_qt", k.qt_field}});
  return terms;
}

json trace_json(const Trace& t) { return {{"field", t.field}, {"deriv", t.deriv.entries()}}; }

json trace_terms(const TraceSum& s) {
  json terms = json::array();
  for (const auto& [t, c] : s.terms()) terms.push_back({{"coeff", c.to_string()}, {"trace", trace_json(t)}});
  return terms;
}

json poly_list(const std::vector<SpectralPoly>& ps) {
  json out = json::array();
  for (const auto& p : ps) out.push_back(p.to_string());
  return out;
}

json axis_names(const std::vector<std::size_t>& axes, const std::vector<std::string>& names) {
  json out = json::array();
  for (auto a : axes) out.push_back(names.at(a));
  return out;
}

json complex_json(Complex z) { return {{"re", z.real()}, {"im", z.imag()}}; }

}  // namespace

json to_json(const DivergenceDecomposition& d) {
  json fluxes = json::array();
  for (std::size_t j = 0; j < d.fluxes.size(); ++j)
    fluxes.push_back({{"axis", d.naming.axes.at(j)}, {"terms", flux_terms(d.fluxes[j])}});
  json out = {{"axes", d.naming.axes}, {"fluxes", fluxes}};
  if (!d.naming.fields.empty()) out["fields"] = d.naming.fields;
  return out;
}

json to_json(const FundamentalForm& f) {
  json fluxes = json::array();
  for (std::size_t j = 0; j < f.fluxes.size(); ++j)
    fluxes.push_back({{"axis", f.naming.axes.at(j)},
                      {"sign", FundamentalForm::orientation_sign(j)},
                      {"omitted", f.naming.axes.at(j)},
                      {"terms", flux_terms(f.fluxes[j])}});
  json out = {{"axes", f.naming.axes}, {"fluxes", fluxes}};
  if (!f.naming.fields.empty()) out["fields"] = f.naming.fields;
  return out;
}

json to_json(const DecompositionPlan& p, const AnyOperator& op) {
  const auto terms = operator_terms(op);
  const auto& axes = header_of(op).axes;
  json out = json::array();
  for (std::size_t i = 0; i < p.terms.size(); ++i) {
    const TermPlan& t = p.terms[i];
    json entry = {{"alpha", terms.at(i).alpha.entries()}, {"path", axis_names(t.path.axes, axes)}};
    if (t.odd) {
      json ex = json::array();
      for (auto [k, j] : t.odd->exchanges) ex.push_back({axes.at(k), axes.at(j)});
      entry["transfer"] = axis_names(t.odd->transfer, axes);
      entry["exchange"] = ex;
    }
    out.push_back(entry);
  }
  return out;
}

json to_json(const ConstraintVariety& c) {
  json out = {{"names", c.names}, {"polynomial", c.polynomial.to_string()}};
  out["reduced"] = c.reduced ? json(c.reduced->to_string()) : json(nullptr);
  out["solved"] = c.solved ? json{{"var", c.solved->var}, {"rhs", c.solved->rhs.to_string()}} : json(nullptr);
  return out;
}

json to_json(const SubstitutedForm& f) {
  json fluxes = json::array();
  for (std::size_t j = 0; j < f.fluxes.size(); ++j)
    fluxes.push_back({{"axis", f.naming.axes.at(j)},
                      {"sign", FundamentalForm::orientation_sign(j)},
                      {"terms", trace_terms(f.fluxes[j])}});
  return {{"axes", f.naming.axes},
          {"amplitudes", poly_list(f.adjoint.amplitudes)},
          {"wavevector", poly_list(f.adjoint.wavevector)},
          {"fluxes", fluxes}};
}

json to_json(const GlobalRelation& g) {
  json box = json::array();
  for (const auto& b : g.box) box.push_back({{"axis", b.axis}, {"lo", b.lo.to_string()}, {"hi", b.hi.to_string()}});
  json terms = json::array();
  for (const auto& t : g.terms)
    terms.push_back({{"axis", g.naming.axes.at(t.axis)},
                     {"end", t.end == FaceEnd::Lo ? "lo" : "hi"},
                     {"sign", t.sign},
                     {"coeff", t.coeff.to_string()},
                     {"weight", t.weight.to_string()},
                     {"trace", trace_json(t.trace)}});
  return {{"box", box}, {"wavevector", poly_list(g.wavevector)}, {"terms", terms}};
}

json to_json(const IntegralRepresentation& r) {
  return {{"dimension", r.dimension},
          {"axes", r.axes},
          {"spectral", r.spectral},
          {"prefactor", "-1/(2*pi)^" + std::to_string(r.dimension)},
          {"denominator", r.denominator.to_string()},
          {"eta", to_json(r.eta)}};
}

json to_json(const BoundaryResidual& r, const std::vector<std::string>& axes) {
  json faces = json::array();
  for (const auto& f : r.faces)
    faces.push_back({{"axis", axes.at(f.axis)}, {"end", f.end == FaceEnd::Lo ? "lo" : "hi"}, {"value", complex_json(f.value)}});
  return {{"residual", complex_json(r.residual)},
          {"abs", std::abs(r.residual)},
          {"scale", r.scale},
          {"relative", r.relative()},
          {"faces", faces}};
}

DivergenceDecomposition decomposition_from_json(const json& j) {
  try {
    DivergenceDecomposition d;
    d.naming.axes = j.at("axes").get<std::vector<std::string>>();
    if (j.contains("fields")) d.naming.fields = j.at("fields").get<std::vector<std::string>>();
    d.dimension = d.naming.axes.size();
    d.rhs = BilinearExpr(d.dimension);
    d.fluxes.assign(d.dimension, BilinearExpr(d.dimension));
    for (const auto& flux : j.at("fluxes")) {
      auto name = flux.at("axis").get<std::string>();
      auto it = std::find(d.naming.axes.begin(), d.naming.axes.end(), name);
      if (it == d.naming.axes.end()) throw DomainError("flux on undeclared axis '" + name + "'");
      BilinearExpr& e = d.fluxes[static_cast<std::size_t>(it - d.naming.axes.begin())];
      for (const auto& t : flux.at("terms")) {
        MultiIndex dq(t.at("dq").get<std::vector<int>>());
        MultiIndex dqt(t.at("dqt").get<std::vector<int>>());
        if (dq.dimension() != d.dimension || dqt.dimension() != d.dimension)
          throw DimensionError("multi-index length does not match the axes");
        e.add({t.at("field_q").get<std::size_t>(), t.at("field_qt").get<std::size_t>(), dq, dqt},
              parse_poly(t.at("coeff").get<std::string>()));
      }
    }
    return d;
  } catch (const json::exception& e) {
    throw DomainError(std::string("malformed decomposition JSON: ") + e.what());
  }
}

}  // namespace kform
