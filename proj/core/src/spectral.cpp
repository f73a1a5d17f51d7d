#include "kform/spectral.hpp"

#include <algorithm>
#include <random>
#include <set>

#include "kform/decomposition.hpp"
#include "kform/error.hpp"
#include "kform/parser.hpp"

namespace kform {

void TraceSum::add(const Trace& t, const SpectralPoly& c) {
  if (c.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace(t, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

TraceSum& TraceSum::operator+=(const TraceSum& o) {
  for (const auto& [t, c] : o.terms_) add(t, c);
  return *this;
}

TraceSum& TraceSum::operator-=(const TraceSum& o) {
  for (const auto& [t, c] : o.terms_) add(t, -c);
  return *this;
}

std::string trace_name(const Trace& t, const Naming& naming) {
  std::string s = naming.field_name(t.field);
  std::string d = derivative_suffix(t.deriv, naming.axes);
  return d.empty() ? s : s + "_" + d;
}

namespace {

std::string signed_join(const std::vector<std::string>& parts) {
  std::string out;
  for (const auto& p : parts) {
    if (out.empty()) {
      out = p;
    } else if (p[0] == '-') {
      out += " - " + p.substr(1);
    } else {
      out += " + " + p;
    }
  }
  return out.empty() ? "0" : out;
}

std::string scaled(const SpectralPoly& c, const std::string& body, bool latex) {
  if (c == Poly(1)) return body;
  if (c == Poly(-1)) return "-" + body;
  std::string s = latex ? c.to_latex() : c.to_string();
  if (c.size() > 1) s = latex ? "\\left(" + s + "\\right)" : "(" + s + ")";
  return s + (latex ? " " : "*") + body;
}

std::string trace_latex(const Trace& t, const Naming& naming) {
  std::string base = naming.fields.empty() ? "q" : latex_variable(naming.field_name(t.field));
  std::string d = derivative_suffix(t.deriv, naming.axes);
  if (d.empty()) return base;
  return naming.fields.empty() ? base + "_{" + d + "}" : "\\partial_{" + d + "}" + base;
}

}  // namespace

std::string to_text(const TraceSum& s, const Naming& naming) {
  std::vector<std::string> parts;
  for (const auto& [t, c] : s.terms()) parts.push_back(scaled(c, trace_name(t, naming), false));
  return signed_join(parts);
}

std::string to_latex(const TraceSum& s, const Naming& naming) {
  std::vector<std::string> parts;
  for (const auto& [t, c] : s.terms()) parts.push_back(scaled(c, trace_latex(t, naming), true));
  return signed_join(parts);
}

TraceSum parse_trace_sum(std::string_view src, const Naming& naming) {
  for (const auto& a : naming.axes)
    if (a.size() != 1) throw DomainError("trace names need single-letter axes");
  std::vector<std::string> fields = naming.fields.empty() ? std::vector<std::string>{"q"} : naming.fields;
  auto as_trace = [&](const std::string& name) -> std::optional<Trace> {
    for (std::size_t f = 0; f < fields.size(); ++f) {
      if (name == fields[f]) return Trace{f, MultiIndex(naming.axes.size())};
      if (name.size() > fields[f].size() + 1 && name.compare(0, fields[f].size() + 1, fields[f] + "_") == 0) {
        MultiIndex d(naming.axes.size());
        bool ok = true;
        for (char ch : name.substr(fields[f].size() + 1)) {
          auto it = std::find(naming.axes.begin(), naming.axes.end(), std::string(1, ch));
          if (it == naming.axes.end()) {
            ok = false;
            break;
          }
          d = d.raised(static_cast<std::size_t>(it - naming.axes.begin()));
        }
        if (ok) return Trace{f, d};
      }
    }
    return std::nullopt;
  };
  Poly p = parse_poly(src);
  TraceSum out;
  for (const auto& [mono, c] : p.terms()) {
    std::optional<Trace> trace;
    Monomial rest;
    for (const auto& [name, e] : mono) {
      if (auto t = as_trace(name)) {
        if (trace || e != 1) throw ParseError(0, "each term must contain exactly one trace to the first power");
        trace = t;
      } else {
        rest.emplace_back(name, e);
      }
    }
    if (!trace) throw ParseError(0, "term without a trace of " + fields.front());
    out.add(*trace, Poly::term(rest, c));
  }
  return out;
}

SpectralPoly ExponentialAdjoint::derivative_factor(const MultiIndex& nu) const {
  if (nu.dimension() != wavevector.size()) throw DimensionError("derivative and wavevector dimensions differ");
  SpectralPoly out(1);
  for (std::size_t j = 0; j < nu.dimension(); ++j)
    if (nu[j]) out *= (Poly::imaginary_unit() * wavevector[j]).pow(static_cast<unsigned>(nu[j]));
  return out;
}

ExponentialAdjoint exponential_adjoint(const std::vector<std::string>& names, SymbolSign sign, std::size_t fields) {
  ExponentialAdjoint a;
  a.amplitudes.assign(fields, Poly(1));
  for (const auto& n : names) a.wavevector.push_back(sign == SymbolSign::Plus ? Poly::variable(n) : -Poly::variable(n));
  return a;
}

namespace {

std::size_t field_count(const Naming& naming) { return naming.fields.empty() ? 1 : naming.fields.size(); }

void require_adjoint_fits(const ExponentialAdjoint& adj, std::size_t n, std::size_t fields) {
  if (adj.wavevector.size() != n) throw DimensionError("wavevector needs one entry per axis");
  if (adj.amplitudes.size() != fields) throw DimensionError("adjoint needs one amplitude per field");
}

}  // namespace

SubstitutedForm substitute_exponential(const FundamentalForm& f, const ExponentialAdjoint& adj) {
  require_adjoint_fits(adj, f.dimension, field_count(f.naming));
  std::set<std::string> vars;
  for (const auto& p : adj.wavevector) vars.merge(p.variables());
  for (const auto& p : adj.amplitudes) vars.merge(p.variables());
  for (const auto& a : f.naming.axes)
    if (vars.count(a)) throw DomainError("spectral variable '" + a + "' collides with an axis name");
  SubstitutedForm out{f.dimension, f.naming, adj, std::vector<TraceSum>(f.dimension)};
  for (std::size_t j = 0; j < f.dimension; ++j)
    for (const auto& [key, c] : f.fluxes[j].terms())
      out.fluxes[j].add({key.q_field, key.dq}, c * adj.amplitudes.at(key.qt_field) * adj.derivative_factor(key.dqt));
  return out;
}

TraceSum exterior_derivative(const SubstitutedForm& f) {
  TraceSum out;
  for (std::size_t j = 0; j < f.fluxes.size(); ++j) {
    const SpectralPoly ik = Poly::imaginary_unit() * f.adjoint.wavevector.at(j);
    for (const auto& [t, c] : f.fluxes[j].terms()) {
      out.add({t.field, t.deriv.raised(j)}, c);
      out.add(t, c * ik);
    }
  }
  return out;
}

TraceSum apply_weighted(const AnyOperator& op, const ExponentialAdjoint& adj) {
  const auto terms = operator_terms(op);
  const std::size_t m = std::holds_alternative<MatrixPDO>(op) ? std::get<MatrixPDO>(op).size() : 1;
  require_adjoint_fits(adj, header_of(op).dimension(), m);
  TraceSum out;
  for (const auto& t : terms) out.add({t.q_field, t.alpha}, adj.amplitudes[t.qt_field] * t.coeff);
  return out;
}

std::vector<SpectralPoly> adjoint_residual(const AnyOperator& op, const ExponentialAdjoint& adj) {
  const std::size_t m = std::holds_alternative<MatrixPDO>(op) ? std::get<MatrixPDO>(op).size() : 1;
  require_adjoint_fits(adj, header_of(op).dimension(), m);
  std::vector<SpectralPoly> out(m);
  for (const auto& t : operator_terms(op)) {
    SpectralPoly c = t.alpha.order() % 2 ? -t.coeff : t.coeff;
    out[t.q_field] += c * adj.amplitudes[t.qt_field] * adj.derivative_factor(t.alpha);
  }
  return out;
}

TraceSum substituted_rhs(const AnyOperator& op, const ExponentialAdjoint& adj) {
  TraceSum out = apply_weighted(op, adj);
  const auto res = adjoint_residual(op, adj);
  const std::size_t n = header_of(op).dimension();
  for (std::size_t j = 0; j < res.size(); ++j) out.add({j, MultiIndex(n)}, -res[j]);
  return out;
}

SpectralPoly reduce_mod_quadric(const SpectralPoly& p, const QuadricRule& rule) {
  if (rule.rhs.variables().count(rule.var))
    throw DomainError("quadric rule for '" + rule.var + "' must not mention it on the right");
  std::vector<Poly> powers{Poly(1)};
  SpectralPoly out;
  for (const auto& [mono, c] : p.terms()) {
    Monomial rest;
    unsigned e = 0;
    for (const auto& [name, k] : mono) {
      if (name == rule.var) {
        e = k;
      } else {
        rest.emplace_back(name, k);
      }
    }
    while (powers.size() <= e / 2) powers.push_back(powers.back() * rule.rhs);
    Poly t = Poly::term(rest, c) * powers[e / 2];
    if (e % 2) t *= Poly::variable(rule.var);
    out += t;
  }
  return out;
}

ConstraintVariety adjoint_constraint(const ScalarPDO& op, const std::vector<std::string>& names) {
  for (const auto& n : names)
    if (op.header().is_param(n) || op.header().axis_index(n))
      throw DomainError("spectral name '" + n + "' collides with a declared name");
  ConstraintVariety c;
  c.names = names;
  c.polynomial = symbol(adjoint(op), SymbolSign::Plus, names).clear_denominators();
  const unsigned deg = c.polynomial.total_degree();
  if (deg >= 2) {
    Poly monic = c.polynomial * Poly(c.polynomial.leading_term().second.inverse());
    for (unsigned k = deg; k >= 2; --k) {
      if (deg % k) continue;
      if (auto r = monic.exact_root(k)) {
        c.reduced = r->clear_denominators();
        break;
      }
    }
  }
  const Poly& base = c.reduced ? *c.reduced : c.polynomial;
  for (auto it = names.rbegin(); it != names.rend(); ++it) {
    if (base.degree(*it) != 2 || !base.coefficient(*it, 1).is_zero()) continue;
    auto lead = base.coefficient(*it, 2).constant_value();
    if (!lead) continue;
    c.solved = QuadricRule{*it, -base.coefficient(*it, 0) * Poly(lead->inverse())};
    break;
  }
  return c;
}

ConstraintVariety adjoint_constraint(const ScalarPDO& op) {
  return adjoint_constraint(op, spectral_names(op.header()));
}

ParameterizationCheck check_parameterization(const ConstraintVariety& c,
                                             const std::map<std::string, RationalFunction>& substitution,
                                             const std::string& parameter, std::size_t samples, std::uint64_t seed) {
  for (const auto& v : c.polynomial.variables())
    if (!substitution.count(v)) throw DomainError("substitution leaves '" + v + "' free");
  for (const auto& [name, r] : substitution) {
    std::set<std::string> vars = r.num.variables();
    vars.merge(r.den.variables());
    for (const auto& v : vars)
      if (v != parameter) throw DomainError("substitution for '" + name + "' depends on '" + v + "'");
    if (r.den.is_zero()) throw DomainError("substitution for '" + name + "' has a zero denominator");
  }
  ParameterizationCheck out;
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<long> num(-60, 60), den(1, 60);
  std::vector<GaussianRational> seen;
  const std::size_t max_candidates = 100 * samples + 2;
  for (std::size_t attempt = 0; out.samples.size() < samples && attempt < max_candidates; ++attempt) {
    GaussianRational lambda;
    if (attempt == 0) {
      lambda = 1;
    } else if (attempt == 1) {
      lambda = -1;
    } else {
      mpq_class q(num(rng), den(rng));
      q.canonicalize();
      lambda = q;
    }
    if (std::find(seen.begin(), seen.end(), lambda) != seen.end()) continue;
    seen.push_back(lambda);
    std::map<std::string, GaussianRational> values;
    bool pole = false;
    for (const auto& [name, r] : substitution) {
      auto v = r.evaluate_exact({{parameter, lambda}});
      if (!v) {
        pole = true;
        break;
      }
      values[name] = *v;
    }
    if (pole) {
      out.poles.push_back(lambda);
      continue;
    }
    out.samples.push_back(lambda);
    GaussianRational value = c.polynomial.evaluate_exact(values);
    if (!value.is_zero()) {
      out.witness = lambda;
      out.witness_value = value;
      return out;
    }
  }
  if (out.samples.empty()) throw DomainError("all candidate samples hit poles");
  if (out.samples.size() < samples) throw DomainError("too few pole-free samples");
  out.pass = true;
  return out;
}

Box parse_box(std::string_view src) {
  Box box;
  std::size_t start = 0;
  while (start <= src.size()) {
    std::size_t comma = src.find(',', start);
    std::string item(src.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start));
    std::size_t eq = item.find('=');
    std::size_t colon = item.find(':', eq == std::string::npos ? 0 : eq);
    if (eq == std::string::npos || colon == std::string::npos)
      throw ParseError(start, "expected axis=lo:hi", {"'='", "':'"});
    std::string axis = item.substr(0, eq);
    axis.erase(0, axis.find_first_not_of(" \t"));
    axis.erase(axis.find_last_not_of(" \t") + 1);
    if (axis.empty()) throw ParseError(start, "missing axis name", {"identifier"});
    try {
      box.push_back({axis, parse_poly(item.substr(eq + 1, colon - eq - 1)), parse_poly(item.substr(colon + 1))});
    } catch (const ParseError& e) {
      throw ParseError(start + eq + 1 + e.position(), e.detail(), e.expected());
    }
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return box;
}

GlobalRelation global_relation(const SubstitutedForm& f, const Box& box) {
  if (box.size() != f.dimension) throw DimensionError("box needs one interval per axis");
  for (std::size_t j = 0; j < box.size(); ++j)
    if (box[j].axis != f.naming.axes[j])
      throw DomainError("box axis '" + box[j].axis + "' does not match '" + f.naming.axes[j] + "'");
  GlobalRelation g{box, f.naming, f.adjoint.wavevector, {}};
  for (std::size_t j = 0; j < f.dimension; ++j) {
    for (FaceEnd end : {FaceEnd::Lo, FaceEnd::Hi}) {
      const SpectralPoly& at = end == FaceEnd::Lo ? box[j].lo : box[j].hi;
      const SpectralPoly weight = Poly::imaginary_unit() * f.adjoint.wavevector[j] * at;
      for (const auto& [t, c] : f.fluxes[j].terms())
        g.terms.push_back({j, end, end == FaceEnd::Hi ? 1 : -1, c, weight, t});
    }
  }
  return g;
}

namespace {

std::string exponent_latex(const SpectralPoly& e) {
  if (e.is_zero()) return "";
  return "e^{" + e.to_latex() + "}";
}

// i(sum_{k != skip} kappa_k x_k) in LaTeX; empty when nothing remains.
std::string face_exponent(const std::vector<SpectralPoly>& kappa, const std::vector<std::string>& axes,
                          std::size_t skip) {
  Poly e;
  for (std::size_t k = 0; k < kappa.size(); ++k)
    if (k != skip) e += kappa[k] * Poly::variable(axes[k]);
  return exponent_latex(Poly::imaginary_unit() * e);
}

std::string measure(const std::vector<std::string>& axes, std::size_t skip) {
  std::string out;
  for (std::size_t k = 0; k < axes.size(); ++k)
    if (k != skip) out += (out.empty() ? "\\mathrm{d}" : "\\,\\mathrm{d}") + latex_variable(axes[k]);
  return out;
}

}  // namespace

std::string to_latex(const GlobalRelation& g) {
  std::string out = "0 = ";
  bool first = true;
  for (std::size_t j = 0; j < g.box.size(); ++j) {
    for (FaceEnd end : {FaceEnd::Lo, FaceEnd::Hi}) {
      TraceSum face;
      SpectralPoly weight;
      for (const auto& t : g.terms) {
        if (t.axis != j || t.end != end) continue;
        face.add(t.trace, t.coeff);
        weight = t.weight;
      }
      if (face.is_zero()) continue;
      if (end == FaceEnd::Lo) {
        out += first ? "-" : " - ";
      } else if (!first) {
        out += " + ";
      }
      first = false;
      const SpectralPoly& at = end == FaceEnd::Lo ? g.box[j].lo : g.box[j].hi;
      std::string w = exponent_latex(weight);
      out += (w.empty() ? "" : w + " ") + "\\int_{" + latex_variable(g.naming.axes[j]) + "=" + at.to_latex() + "} ";
      std::string fw = face_exponent(g.wavevector, g.naming.axes, j);
      out += (fw.empty() ? "" : fw + " ") + "\\left(" + to_latex(face, g.naming) + "\\right) " +
             measure(g.naming.axes, j);
    }
  }
  if (first) out += "0";
  return out;
}

std::string to_latex(const SubstitutedForm& f) {
  std::string out;
  for (std::size_t j = 0; j < f.fluxes.size(); ++j) {
    if (f.fluxes[j].is_zero()) continue;
    int sign = FundamentalForm::orientation_sign(j);
    if (out.empty()) {
      if (sign < 0) out += "-";
    } else {
      out += sign < 0 ? " - " : " + ";
    }
    out += "\\left(" + to_latex(f.fluxes[j], f.naming) + "\\right) " + wedge_latex(f.naming.axes, j);
  }
  return out.empty() ? "0" : out;
}

IntegralRepresentation integral_representation(const ScalarPDO& op, const std::string& prefix) {
  const auto names = spectral_names(op.header(), prefix);
  for (const auto& n : names)
    if (op.header().is_param(n) || op.header().axis_index(n))
      throw DomainError("spectral name '" + n + "' collides with a declared name");
  IntegralRepresentation r;
  r.dimension = op.dimension();
  r.axes = op.header().axes;
  r.spectral = names;
  r.denominator = symbol(op, SymbolSign::Plus, names);
  if (r.denominator.is_zero()) throw DomainError("operator symbol vanishes identically");
  const ExponentialAdjoint adj = exponential_adjoint(names, SymbolSign::Minus);
  r.eta = substitute_exponential(assemble(decompose(AnyOperator(op))), adj);
  // d eta / weight = L q - L(ik) q; both the adjoint symbol and the full identity must agree.
  if (adjoint_residual(op, adj).front() != r.denominator || exterior_derivative(r.eta) != substituted_rhs(op, adj))
    throw VerificationError("integral representation failed its symbol cross-check");
  return r;
}

std::string to_latex(const IntegralRepresentation& r) {
  const std::string n = std::to_string(r.dimension);
  std::string measure_k, phase;
  for (std::size_t j = 0; j < r.dimension; ++j) {
    measure_k += (j ? "\\,\\mathrm{d}" : "\\mathrm{d}") + latex_variable(r.spectral[j]);
    phase += (j ? " + " : "") + latex_variable(r.spectral[j]) + " " + latex_variable(r.axes[j]);
  }
  std::string out = "q(x) = \\frac{-1}{(2\\pi)^{" + n + "}} \\int_{\\mathbb{R}^{" + n + "}} " + measure_k +
                    " \\int_{\\partial\\Omega} \\frac{e^{i(" + phase + ")}\\, \\eta(y,k)}{" +
                    r.denominator.to_latex() + "}";
  out += ",\\qquad \\eta(y,k) = e^{-i(" + phase + ")} \\left[" + to_latex(r.eta) + "\\right]";
  return out;
}

SpinorTriple spinor_isotropic(const SpectralPoly& xi1, const SpectralPoly& xi2, const SpectralPoly& xi3) {
  SpinorTriple s{xi1, xi2, xi3, {}};
  const Poly a = xi1 * xi1, b = xi2 * xi2;
  s.k = {a - b, Poly::imaginary_unit() * (a + b), Poly(-2) * xi1 * xi2};
  return s;
}

SpectralPoly isotropy_defect(const SpinorTriple& s) {
  return s.k[0] * s.k[0] + s.k[1] * s.k[1] + s.k[2] * s.k[2];
}

std::array<SpectralPoly, 3> parity_defect(const SpinorTriple& s) {
  SpinorTriple m = spinor_isotropic(-s.xi1, -s.xi2, s.xi3);
  return {m.k[0] - s.k[0], m.k[1] - s.k[1], m.k[2] - s.k[2]};
}

ExponentialAdjoint stokes_adjoint(const MatrixPDO& op, const SpinorTriple& s) {
  if (op.size() != 4) throw DimensionError("Stokes system has four fields");
  const auto& h = op.header();
  auto axis = [&](const char* name) {
    auto k = h.axis_index(name);
    if (!k) throw DomainError(std::string("Stokes system lacks axis '") + name + "'");
    return *k;
  };
  ExponentialAdjoint a;
  a.amplitudes = {s.k[0], s.k[1], s.k[2], s.xi3};
  a.wavevector.assign(h.dimension(), Poly());
  a.wavevector[axis("x")] = -s.k[0];
  a.wavevector[axis("y")] = -s.k[1];
  a.wavevector[axis("z")] = -s.k[2];
  a.wavevector[axis("t")] = s.xi3;
  return a;
}

AdjointCheck verify_stokes_adjoint(const MatrixPDO& op, const SpinorTriple& s) {
  AdjointCheck c;
  c.residual = adjoint_residual(AnyOperator(op), stokes_adjoint(op, s));
  c.pass = std::all_of(c.residual.begin(), c.residual.end(), [](const Poly& p) { return p.is_zero(); });
  return c;
}

}  // namespace kform
