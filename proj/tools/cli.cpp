#include "cli.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <set>
#include <sstream>

#include <CLI11.hpp>

#include "kform/catalog.hpp"
#include "kform/decomposition.hpp"
#include "kform/error.hpp"
#include "kform/forms.hpp"
#include "kform/numeric.hpp"
#include "kform/parser.hpp"
#include "kform/serialize.hpp"
#include "kform/spectral.hpp"

namespace kform::cli {

namespace {

constexpr double kRelativeTolerance = 1e-8;
constexpr double kPdeTolerance = 1e-10;

/// Failure of a check the command was asked to perform (exit 1).
struct CheckFailed {
  std::string message;
};

std::string sci(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", v);
  return buf;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DomainError("cannot read '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  int depth = 0;
  for (char c : s) {
    if (c == '(') ++depth;
    if (c == ')') --depth;
    if (c == sep && depth == 0) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t\n");
  if (b == std::string::npos) return "";
  return s.substr(b, s.find_last_not_of(" \t\n") - b + 1);
}

class Runner {
 public:
  Runner(const RunConfig& cfg, std::ostream& out) : cfg_(cfg), out_(out) {}

  void run() {
    const std::string& c = cfg_.command;
    if (c == "decompose") return decompose_cmd();
    if (c == "count") return count_cmd();
    if (c == "enumerate") return enumerate_cmd();
    if (c == "constraint") return constraint_cmd();
    if (c == "global-relation") return relation_cmd();
    if (c == "represent") return represent_cmd();
    if (c == "verify") return verify_cmd();
    if (c == "stokes") return stokes_cmd();
    throw DomainError("unknown command '" + c + "'");
  }

  /// Text the last ParseError position refers to.
  const std::string& source() const { return source_; }

 private:
  AnyOperator load_operator(const std::string& fallback = "") {
    int given = !cfg_.op_text.empty() + !cfg_.op_file.empty() + !cfg_.case_name.empty();
    if (given > 1) throw DomainError("give only one of --op, --op-file, --case");
    if (given == 0 && fallback.empty()) throw DomainError("an operator is required (--op, --op-file or --case)");
    if (!cfg_.op_text.empty()) {
      source_ = cfg_.op_text;
    } else if (!cfg_.op_file.empty()) {
      source_ = read_file(cfg_.op_file);
    } else {
      source_ = catalog_source(cfg_.case_name.empty() ? fallback : cfg_.case_name);
    }
    AnyOperator op = parse_operator(source_);
    source_.clear();
    return op;
  }

  const ScalarPDO& scalar(const AnyOperator& op) {
    if (!std::holds_alternative<ScalarPDO>(op)) throw DomainError("'" + cfg_.command + "' needs a scalar operator");
    return std::get<ScalarPDO>(op);
  }

  std::vector<std::size_t> axis_list(const std::string& text, const OperatorHeader& h) {
    std::vector<std::size_t> out;
    const std::string t = trim(text);
    if (t.empty() || t == "-") return out;
    for (const auto& name : split(t, ',')) {
      auto k = h.axis_index(trim(name));
      if (!k) throw DomainError("unknown axis '" + trim(name) + "'");
      out.push_back(*k);
    }
    return out;
  }

  DecompositionPlan plan_for(const AnyOperator& op) {
    if (cfg_.path.empty() && cfg_.transfer.empty() && cfg_.exchange.empty()) return default_plan(op);
    const auto terms = operator_terms(op);
    const auto& h = header_of(op);
    auto check_count = [&](const std::vector<std::string>& v, const char* flag) {
      if (!v.empty() && v.size() != terms.size())
        throw DomainError(std::string(flag) + " must be given once per operator term (" +
                          std::to_string(terms.size()) + ")");
    };
    check_count(cfg_.path, "--path");
    check_count(cfg_.transfer, "--transfer");
    check_count(cfg_.exchange, "--exchange");
    if (cfg_.transfer.empty() != cfg_.exchange.empty())
      throw DomainError("--transfer and --exchange go together");
    DecompositionPlan plan;
    for (std::size_t i = 0; i < terms.size(); ++i) {
      TermPlan tp = default_term_plan(terms[i].alpha);
      if (!cfg_.path.empty()) tp.path.axes = axis_list(cfg_.path[i], h);
      if (!cfg_.transfer.empty() && !terms[i].alpha.odd_axes().empty()) {
        OddPlan odd;
        odd.transfer = axis_list(cfg_.transfer[i], h);
        const std::string ex = trim(cfg_.exchange[i]);
        if (!ex.empty() && ex != "-") {
          for (const auto& pair : split(ex, ',')) {
            auto parts = split(pair, ':');
            if (parts.size() != 2) throw DomainError("exchange pairs look like q_axis:qt_axis");
            auto k = axis_list(parts[0], h), j = axis_list(parts[1], h);
            if (k.size() != 1 || j.size() != 1) throw DomainError("exchange pairs look like q_axis:qt_axis");
            odd.exchanges.emplace_back(k[0], j[0]);
          }
        }
        tp.odd = odd;
      }
      validate_term_plan(terms[i].alpha, tp);
      plan.terms.push_back(tp);
    }
    return plan;
  }

  DivergenceDecomposition checked_decompose(const AnyOperator& op, const DecompositionPlan& plan) {
    DivergenceDecomposition d = decompose(op, plan);
    DivergenceCheck check = verify_divergence(d, bilinear_rhs(op));
    if (!check.pass)
      throw VerificationError("divergence check failed, residual: " + to_text(check.residual, d.naming));
    return d;
  }

  bool json_out() const { return cfg_.format == "json"; }
  bool latex_out() const { return cfg_.format == "latex"; }
  void emit(const json& j) { out_ << j.dump(2) << "\n"; }

  void decompose_cmd() {
    AnyOperator op = load_operator();
    DecompositionPlan plan = plan_for(op);
    DivergenceDecomposition d = checked_decompose(op, plan);
    FundamentalForm f = assemble(d);
    if (json_out()) {
      emit({{"decomposition", to_json(d)}, {"form", to_json(f)}, {"plan", to_json(plan, op)}, {"verified", true}});
      return;
    }
    for (std::size_t j = 0; j < d.fluxes.size(); ++j) {
      const std::string& a = d.naming.axes[j];
      if (latex_out())
        out_ << "a_{" << latex_variable(a) << "} = " << to_latex(d.fluxes[j], d.naming) << "\n";
      else
        out_ << "a_" << a << " = " << to_text(d.fluxes[j], d.naming) << "\n";
    }
    if (latex_out()) out_ << to_latex(f) << "\n% ";
    out_ << "verified: true\n";
  }

  static std::string term_text(const OperatorTerm& t, const AnyOperator& op) {
    const auto& axes = header_of(op).axes;
    std::string s;
    for (std::size_t k = 0; k < axes.size(); ++k) {
      if (t.alpha[k] == 0) continue;
      if (!s.empty()) s += "*";
      s += "D" + axes[k];
      if (t.alpha[k] > 1) s += "^" + std::to_string(t.alpha[k]);
    }
    if (s.empty()) s = "1";
    if (std::holds_alternative<MatrixPDO>(op))
      s = "[" + std::to_string(t.qt_field) + "," + std::to_string(t.q_field) + "] " + s;
    return s;
  }

  static json mpz_json(const mpz_class& z) {
    if (z.fits_ulong_p()) return json(z.get_ui());
    return json(z.get_str());
  }

  void count_cmd() {
    AnyOperator op = load_operator();
    const auto terms = operator_terms(op);
    const mpz_class total = count_forms(terms);
    if (json_out()) {
      json list = json::array();
      for (const auto& t : terms) {
        mpz_class of;
        mpz_fac_ui(of.get_mpz_t(), t.alpha.odd_count());
        list.push_back({{"term", term_text(t, op)},
                        {"alpha", t.alpha.entries()},
                        {"odd", t.alpha.odd_count()},
                        {"odd_factorial", mpz_json(of)},
                        {"sigma", mpz_json(sigma_count(t.alpha))},
                        {"count", mpz_json(term_count(t.alpha))}});
      }
      emit({{"count", mpz_json(total)}, {"terms", list}});
      return;
    }
    if (latex_out()) {
      out_ << "N(L) = ";
      for (std::size_t i = 0; i < terms.size(); ++i) {
        if (i) out_ << " \\times ";
        out_ << terms[i].alpha.odd_count() << "!\\cdot " << sigma_count(terms[i].alpha).get_str();
      }
      out_ << " = " << total.get_str() << "\n";
      return;
    }
    out_ << total.get_str() << "\n";
    for (const auto& t : terms)
      out_ << "  " << term_text(t, op) << ": O=" << t.alpha.odd_count() << " sigma=" << sigma_count(t.alpha).get_str()
           << " count=" << term_count(t.alpha).get_str() << "\n";
  }

  void enumerate_cmd() {
    AnyOperator op = load_operator();
    const auto plans = enumerate_plans(op, enumeration_ceiling_from_env());
    std::vector<FundamentalForm> forms;
    for (const auto& p : plans) forms.push_back(assemble(checked_decompose(op, p)));
    // Equivalence is a linear condition, so classes are found against one representative each.
    std::vector<std::size_t> reps, sizes, klass;
    for (std::size_t i = 0; i < forms.size(); ++i) {
      std::size_t c = 0;
      while (c < reps.size() && !forms_equivalent(forms[reps[c]], forms[i])) ++c;
      if (c == reps.size()) {
        reps.push_back(i);
        sizes.push_back(0);
      }
      ++sizes[c];
      klass.push_back(c);
    }
    std::uint64_t pairs = forms.size() * (forms.size() - (forms.empty() ? 0 : 1)) / 2, equivalent = 0;
    for (auto s : sizes) equivalent += s * (s - 1) / 2;
    if (json_out()) {
      json list = json::array();
      for (std::size_t i = 0; i < plans.size(); ++i)
        list.push_back({{"plan", to_json(plans[i], op)}, {"class", klass[i]}, {"form", to_json(forms[i])}});
      emit({{"total", plans.size()},
            {"verified", forms.size()},
            {"pairs", pairs},
            {"equivalent_pairs", equivalent},
            {"classes", reps.size()},
            {"plans", list}});
    } else if (latex_out()) {
      for (std::size_t i = 0; i < forms.size(); ++i) out_ << "% plan " << i + 1 << "\n" << to_latex(forms[i]) << "\n";
      out_ << "% equivalent pairs: " << equivalent << "/" << pairs << "\n";
    } else {
      out_ << "plans: " << plans.size() << "\nverified: " << forms.size() << "\nequivalent pairs: " << equivalent
           << "/" << pairs << "\nclasses: " << reps.size() << "\n";
    }
    if (reps.size() > 1) throw CheckFailed{"enumerated forms fall into " + std::to_string(reps.size()) + " classes"};
  }

  std::map<std::string, RationalFunction> rational_substitution(const std::string& text) {
    std::map<std::string, RationalFunction> out;
    for (const auto& item : split(text, ',')) {
      auto parts = split(item, '=');
      if (parts.size() != 2 || trim(parts[0]).empty()) throw DomainError("substitutions look like name=expression");
      source_ = trim(parts[1]);
      out[trim(parts[0])] = parse_rational_function(source_);
      source_.clear();
    }
    return out;
  }

  void constraint_cmd() {
    AnyOperator op = load_operator();
    ConstraintVariety c = adjoint_constraint(scalar(op));
    std::optional<ParameterizationCheck> pc;
    std::string parameter;
    if (!cfg_.spectral_sub.empty()) {
      auto sub = rational_substitution(cfg_.spectral_sub);
      std::set<std::string> free;
      for (const auto& [name, r] : sub) {
        for (const auto& v : r.num.variables()) free.insert(v);
        for (const auto& v : r.den.variables()) free.insert(v);
      }
      if (free.size() != 1) throw DomainError("substitution must depend on exactly one parameter");
      parameter = *free.begin();
      pc = check_parameterization(c, sub, parameter, 20, cfg_.seed);
    }
    if (json_out()) {
      json j = to_json(c);
      if (pc) {
        json samples = json::array(), poles = json::array();
        for (const auto& s : pc->samples) samples.push_back(s.to_string(false));
        for (const auto& s : pc->poles) poles.push_back(s.to_string(false));
        j["parameterization"] = {{"parameter", parameter}, {"pass", pc->pass}, {"samples", samples}, {"poles", poles}};
        if (pc->witness)
          j["parameterization"]["witness"] = {{"at", pc->witness->to_string(false)},
                                              {"value", pc->witness_value.to_string(false)}};
      }
      emit(j);
    } else if (latex_out()) {
      out_ << c.polynomial.to_latex() << " = 0\n";
      if (c.reduced) out_ << "% reduced: " << c.reduced->to_latex() << " = 0\n";
      if (c.solved) out_ << latex_variable(c.solved->var) << "^{2} = " << c.solved->rhs.to_latex() << "\n";
    } else {
      out_ << "P = " << c.polynomial.to_string() << "\n";
      if (c.reduced) out_ << "reduced: " << c.reduced->to_string() << "\n";
      if (c.solved) out_ << "solved: " << c.solved->var << "^2 = " << c.solved->rhs.to_string() << "\n";
    }
    if (pc && !json_out()) {
      out_ << (latex_out() ? "% " : "") << "parameterization in " << parameter << ": "
           << (pc->pass ? "pass" : "fail") << " (" << pc->samples.size() << " samples, " << pc->poles.size()
           << " poles skipped)\n";
    }
    if (pc && !pc->pass)
      throw CheckFailed{"constraint does not vanish at " + parameter + " = " + pc->witness->to_string(false) +
                        ", value " + pc->witness_value.to_string(false)};
  }

  ExponentialAdjoint spectral_adjoint(const AnyOperator& op) {
    ExponentialAdjoint adj = exponential_adjoint(spectral_names(header_of(op)), SymbolSign::Plus);
    if (cfg_.spectral_sub.empty()) return adj;
    std::map<std::string, Poly> sub;
    source_ = cfg_.spectral_sub;
    sub = parse_assignments(source_);
    source_.clear();
    for (auto& k : adj.wavevector) k = k.substitute(sub);
    for (auto& a : adj.amplitudes) a = a.substitute(sub);
    return adj;
  }

  void relation_cmd() {
    AnyOperator op = load_operator();
    const ScalarPDO& L = scalar(op);
    if (cfg_.box.empty()) throw DomainError("global-relation needs --box, e.g. x=0:l,t=0:T");
    source_ = cfg_.box;
    Box box = parse_box(source_);
    source_.clear();
    ExponentialAdjoint adj = spectral_adjoint(op);
    const SpectralPoly constraint = adjoint_residual(op, adj).front();
    if (!cfg_.spectral_sub.empty() && !constraint.is_zero())
      throw CheckFailed{"substituted exponential misses the adjoint equation, residual: " + constraint.to_string()};
    SubstitutedForm f = substitute_exponential(assemble(checked_decompose(op, plan_for(op))), adj);
    if (!(exterior_derivative(f) == substituted_rhs(L, adj)))
      throw VerificationError("substituted form does not close onto the weighted concomitant");
    GlobalRelation g = global_relation(f, box);
    if (json_out()) {
      json j = to_json(g);
      j["constraint"] = constraint.to_string();
      emit(j);
      return;
    }
    if (latex_out()) {
      out_ << to_latex(g) << "\n";
      if (!constraint.is_zero()) out_ << "% valid on " << constraint.to_latex() << " = 0\n";
      return;
    }
    for (const auto& t : g.terms) {
      out_ << (t.sign > 0 ? "+ " : "- ") << "(" << t.coeff.to_string() << ")";
      if (!t.weight.is_zero()) out_ << " exp(" << t.weight.to_string() << ")";
      out_ << " T["
           << g.naming.axes[t.axis] << "=" << (t.end == FaceEnd::Lo ? "lo" : "hi") << "; "
           << trace_name(t.trace, g.naming) << "]\n";
    }
    if (!constraint.is_zero()) out_ << "valid on " << constraint.to_string() << " = 0\n";
  }

  void represent_cmd() {
    AnyOperator op = load_operator();
    IntegralRepresentation r = integral_representation(scalar(op));
    if (json_out()) return emit(to_json(r));
    if (latex_out()) {
      out_ << to_latex(r) << "\n";
      return;
    }
    out_ << "q(x) = -1/(2 pi)^" << r.dimension << " int dk exp(i k.x) int_boundary eta(y,k) / D(k)\n";
    out_ << "D(k) = " << r.denominator.to_string() << "\n";
    for (std::size_t j = 0; j < r.eta.fluxes.size(); ++j)
      out_ << "a_" << r.axes[j] << " = " << to_text(r.eta.fluxes[j], r.eta.naming) << "\n";
  }

  void verify_cmd() {
    if (cfg_.case_name.empty()) throw DomainError("verify needs --case (wave, heat, biharmonic, stokes)");
    if (!cfg_.op_text.empty() || !cfg_.op_file.empty()) throw DomainError("verify takes --case, not --op");
    NumericCase c = numeric_case(cfg_.case_name);
    if (!cfg_.solution.empty()) {
      auto parts = split(cfg_.solution, ';');
      if (parts.size() != c.solution.fields.size())
        throw DomainError("solution needs " + std::to_string(c.solution.fields.size()) + " field expression(s)");
      c.solution.label = cfg_.solution;
      for (std::size_t i = 0; i < parts.size(); ++i) {
        source_ = parts[i];
        c.solution.fields[i] = parse_expr(source_, c.solution.axes);
      }
      source_.clear();
    }
    if (cfg_.nodes < 1) throw DomainError("--nodes must be at least 1");
    CaseReport r = run_case(c, plan_for(c.op), cfg_.nodes, cfg_.seed);
    const bool pass = r.pde <= kPdeTolerance && r.boundary.relative() <= kRelativeTolerance;
    if (json_out()) {
      emit({{"case", c.name},
            {"solution", c.solution.label},
            {"nodes", cfg_.nodes},
            {"pde_residual", r.pde},
            {"adjoint_defect", r.adjoint},
            {"boundary", to_json(r.boundary, header_of(c.op).axes)},
            {"pass", pass}});
    } else {
      const char* lead = latex_out() ? "% " : "";
      out_ << lead << "case " << c.name << ", q = " << c.solution.label << ", " << cfg_.nodes << " nodes/axis\n"
           << lead << "pde residual: " << sci(r.pde) << "\n"
           << lead << "boundary residual: " << sci(std::abs(r.boundary.residual)) << " (scale " << sci(r.boundary.scale)
           << ", relative " << sci(r.boundary.relative()) << ")\n"
           << lead << "result: " << (pass ? "pass" : "fail") << "\n";
    }
    if (!pass) throw CheckFailed{"global relation residual above tolerance"};
  }

  void stokes_cmd() {
    AnyOperator op = load_operator("stokes");
    if (!std::holds_alternative<MatrixPDO>(op)) throw DomainError("stokes needs a matrix operator");
    const MatrixPDO& m = std::get<MatrixPDO>(op);
    const bool catalog = cfg_.op_text.empty() && cfg_.op_file.empty();
    DivergenceDecomposition d = checked_decompose(op, plan_for(op));
    FundamentalForm f = assemble(d);
    SpinorTriple s = spinor_isotropic(Poly::variable("xi1"), Poly::variable("xi2"));
    const SpectralPoly iso = isotropy_defect(s);
    const auto parity = parity_defect(s);
    const bool parity_ok = std::all_of(parity.begin(), parity.end(), [](const Poly& p) { return p.is_zero(); });
    AdjointCheck adj = verify_stokes_adjoint(m, s);
    std::optional<CaseReport> numeric;
    if (catalog) numeric = run_case(numeric_case("stokes"), cfg_.nodes, cfg_.seed);
    const bool numeric_ok =
        !numeric || (numeric->pde <= kPdeTolerance && numeric->boundary.relative() <= kRelativeTolerance);
    const bool pass = iso.is_zero() && parity_ok && adj.pass && numeric_ok;

    if (json_out()) {
      json residual = json::array(), par = json::array();
      for (const auto& r : adj.residual) residual.push_back(r.to_string());
      for (const auto& p : parity) par.push_back(p.to_string());
      json j = {{"decomposition", to_json(d)},
                {"form", to_json(f)},
                {"verified", true},
                {"spinor", {{"k", {s.k[0].to_string(), s.k[1].to_string(), s.k[2].to_string()}},
                            {"isotropy", iso.to_string()},
                            {"parity", par}}},
                {"adjoint", {{"pass", adj.pass}, {"residual", residual}}},
                {"pass", pass}};
      if (numeric) j["numeric"] = to_json(numeric->boundary, header_of(op).axes);
      emit(j);
    } else {
      const bool tex = latex_out();
      for (std::size_t j = 0; j < d.fluxes.size(); ++j) {
        std::string label = j == 0 ? (tex ? "\\rho" : "rho") : (tex ? "J^{" : "J") + std::to_string(j) + (tex ? "}" : "");
        out_ << label << " = " << (tex ? to_latex(d.fluxes[j], d.naming) : to_text(d.fluxes[j], d.naming)) << "\n";
      }
      const char* lead = tex ? "% " : "";
      out_ << lead << "verified: true\n"
           << lead << "k.k = " << iso.to_string() << "\n"
           << lead << "k(-xi) = k(xi): " << (parity_ok ? "yes" : "no") << "\n"
           << lead << "adjoint equations: " << (adj.pass ? "pass" : "fail") << "\n";
      if (numeric)
        out_ << lead << "numeric relative residual: " << sci(numeric->boundary.relative()) << "\n";
    }
    if (!pass) throw CheckFailed{"Stokes checks failed"};
  }

  const RunConfig& cfg_;
  std::ostream& out_;
  std::string source_;
};

void caret(std::ostream& err, const std::string& src, std::size_t pos) {
  if (src.empty() || src.find('\n') != std::string::npos || pos > src.size()) return;
  err << "  " << src << "\n  " << std::string(pos, ' ') << "^\n";
}

}  // namespace

int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
  if (config.format != "json" && config.format != "latex" && config.format != "text") {
    err << "error: unknown format '" << config.format << "'\n";
    return static_cast<int>(Exit::Usage);
  }
  Runner runner(config, out);
  try {
    runner.run();
    return static_cast<int>(Exit::Ok);
  } catch (const CheckFailed& e) {
    err << "check failed: " << e.message << "\n";
    return static_cast<int>(Exit::VerificationFailed);
  } catch (const VerificationError& e) {
    err << "verification failed: " << e.what() << "\n";
    return static_cast<int>(Exit::VerificationFailed);
  } catch (const ParseError& e) {
    err << e.what() << "\n";
    caret(err, runner.source(), e.position());
    return static_cast<int>(Exit::Usage);
  } catch (const EnumerationLimitError& e) {
    err << "error: " << e.what() << " (raise KFORM_ENUM_CEILING to allow more)\n";
    return static_cast<int>(Exit::Usage);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return static_cast<int>(Exit::Usage);
  }
}

int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Fundamental forms of constant-coefficient linear PDEs"};
  app.require_subcommand(1);
  app.fallthrough();
  RunConfig cfg;

  app.add_option("--op", cfg.op_text, "operator text, e.g. \"axes x,t; Dt^2 - Dx^2\"");
  app.add_option("--op-file", cfg.op_file, "file holding operator text or matrix JSON");
  app.add_option("--case", cfg.case_name, "catalog operator or numeric case");
  app.add_option("--format", cfg.format, "output format")->check(CLI::IsMember({"json", "latex", "text"}));
  app.add_option("--path", cfg.path, "reduction path per term, e.g. x,y,z");
  app.add_option("--transfer", cfg.transfer, "transferred odd axes per term");
  app.add_option("--exchange", cfg.exchange, "exchange pairs q_axis:qt_axis per term");
  app.add_option("--box", cfg.box, "box, e.g. x=0:l,t=0:T");
  app.add_option("--spectral-sub", cfg.spectral_sub, "spectral substitution, e.g. s_x=k,s_t=-k");
  app.add_option("--solution", cfg.solution, "manufactured solution for verify (';' between fields)");
  app.add_option("--nodes", cfg.nodes, "Gauss-Legendre nodes per axis")->check(CLI::PositiveNumber);
  app.add_option("--seed", cfg.seed, "random seed");

  const std::vector<std::pair<const char*, const char*>> commands{
      {"decompose", "divergence decomposition and fundamental form"},
      {"count", "number of constructible forms"},
      {"enumerate", "all plans with an equivalence summary"},
      {"constraint", "adjoint constraint variety"},
      {"global-relation", "global relation on a box"},
      {"represent", "integral representation"},
      {"verify", "numeric check of a global relation"},
      {"stokes", "Stokes system pipeline"}};
  for (const auto& [name, help] : commands) app.add_subcommand(name, help);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? 0 : static_cast<int>(Exit::Usage);
  }
  cfg.command = app.get_subcommands().front()->get_name();
  return run(cfg, out, err);
}

}  // namespace kform::cli
