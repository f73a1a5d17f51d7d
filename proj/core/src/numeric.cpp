#include "kform/numeric.hpp"

#include <algorithm>
#include <random>

#include <gsl/gsl_integration.h>

#include "kform/catalog.hpp"
#include "kform/error.hpp"
#include "lexer.hpp"

namespace kform {

struct Expr::Node {
  Kind kind;
  Complex value;
  std::size_t axis = 0;
  unsigned exponent = 0;
  std::shared_ptr<const Node> a, b;
};

namespace {

using NodePtr = std::shared_ptr<const Expr::Node>;

NodePtr make_node(Expr::Kind kind, Complex value = 0, std::size_t axis = 0, unsigned exponent = 0, NodePtr a = nullptr,
                  NodePtr b = nullptr) {
  return std::make_shared<const Expr::Node>(Expr::Node{kind, value, axis, exponent, std::move(a), std::move(b)});
}

bool is_const(const std::shared_ptr<const Expr::Node>& n, Complex v) {
  return n->kind == Expr::Kind::Const && n->value == v;
}

}  // namespace

Expr Expr::constant(Complex c) { return Expr(make_node(Kind::Const, c)); }

Expr Expr::variable(std::size_t axis) { return Expr(make_node(Kind::Var, 0, axis)); }

Expr Expr::exp(const Expr& a) {
  if (a.kind() == Kind::Const) return constant(std::exp(a.node_->value));
  return Expr(make_node(Kind::Exp, 0, 0, 0, a.node_));
}

Expr Expr::sin(const Expr& a) {
  if (a.kind() == Kind::Const) return constant(std::sin(a.node_->value));
  return Expr(make_node(Kind::Sin, 0, 0, 0, a.node_));
}

Expr Expr::cos(const Expr& a) {
  if (a.kind() == Kind::Const) return constant(std::cos(a.node_->value));
  return Expr(make_node(Kind::Cos, 0, 0, 0, a.node_));
}

Expr Expr::pow(unsigned e) const {
  if (e == 0) return constant(1);
  if (e == 1) return *this;
  if (kind() == Kind::Const) return constant(std::pow(node_->value, static_cast<int>(e)));
  return Expr(make_node(Kind::Pow, 0, 0, e, node_));
}

Expr operator+(const Expr& a, const Expr& b) {
  if (a.is_zero()) return b;
  if (b.is_zero()) return a;
  if (a.kind() == Expr::Kind::Const && b.kind() == Expr::Kind::Const)
    return Expr::constant(a.node_->value + b.node_->value);
  return Expr(make_node(Expr::Kind::Add, 0, 0, 0, a.node_, b.node_));
}

Expr operator-(const Expr& a, const Expr& b) { return a + (-b); }

Expr operator*(const Expr& a, const Expr& b) {
  if (a.is_zero() || b.is_zero()) return Expr::constant(0);
  if (is_const(a.node_, 1.0)) return b;
  if (is_const(b.node_, 1.0)) return a;
  if (a.kind() == Expr::Kind::Const && b.kind() == Expr::Kind::Const)
    return Expr::constant(a.node_->value * b.node_->value);
  return Expr(make_node(Expr::Kind::Mul, 0, 0, 0, a.node_, b.node_));
}

Expr Expr::operator-() const {
  if (kind() == Kind::Const) return constant(-node_->value);
  if (kind() == Kind::Neg) return Expr(node_->a);
  return Expr(make_node(Kind::Neg, 0, 0, 0, node_));
}

Expr::Kind Expr::kind() const { return node_->kind; }

bool Expr::is_zero() const { return is_const(node_, 0.0); }

Expr Expr::derivative(std::size_t k) const {
  const Expr a = node_->a ? Expr(node_->a) : Expr::constant(0);
  const Expr b = node_->b ? Expr(node_->b) : Expr::constant(0);
  switch (node_->kind) {
    case Kind::Const: return constant(0);
    case Kind::Var: return constant(node_->axis == k ? 1 : 0);
    case Kind::Add: return a.derivative(k) + b.derivative(k);
    case Kind::Mul: return a.derivative(k) * b + a * b.derivative(k);
    case Kind::Neg: return -a.derivative(k);
    case Kind::Pow: return constant(node_->exponent) * a.pow(node_->exponent - 1) * a.derivative(k);
    case Kind::Exp: return *this * a.derivative(k);
    case Kind::Sin: return Expr::cos(a) * a.derivative(k);
    case Kind::Cos: return -(Expr::sin(a) * a.derivative(k));
  }
  return constant(0);
}

Expr Expr::derivative(const MultiIndex& alpha) const {
  Expr out = *this;
  for (std::size_t k = 0; k < alpha.dimension(); ++k)
    for (int r = 0; r < alpha[k]; ++r) out = out.derivative(k);
  return out;
}

Complex Expr::evaluate(const std::vector<double>& x) const {
  const Node& n = *node_;
  switch (n.kind) {
    case Kind::Const: return n.value;
    case Kind::Var: return x.at(n.axis);
    case Kind::Add: return Expr(n.a).evaluate(x) + Expr(n.b).evaluate(x);
    case Kind::Mul: return Expr(n.a).evaluate(x) * Expr(n.b).evaluate(x);
    case Kind::Neg: return -Expr(n.a).evaluate(x);
    case Kind::Pow: return std::pow(Expr(n.a).evaluate(x), static_cast<int>(n.exponent));
    case Kind::Exp: return std::exp(Expr(n.a).evaluate(x));
    case Kind::Sin: return std::sin(Expr(n.a).evaluate(x));
    case Kind::Cos: return std::cos(Expr(n.a).evaluate(x));
  }
  return 0;
}

std::string Expr::to_string(const std::vector<std::string>& axes) const {
  const Node& n = *node_;
  auto sub = [&](const std::shared_ptr<const Node>& p) { return Expr(p).to_string(axes); };
  switch (n.kind) {
    case Kind::Const: {
      if (n.value.imag() == 0) return std::to_string(n.value.real());
      return "(" + std::to_string(n.value.real()) + "+" + std::to_string(n.value.imag()) + "i)";
    }
    case Kind::Var: return axes.at(n.axis);
    case Kind::Add: return "(" + sub(n.a) + " + " + sub(n.b) + ")";
    case Kind::Mul: return sub(n.a) + "*" + sub(n.b);
    case Kind::Neg: return "-(" + sub(n.a) + ")";
    case Kind::Pow: return "(" + sub(n.a) + ")^" + std::to_string(n.exponent);
    case Kind::Exp: return "exp(" + sub(n.a) + ")";
    case Kind::Sin: return "sin(" + sub(n.a) + ")";
    case Kind::Cos: return "cos(" + sub(n.a) + ")";
  }
  return "?";
}

namespace {

using detail::Tok;
using detail::Token;
using detail::TokenStream;

class SolutionParser {
 public:
  SolutionParser(TokenStream& ts, const std::vector<std::string>& axes, const std::map<std::string, Complex>& constants)
      : ts_(ts), axes_(axes), constants_(constants) {}

  Expr expression() {
    Expr acc = term();
    while (true) {
      if (ts_.accept(Tok::Plus)) {
        acc = acc + term();
      } else if (ts_.accept(Tok::Minus)) {
        acc = acc - term();
      } else {
        return acc;
      }
    }
  }

 private:
  Expr term() {
    Expr acc = factor();
    while (true) {
      if (ts_.accept(Tok::Star)) {
        acc = acc * factor();
      } else if (ts_.peek().kind == Tok::Slash) {
        std::size_t pos = ts_.next().pos;
        Expr d = factor();
        if (d.kind() != Expr::Kind::Const) throw ParseError(pos, "division is only allowed by constants");
        Complex v = d.evaluate({});
        if (v == Complex(0)) throw ParseError(pos, "division by zero");
        acc = acc * Expr::constant(1.0 / v);
      } else {
        return acc;
      }
    }
  }

  Expr factor() {
    if (ts_.accept(Tok::Minus)) return -factor();
    if (ts_.accept(Tok::Plus)) return factor();
    Expr base = primary();
    if (ts_.accept(Tok::Caret)) {
      const Token& e = ts_.peek();
      if (e.kind != Tok::Number || e.imaginary || e.text.find_first_not_of("0123456789") != std::string::npos)
        ts_.fail({"non-negative integer exponent"});
      ts_.next();
      base = base.pow(static_cast<unsigned>(std::stoul(e.text)));
    }
    return base;
  }

  Expr primary() {
    const Token t = ts_.peek();
    switch (t.kind) {
      case Tok::Number: {
        ts_.next();
        double v = std::stod(t.text);
        return Expr::constant(t.imaginary ? Complex(0, v) : Complex(v, 0));
      }
      case Tok::Ident: {
        ts_.next();
        if (t.text == "i") return Expr::constant(Complex(0, 1));
        if (t.text == "exp" || t.text == "sin" || t.text == "cos") {
          ts_.expect(Tok::LParen);
          Expr arg = expression();
          ts_.expect(Tok::RParen);
          return t.text == "exp" ? Expr::exp(arg) : t.text == "sin" ? Expr::sin(arg) : Expr::cos(arg);
        }
        for (std::size_t k = 0; k < axes_.size(); ++k)
          if (axes_[k] == t.text) return Expr::variable(k);
        if (auto it = constants_.find(t.text); it != constants_.end()) return Expr::constant(it->second);
        std::vector<std::string> expected = axes_;
        for (const auto& [name, _] : constants_) expected.push_back(name);
        expected.insert(expected.end(), {"exp", "sin", "cos", "i"});
        throw ParseError(t.pos, "unknown name '" + t.text + "'", expected);
      }
      case Tok::LParen: {
        ts_.next();
        Expr inner = expression();
        ts_.expect(Tok::RParen);
        return inner;
      }
      default:
        ts_.fail({"number", "identifier", "'('"});
    }
  }

  TokenStream& ts_;
  const std::vector<std::string>& axes_;
  const std::map<std::string, Complex>& constants_;
};

struct GaussLegendre {
  std::vector<double> x, w;
};

GaussLegendre nodes(std::size_t n, double a, double b) {
  gsl_integration_glfixed_table* table = gsl_integration_glfixed_table_alloc(n);
  if (!table) throw DomainError("cannot build a Gauss-Legendre rule with " + std::to_string(n) + " nodes");
  GaussLegendre g;
  for (std::size_t i = 0; i < n; ++i) {
    double xi = 0, wi = 0;
    gsl_integration_glfixed_point(a, b, i, &xi, &wi, table);
    g.x.push_back(xi);
    g.w.push_back(wi);
  }
  gsl_integration_glfixed_table_free(table);
  return g;
}

void check_box(const std::vector<Interval>& box, std::size_t n) {
  if (box.size() != n) throw DimensionError("box needs one interval per axis");
  for (const auto& i : box)
    if (!(i.hi > i.lo)) throw DomainError("degenerate or reversed box interval");
}

}  // namespace

Expr parse_expr(std::string_view src, const std::vector<std::string>& axes, const std::map<std::string, Complex>& constants) {
  TokenStream ts(detail::tokenize(src));
  SolutionParser p(ts, axes, constants);
  Expr e = p.expression();
  if (ts.peek().kind != Tok::End) ts.fail({"'+'", "'-'", "'*'", "end of input"});
  return e;
}

BoundaryResidual boundary_residual(const SubstitutedForm& f, const std::map<std::string, Complex>& point,
                                   const ManufacturedSolution& q, const std::vector<Interval>& box,
                                   const QuadratureSpec& quad) {
  const std::size_t n = f.dimension;
  check_box(box, n);
  if (quad.nodes.size() != n) throw DomainError("quadrature needs one node count per axis");
  for (auto c : quad.nodes)
    if (c < 1) throw DomainError("quadrature node count must be at least 1");
  if (q.fields.empty()) throw DomainError("solution has no fields");

  std::vector<Complex> kappa;
  for (const auto& k : f.adjoint.wavevector) kappa.push_back(k.evaluate(point));
  std::vector<GaussLegendre> rules;
  for (std::size_t k = 0; k < n; ++k) rules.push_back(nodes(quad.nodes[k], box[k].lo, box[k].hi));

  BoundaryResidual out;
  for (std::size_t j = 0; j < n; ++j) {
    std::vector<std::pair<Complex, Expr>> integrand;
    for (const auto& [t, c] : f.fluxes[j].terms())
      integrand.emplace_back(c.evaluate(point), q.fields.at(t.field).derivative(t.deriv));
    for (FaceEnd end : {FaceEnd::Lo, FaceEnd::Hi}) {
      std::vector<double> x(n);
      x[j] = end == FaceEnd::Lo ? box[j].lo : box[j].hi;
      std::vector<std::size_t> idx(n, 0);
      Complex sum = 0;
      while (true) {
        double weight = 1;
        for (std::size_t k = 0; k < n; ++k) {
          if (k == j) continue;
          x[k] = rules[k].x[idx[k]];
          weight *= rules[k].w[idx[k]];
        }
        Complex phase = 0;
        for (std::size_t k = 0; k < n; ++k) phase += kappa[k] * x[k];
        Complex value = 0;
        for (const auto& [c, e] : integrand) value += c * e.evaluate(x);
        sum += weight * value * std::exp(Complex(0, 1) * phase);
        std::size_t k = 0;
        for (; k < n; ++k) {
          if (k == j) continue;
          if (++idx[k] < rules[k].x.size()) break;
          idx[k] = 0;
        }
        if (k == n) break;
      }
      Complex v = end == FaceEnd::Hi ? sum : -sum;
      out.faces.push_back({j, end, v});
      out.residual += v;
      out.scale = std::max(out.scale, std::abs(v));
    }
  }
  return out;
}

double pde_residual(const AnyOperator& op, const std::map<std::string, Complex>& params, const ManufacturedSolution& q,
                    const std::vector<Interval>& box, std::size_t points, std::uint64_t seed) {
  const std::size_t n = header_of(op).dimension();
  check_box(box, n);
  std::vector<std::vector<std::pair<Complex, Expr>>> rows;
  const auto terms = operator_terms(op);
  std::size_t m = 0;
  for (const auto& t : terms) m = std::max({m, t.qt_field + 1, t.q_field + 1});
  rows.resize(m);
  for (const auto& t : terms) rows[t.qt_field].emplace_back(t.coeff.evaluate(params), q.fields.at(t.q_field).derivative(t.alpha));
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  double worst = 0;
  std::vector<double> x(n);
  for (std::size_t p = 0; p < points; ++p) {
    for (std::size_t k = 0; k < n; ++k) x[k] = box[k].lo + (box[k].hi - box[k].lo) * u(rng);
    for (const auto& row : rows) {
      Complex v = 0;
      for (const auto& [c, e] : row) v += c * e.evaluate(x);
      worst = std::max(worst, std::abs(v));
    }
  }
  return worst;
}

double adjoint_defect(const AnyOperator& op, const ExponentialAdjoint& adj, const std::map<std::string, Complex>& point) {
  double worst = 0;
  for (const auto& r : adjoint_residual(op, adj)) worst = std::max(worst, std::abs(r.evaluate(point)));
  return worst;
}

namespace {

ManufacturedSolution scalar_solution(const std::string& label, const std::vector<std::string>& axes,
                                     const std::string& text) {
  return {label, axes, {parse_expr(text, axes)}};
}

constexpr double kStokesNu = 0.5;

}  // namespace

std::vector<ManufacturedSolution> builtin_solutions(const std::string& tag) {
  if (tag == "wave") return {scalar_solution("(x-t)^3+(x+t)^2", {"x", "t"}, "(x - t)^3 + (x + t)^2")};
  if (tag == "heat") return {scalar_solution("exp(x+t)", {"x", "t"}, "exp(x + t)")};
  if (tag == "biharmonic") return {scalar_solution("x^3-3xy^2+z", {"x", "y", "z"}, "x^3 - 3*x*y^2 + z")};
  if (tag == "stokes") {
    const std::vector<std::string> axes{"t", "x", "y", "z"};
    std::map<std::string, Complex> c{{"nu", kStokesNu}};
    return {{"u=(exp(-nu t) sin y,0,0), p=0",
             axes,
             {parse_expr("exp(-nu*t)*sin(y)", axes, c), Expr::constant(0), Expr::constant(0), Expr::constant(0)}}};
  }
  throw DomainError("unknown solution tag '" + tag + "'");
}

std::vector<std::string> numeric_case_names() { return {"wave", "heat", "biharmonic", "stokes"}; }

NumericCase numeric_case(const std::string& tag) {
  NumericCase c{tag, catalog_operator(tag), {}, {}, {}, {}};
  c.solution = builtin_solutions(tag).front();
  const auto& h = header_of(c.op);
  c.box.assign(h.dimension(), Interval{0, 1});
  if (tag == "stokes") {
    const MatrixPDO& m = std::get<MatrixPDO>(c.op);
    SpinorTriple s = spinor_isotropic(Poly(GaussianRational(mpq_class(1, 2))), Poly(GaussianRational(mpq_class(1, 3))),
                                      Poly(GaussianRational(mpq_class(1, 5))));
    c.adjoint = stokes_adjoint(m, s);
    c.point = {{"nu", kStokesNu}};
    return c;
  }
  const auto names = spectral_names(h);
  c.adjoint = exponential_adjoint(names, SymbolSign::Plus);
  if (tag == "wave") {
    c.point = {{"s_x", 1.0}, {"s_t", -1.0}};
  } else if (tag == "heat") {
    c.point = {{"s_x", 1.0}, {"s_t", Complex(0, -1)}};
  } else {
    c.point = {{"s_x", 0.6}, {"s_y", 0.8}, {"s_z", Complex(0, 1)}};
  }
  return c;
}

CaseReport run_case(const NumericCase& c, const DecompositionPlan& plan, std::size_t nodes, std::uint64_t seed) {
  CaseReport r;
  std::map<std::string, Complex> params;
  for (const auto& p : header_of(c.op).params) params[p] = c.point.at(p);
  r.pde = pde_residual(c.op, params, c.solution, c.box, 50, seed);
  r.adjoint = adjoint_defect(c.op, c.adjoint, c.point);
  if (r.adjoint > 1e-12) throw DomainError("spectral point is off the constraint variety");
  SubstitutedForm f = substitute_exponential(assemble(decompose(c.op, plan)), c.adjoint);
  r.boundary = boundary_residual(f, c.point, c.solution, c.box, QuadratureSpec::uniform(f.dimension, nodes));
  return r;
}

CaseReport run_case(const NumericCase& c, std::size_t nodes, std::uint64_t seed) {
  return run_case(c, default_plan(c.op), nodes, seed);
}

}  // namespace kform
