#include "kform/decomposition.hpp"

#include <algorithm>
#include <cstdlib>
#include <string>

#include "kform/error.hpp"

namespace kform {

namespace {

void require(bool identity, const char* what) {
  if (!identity) throw VerificationError(std::string("identity check failed: ") + what);
}

BilinearExpr divergence(const std::vector<BilinearExpr>& fluxes) {
  BilinearExpr out(fluxes.empty() ? 0 : fluxes.front().dimension());
  for (std::size_t j = 0; j < fluxes.size(); ++j) out += partial(fluxes[j], j);
  return out;
}

void require_axis(std::size_t k, std::size_t n) {
  if (k >= n) throw DimensionError("axis " + std::to_string(k) + " out of range for dimension " + std::to_string(n));
}

MultiIndex from_axes(std::size_t n, const std::vector<std::size_t>& axes) {
  MultiIndex m(n);
  for (auto k : axes) m = m.raised(k);
  return m;
}

mpz_class factorial(unsigned long n) {
  mpz_class out;
  mpz_fac_ui(out.get_mpz_t(), n);
  return out;
}

}  // namespace

BilinearExpr Pairing::expand() const {
  BilinearExpr e = kind == PairingKind::Bracket ? bracket(alpha, beta, q_field, qt_field)
                                                : brace(alpha, beta, q_field, qt_field);
  return e * coeff;
}

BilinearExpr Product::expand() const { return BilinearExpr::product(coeff, dq, dqt, q_field, qt_field); }

ReduceResult reduce_step(const Pairing& object, std::size_t k) {
  require_same_dimension(object.alpha, object.beta);
  require_axis(k, object.alpha.dimension());
  if (object.alpha[k] < 1) throw PlanError("reduction step on an axis with no derivative left");
  Pairing peeled = object;
  peeled.alpha = object.alpha.lowered(k);
  ReduceResult r{{k, peeled.expand()}, peeled};
  r.remainder.beta = object.beta.raised(k);
  r.remainder.coeff = -object.coeff;
  require(partial(r.flux.flux, k) + r.remainder.expand() == object.expand(), "reduction step");
  return r;
}

AxisFlux brace_collapse(const MultiIndex& beta, std::size_t k, const Coeff& c, std::size_t q_field,
                        std::size_t qt_field) {
  require_axis(k, beta.dimension());
  AxisFlux f{k, BilinearExpr::product(c, beta, beta, q_field, qt_field)};
  require(partial(f.flux, k) == brace(beta, beta.raised(k), q_field, qt_field) * c, "brace collapse");
  return f;
}

AxisFlux brace_collapse(const Pairing& object) {
  if (object.kind != PairingKind::Brace) throw PlanError("collapse needs a brace");
  require_same_dimension(object.alpha, object.beta);
  for (std::size_t k = 0; k < object.alpha.dimension(); ++k) {
    if (object.alpha == object.beta.raised(k))
      return brace_collapse(object.beta, k, object.coeff, object.q_field, object.qt_field);
    if (object.beta == object.alpha.raised(k))
      return brace_collapse(object.alpha, k, object.coeff, object.q_field, object.qt_field);
  }
  throw PlanError("brace " + object.alpha.to_string() + "," + object.beta.to_string() +
                  " is not of the form {b, b+e_k}");
}

AxisFlux product_collapse(const Product& p, std::size_t k) {
  require_axis(k, p.dq.dimension());
  AxisFlux f{k, p.expand()};
  BilinearExpr target = BilinearExpr::product(p.coeff, p.dq.raised(k), p.dqt, p.q_field, p.qt_field) +
                        BilinearExpr::product(p.coeff, p.dq, p.dqt.raised(k), p.q_field, p.qt_field);
  require(partial(f.flux, k) == target, "product collapse");
  return f;
}

ExchangeResult exchange_step(const Product& term, std::size_t k, std::size_t j) {
  require_same_dimension(term.dq, term.dqt);
  require_axis(k, term.dq.dimension());
  require_axis(j, term.dq.dimension());
  if (term.dq[k] < 1) throw PlanError("exchange: no derivative on q along the requested axis");
  if (term.dqt[j] < 1) throw PlanError("exchange: no derivative on q~ along the requested axis");
  MultiIndex a = term.dq.lowered(k);
  MultiIndex b = term.dqt.lowered(j).raised(k);
  ExchangeResult r{
      {term.coeff, a.raised(j), b, term.q_field, term.qt_field},
      {k, BilinearExpr::product(term.coeff, a, term.dqt, term.q_field, term.qt_field)},
      {j, BilinearExpr::product(-term.coeff, a, b, term.q_field, term.qt_field)},
  };
  require(r.swapped.expand() + partial(r.flux_from_q.flux, k) + partial(r.flux_from_qt.flux, j) == term.expand(),
          "exchange step");
  return r;
}

void validate_term_plan(const MultiIndex& alpha, const TermPlan& plan) {
  const std::size_t n = alpha.dimension();
  if (plan.path.target != alpha)
    throw PlanError("path target " + plan.path.target.to_string() + " does not match term " + alpha.to_string());
  for (auto k : plan.path.axes)
    if (k >= n) throw PlanError("path axis out of range");
  if (from_axes(n, plan.path.axes) != alpha.half())
    throw PlanError("path for " + alpha.to_string() + " must use axis k exactly gamma_k times");
  const auto odd = alpha.odd_axes();
  if (odd.empty()) {
    if (plan.odd && (!plan.odd->transfer.empty() || !plan.odd->exchanges.empty()))
      throw PlanError("term " + alpha.to_string() + " has no odd axes to transfer or exchange");
    return;
  }
  if (!plan.odd) throw PlanError("term " + alpha.to_string() + " needs an odd-axis plan");
  const std::size_t m = odd.size() / 2;
  const auto& t = plan.odd->transfer;
  if (t.size() != m) throw PlanError("transfer set must hold " + std::to_string(m) + " odd axes");
  std::vector<std::size_t> ts = t;
  std::sort(ts.begin(), ts.end());
  if (std::adjacent_find(ts.begin(), ts.end()) != ts.end()) throw PlanError("transfer set repeats an axis");
  for (auto k : ts)
    if (!std::binary_search(odd.begin(), odd.end(), k)) throw PlanError("transfer axis is not odd in the term");
  std::vector<std::size_t> left;
  std::set_difference(odd.begin(), odd.end(), ts.begin(), ts.end(), std::back_inserter(left));
  const auto& ex = plan.odd->exchanges;
  if (ex.size() != m) throw PlanError("exchange list must hold " + std::to_string(m) + " pairs");
  std::vector<std::size_t> from_q, from_qt;
  for (const auto& [k, j] : ex) {
    from_q.push_back(k);
    from_qt.push_back(j);
  }
  std::sort(from_q.begin(), from_q.end());
  std::sort(from_qt.begin(), from_qt.end());
  if (from_qt != ts) throw PlanError("exchanges must consume each transferred axis exactly once");
  if (std::adjacent_find(from_q.begin(), from_q.end()) != from_q.end() ||
      !std::includes(left.begin(), left.end(), from_q.begin(), from_q.end()))
    throw PlanError("exchanges must take distinct untransferred odd axes from q");
}

TermPlan default_term_plan(const MultiIndex& alpha) {
  TermPlan p;
  p.path.target = alpha;
  const MultiIndex g = alpha.half();
  for (std::size_t k = 0; k < alpha.dimension(); ++k)
    for (int r = 0; r < g[k]; ++r) p.path.axes.push_back(k);
  const auto odd = alpha.odd_axes();
  if (!odd.empty()) {
    const std::size_t m = odd.size() / 2;
    OddPlan o;
    o.transfer.assign(odd.begin(), odd.begin() + static_cast<long>(m));
    for (std::size_t i = 0; i < m; ++i) o.exchanges.emplace_back(odd[m + i], odd[i]);
    p.odd = o;
  }
  return p;
}

namespace {

DecompositionPlan default_plan_for(const std::vector<OperatorTerm>& terms) {
  DecompositionPlan p;
  for (const auto& t : terms) p.terms.push_back(default_term_plan(t.alpha));
  return p;
}

// Fluxes of a single operator term along its plan, added into `fluxes`.
void decompose_term(const OperatorTerm& term, const TermPlan& plan, std::vector<BilinearExpr>& fluxes) {
  validate_term_plan(term.alpha, plan);
  const std::size_t n = term.alpha.dimension();
  const MultiIndex zero(n);
  const PairingKind kind = term.alpha.order() % 2 ? PairingKind::Brace : PairingKind::Bracket;
  Pairing obj{kind, term.alpha, zero, term.coeff, term.q_field, term.qt_field};
  const BilinearExpr target = obj.expand();
  std::vector<BilinearExpr> local(n, BilinearExpr(n));

  auto step = [&](std::size_t k) {
    ReduceResult r = reduce_step(obj, k);
    local[k] += r.flux.flux;
    obj = r.remainder;
  };
  for (auto k : plan.path.axes) step(k);
  if (plan.odd)
    for (auto k : plan.odd->transfer) step(k);

  if (plan.odd && !term.alpha.odd_axes().empty()) {
    // obj = c * pairing(gamma + L, gamma + R): split into P = c q_{g+L} q~_{g+R} and its mirror Q.
    Product p{obj.coeff, obj.alpha, obj.beta, obj.q_field, obj.qt_field};
    for (const auto& [k, j] : plan.odd->exchanges) {
      ExchangeResult r = exchange_step(p, k, j);
      local[k] += r.flux_from_q.flux;
      local[j] += r.flux_from_qt.flux;
      p = r.swapped;
    }
    if (kind == PairingKind::Bracket) {
      require(p.dq == obj.beta && p.dqt == obj.alpha, "exchange chain cancels the mirrored term");
    } else {
      // p = c q_{g+R+e_l} q~_{g+L-e_l}; with Q = c q_{g+R} q~_{g+L} the sum is d_l(c q_{g+R} q~_{g+L-e_l}).
      std::size_t l = n;
      for (std::size_t k = 0; k < n; ++k)
        if (p.dq[k] == obj.beta[k] + 1) l = k;
      require(l < n && p.dq == obj.beta.raised(l) && p.dqt.raised(l) == obj.alpha, "odd remainder shape");
      AxisFlux f = p.dqt == p.dq.lowered(l) ? brace_collapse(p.dqt, l, p.coeff, p.q_field, p.qt_field)
                                            : product_collapse({p.coeff, obj.beta, p.dqt, p.q_field, p.qt_field}, l);
      local[l] += f.flux;
    }
  } else {
    require(obj.expand().is_zero(), "even remainder vanishes");
  }
  require(divergence(local) == target, "term decomposition");
  for (std::size_t k = 0; k < n; ++k) fluxes[k] += local[k];
}

DivergenceDecomposition run(const std::vector<OperatorTerm>& terms, const DecompositionPlan& plan,
                            Naming naming, BilinearExpr rhs) {
  if (plan.terms.size() != terms.size())
    throw PlanError("plan has " + std::to_string(plan.terms.size()) + " term plans for " +
                    std::to_string(terms.size()) + " operator terms");
  const std::size_t n = naming.axes.size();
  DivergenceDecomposition d{n, std::move(naming), std::vector<BilinearExpr>(n, BilinearExpr(n)), std::move(rhs)};
  for (std::size_t i = 0; i < terms.size(); ++i) decompose_term(terms[i], plan.terms[i], d.fluxes);
  DivergenceCheck check = verify_divergence(d, d.rhs);
  if (!check.pass) throw VerificationError("decomposition failed the divergence check");
  d.verified = true;
  return d;
}

}  // namespace

DecompositionPlan default_plan(const ScalarPDO& op) { return default_plan_for(operator_terms(op)); }
DecompositionPlan default_plan(const MatrixPDO& op) { return default_plan_for(operator_terms(op)); }
DecompositionPlan default_plan(const AnyOperator& op) { return default_plan_for(operator_terms(op)); }

DivergenceDecomposition decompose(const ScalarPDO& op, const DecompositionPlan& plan) {
  return run(operator_terms(op), plan, {op.header().axes, {}}, bilinear_rhs(op));
}

DivergenceDecomposition decompose_system(const MatrixPDO& op, const DecompositionPlan& plan) {
  return run(operator_terms(op), plan, {op.header().axes, op.fields()}, system_bilinear_rhs(op));
}

DivergenceDecomposition decompose(const AnyOperator& op, const DecompositionPlan& plan) {
  if (const auto* m = std::get_if<MatrixPDO>(&op)) return decompose_system(*m, plan);
  return decompose(std::get<ScalarPDO>(op), plan);
}

DivergenceDecomposition decompose(const AnyOperator& op) { return decompose(op, default_plan(op)); }

DivergenceCheck verify_divergence(const DivergenceDecomposition& d, const BilinearExpr& rhs) {
  if (d.fluxes.size() != d.dimension || rhs.dimension() != d.dimension)
    throw DimensionError("decomposition and right-hand side differ in dimension");
  DivergenceCheck c;
  c.residual = divergence(d.fluxes) - rhs;
  c.pass = c.residual.is_zero();
  return c;
}

DivergenceCheck verify_divergence(const DivergenceDecomposition& d, const ScalarPDO& op) {
  return verify_divergence(d, bilinear_rhs(op));
}

DivergenceCheck verify_divergence(const DivergenceDecomposition& d, const MatrixPDO& op) {
  return verify_divergence(d, system_bilinear_rhs(op));
}

mpz_class sigma_count(const MultiIndex& alpha) {
  const MultiIndex g = alpha.half();
  mpz_class out = factorial(static_cast<unsigned long>(g.order()));
  for (int v : g.entries()) out /= factorial(static_cast<unsigned long>(v));
  return out;
}

mpz_class term_count(const MultiIndex& alpha) { return factorial(alpha.odd_count()) * sigma_count(alpha); }

mpz_class count_forms(const std::vector<OperatorTerm>& terms) {
  mpz_class out = 1;
  for (const auto& t : terms) out *= term_count(t.alpha);
  return out;
}

mpz_class count_forms(const AnyOperator& op) { return count_forms(operator_terms(op)); }

void PlanEnumerator::TermState::split_odd() {
  const auto odd = alpha.odd_axes();
  left.clear();
  right.clear();
  for (std::size_t i = 0; i < odd.size(); ++i) (transfer_mask[i] ? right : left).push_back(odd[i]);
}

void PlanEnumerator::TermState::reset() {
  const auto odd = alpha.odd_axes();
  path = default_term_plan(alpha).path.axes;
  transfer_mask.assign(odd.size(), false);
  std::fill(transfer_mask.begin(), transfer_mask.begin() + static_cast<long>(odd.size() / 2), true);
  split_odd();
}

bool PlanEnumerator::TermState::advance() {
  if (std::next_permutation(right.begin(), right.end())) return true;
  if (std::next_permutation(left.begin(), left.end())) return true;
  if (std::prev_permutation(transfer_mask.begin(), transfer_mask.end())) {
    split_odd();
    return true;
  }
  split_odd();
  return std::next_permutation(path.begin(), path.end());
}

TermPlan PlanEnumerator::TermState::plan() const {
  TermPlan p;
  p.path = {alpha, path};
  if (!alpha.odd_axes().empty()) {
    OddPlan o;
    o.transfer = right;
    std::sort(o.transfer.begin(), o.transfer.end());
    for (std::size_t i = 0; i < right.size(); ++i) o.exchanges.emplace_back(left[i], right[i]);
    p.odd = o;
  }
  return p;
}

PlanEnumerator::PlanEnumerator(std::vector<OperatorTerm> terms, std::uint64_t ceiling)
    : total_(count_forms(terms)) {
  if (total_ > mpz_class(std::to_string(ceiling)))
    throw EnumerationLimitError("plan count " + total_.get_str() + " exceeds the enumeration ceiling " +
                                std::to_string(ceiling));
  for (auto& t : terms) states_.push_back({std::move(t.alpha), {}, {}, {}, {}});
}

std::optional<DecompositionPlan> PlanEnumerator::next() {
  if (done_) return std::nullopt;
  if (!started_) {
    started_ = true;
    for (auto& s : states_) s.reset();
  } else {
    std::size_t i = states_.size();
    while (true) {
      if (i == 0) {
        done_ = true;
        return std::nullopt;
      }
      --i;
      if (states_[i].advance()) break;
    }
  }
  DecompositionPlan p;
  for (const auto& s : states_) p.terms.push_back(s.plan());
  return p;
}

std::vector<DecompositionPlan> enumerate_plans(const AnyOperator& op, std::uint64_t ceiling) {
  PlanEnumerator it(operator_terms(op), ceiling);
  std::vector<DecompositionPlan> out;
  while (auto p = it.next()) out.push_back(std::move(*p));
  return out;
}

std::uint64_t enumeration_ceiling_from_env() {
  const char* v = std::getenv("KFORM_ENUM_CEILING");
  if (!v || !*v) return kDefaultEnumerationCeiling;
  try {
    std::size_t used = 0;
    unsigned long long c = std::stoull(v, &used);
    if (used == std::string(v).size() && c > 0) return c;
  } catch (const std::exception&) {
  }
  return kDefaultEnumerationCeiling;
}

}  // namespace kform
