#include "strongnet/backbone.hpp"

#include <algorithm>

#include "strongnet/errors.hpp"

namespace strongnet {

bool Backbone::contains(Literal lit) const {
  return std::binary_search(literals.begin(), literals.end(), lit);
}

BackboneSolver::BackboneSolver(const CnfFormula& formula, const BackendFactory& factory)
    : engine_(formula, factory) {}

Backbone BackboneSolver::compute(std::span<const Literal> assumptions,
                                 std::span<const Var> order) {
  const std::size_t calls_before = engine_.solve_calls();
  const Var n = engine_.num_vars();

  std::vector<Literal> query(assumptions.begin(), assumptions.end());
  SatOutcome first = engine_.solve(query);
  if (!first.sat()) {
    last_calls_ = engine_.solve_calls() - calls_before;
    throw UnsatisfiableError("formula is unsatisfiable under the given assumptions");
  }

  // candidate[v] holds the value v takes in every model seen so far.
  std::vector<std::optional<bool>> candidate(n + 1);
  for (Var v = 1; v <= n; ++v) candidate[v] = first.model->value(v);

  std::vector<bool> confirmed(n + 1, false);
  for (Literal lit : assumptions) confirmed[lit.var()] = true;

  std::vector<Var> default_order;
  if (order.empty()) {
    default_order.resize(n);
    for (Var v = 1; v <= n; ++v) default_order[v - 1] = v;
    order = default_order;
  }

  const std::size_t base = query.size();
  for (Var v : order) {
    if (v == 0 || v > n) throw InvalidArgument("candidate order names an unknown variable");
    if (!candidate[v] || confirmed[v]) continue;
    Literal lit(v, *candidate[v]);
    query.push_back(~lit);
    SatOutcome outcome = engine_.solve(query);
    query.pop_back();
    if (!outcome.sat()) {
      confirmed[v] = true;
      query.push_back(lit);  // entailed, so it only narrows later searches
      continue;
    }
    for (Var u = 1; u <= n; ++u) {
      if (candidate[u] && outcome.model->value(u) != *candidate[u]) candidate[u].reset();
    }
  }
  query.resize(base);

  // Candidates missing from a partial `order` are untested and excluded.
  Backbone result;
  for (Var v = 1; v <= n; ++v) {
    if (candidate[v] && confirmed[v]) result.literals.emplace_back(v, *candidate[v]);
  }
  last_calls_ = engine_.solve_calls() - calls_before;
  return result;
}

Backbone compute_backbone(const CnfFormula& formula, std::span<const Literal> assumptions) {
  BackboneSolver solver(formula);
  return solver.compute(assumptions);
}

}  // namespace strongnet
