#include "strongnet/sat_engine.hpp"

#include <string>

#include "cdcl_solver.hpp"
#include "strongnet/errors.hpp"

namespace strongnet {

std::vector<Literal> Model::literals() const {
  std::vector<Literal> out;
  out.reserve(values_.size());
  for (Var v = 1; v <= num_vars(); ++v) out.emplace_back(v, value(v));
  return out;
}

std::unique_ptr<SolverBackend> make_cdcl_backend() {
  return std::make_unique<detail::CdclSolver>();
}

SatEngine::SatEngine(const CnfFormula& formula, const BackendFactory& factory)
    : num_vars_(formula.num_vars()),
      backend_(factory ? factory() : make_cdcl_backend()) {
  backend_->reserve_vars(num_vars_);
  for (const Clause& clause : formula.clauses()) backend_->add_clause(clause);
  if (formula.has_empty_clause()) backend_->add_clause({});
}

SatOutcome SatEngine::solve(std::span<const Literal> assumptions) {
  for (Literal lit : assumptions) {
    if (lit.var() == 0 || lit.var() > num_vars_) {
      throw InvalidArgument("assumption " + std::to_string(lit.to_dimacs()) +
                            " out of range for " + std::to_string(num_vars_) + " variables");
    }
  }
  ++solve_calls_;
  SatOutcome outcome;
  if (!backend_->solve(assumptions)) return outcome;
  outcome.status = SatStatus::Sat;
  std::vector<bool> values(num_vars_);
  for (Var v = 1; v <= num_vars_; ++v) values[v - 1] = backend_->model_value(v);
  outcome.model = Model(std::move(values));
  return outcome;
}

void SatEngine::add_clause(std::span<const Literal> clause) {
  for (Literal lit : clause) {
    if (lit.var() == 0 || lit.var() > num_vars_) {
      throw InvalidArgument("clause literal " + std::to_string(lit.to_dimacs()) +
                            " out of range");
    }
  }
  backend_->add_clause(clause);
}

SatOutcome solve_under_assumptions(const CnfFormula& formula,
                                   std::span<const Literal> assumptions) {
  SatEngine engine(formula);
  return engine.solve(assumptions);
}

void for_each_model(const CnfFormula& formula,
                    const std::function<bool(const Model&)>& visit, Var var_limit) {
  if (formula.num_vars() > var_limit) {
    throw InvalidArgument("model enumeration refused: " + std::to_string(formula.num_vars()) +
                          " variables exceed the limit of " + std::to_string(var_limit));
  }
  SatEngine engine(formula);
  std::vector<Literal> blocking;
  for (;;) {
    SatOutcome outcome = engine.solve();
    if (!outcome.sat()) return;
    if (!visit(*outcome.model)) return;
    blocking.clear();
    for (Literal lit : outcome.model->literals()) blocking.push_back(~lit);
    if (blocking.empty()) return;  // zero variables: the single empty model
    engine.add_clause(blocking);
  }
}

std::vector<Model> enumerate_models(const CnfFormula& formula, Var var_limit) {
  std::vector<Model> models;
  for_each_model(formula, [&](const Model& m) {
    models.push_back(m);
    return true;
  }, var_limit);
  return models;
}

}  // namespace strongnet
