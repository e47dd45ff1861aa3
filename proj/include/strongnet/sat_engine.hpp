#pragma once

#include <cstddef>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "strongnet/formula.hpp"

namespace strongnet {

/// Total assignment over variables 1..num_vars.
class Model {
 public:
  Model() = default;
  explicit Model(std::vector<bool> values) : values_(std::move(values)) {}

  Var num_vars() const { return static_cast<Var>(values_.size()); }
  bool value(Var var) const { return values_[var - 1]; }
  bool holds(Literal lit) const { return value(lit.var()) == lit.positive(); }
  const std::vector<bool>& values() const { return values_; }
  /// One literal per variable, ascending by variable.
  std::vector<Literal> literals() const;

  friend bool operator==(const Model&, const Model&) = default;

 private:
  std::vector<bool> values_;
};

enum class SatStatus { Sat, Unsat };

struct SatOutcome {
  SatStatus status = SatStatus::Unsat;
  std::optional<Model> model;  // present iff status == Sat

  bool sat() const { return status == SatStatus::Sat; }
};

/// Seam for plugging an incremental solver behind SatEngine. Implementations
/// must accept clauses between solve calls and keep them permanently.
class SolverBackend {
 public:
  virtual ~SolverBackend() = default;

  virtual void reserve_vars(Var num_vars) = 0;
  virtual void add_clause(std::span<const Literal> clause) = 0;
  /// True iff the clause set conjoined with `assumptions` is satisfiable.
  virtual bool solve(std::span<const Literal> assumptions) = 0;
  /// Value of `var` in the model found by the last successful solve.
  virtual bool model_value(Var var) const = 0;
};

using BackendFactory = std::function<std::unique_ptr<SolverBackend>()>;

/// The built-in CDCL solver.
std::unique_ptr<SolverBackend> make_cdcl_backend();

/// Incremental satisfiability oracle over one formula. Not thread-safe; use
/// one instance per thread.
class SatEngine {
 public:
  explicit SatEngine(const CnfFormula& formula, const BackendFactory& factory = {});

  /// Throws InvalidArgument if an assumption names a variable outside the formula.
  SatOutcome solve(std::span<const Literal> assumptions = {});
  /// Adds a permanent clause (e.g. a blocking clause).
  void add_clause(std::span<const Literal> clause);

  Var num_vars() const { return num_vars_; }
  std::size_t solve_calls() const { return solve_calls_; }

 private:
  Var num_vars_;
  std::unique_ptr<SolverBackend> backend_;
  std::size_t solve_calls_ = 0;
};

SatOutcome solve_under_assumptions(const CnfFormula& formula,
                                   std::span<const Literal> assumptions);

inline constexpr Var kDefaultEnumerationLimit = 25;

/// Visits every satisfying total assignment exactly once, using blocking
/// clauses over all variables. The visitor returns false to stop early.
/// Throws InvalidArgument if num_vars exceeds `var_limit`.
void for_each_model(const CnfFormula& formula,
                    const std::function<bool(const Model&)>& visit,
                    Var var_limit = kDefaultEnumerationLimit);

std::vector<Model> enumerate_models(const CnfFormula& formula,
                                    Var var_limit = kDefaultEnumerationLimit);

}  // namespace strongnet
