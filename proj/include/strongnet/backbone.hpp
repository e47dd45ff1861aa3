#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "strongnet/formula.hpp"
#include "strongnet/sat_engine.hpp"

namespace strongnet {

/// Literals fixed in every model of a (conditioned) formula. Sorted by
/// variable, at most one literal per variable.
struct Backbone {
  std::vector<Literal> literals;

  bool contains(Literal lit) const;
  friend bool operator==(const Backbone&, const Backbone&) = default;
};

/// Iterative backbone computation by model intersection.
///
/// One model seeds the candidate set. Each untested candidate `l` is refuted
/// by solving under `assumptions + confirmed + {~l}`: UNSAT confirms `l`, SAT
/// intersects the candidate set with the new model, which drops `l` and any
/// other candidate the model flips. Reuses one incremental engine across
/// calls, so repeated conditioned queries on one formula stay cheap.
class BackboneSolver {
 public:
  explicit BackboneSolver(const CnfFormula& formula, const BackendFactory& factory = {});

  /// Throws UnsatisfiableError if formula and assumptions admit no model.
  /// `order` optionally fixes the candidate testing order (a permutation of
  /// a subset of variables); default is ascending variable index.
  Backbone compute(std::span<const Literal> assumptions = {},
                   std::span<const Var> order = {});

  /// SAT calls issued by the last `compute`.
  std::size_t last_solve_calls() const { return last_calls_; }

 private:
  SatEngine engine_;
  std::size_t last_calls_ = 0;
};

Backbone compute_backbone(const CnfFormula& formula,
                          std::span<const Literal> assumptions = {});

}  // namespace strongnet
