#pragma once

// Conflict-driven clause-learning solver: two watched literals, VSIDS with
// phase saving, first-UIP learning with local minimization, Luby restarts and
// activity-based learnt clause deletion. Assumptions occupy the first decision
// levels, so learnt clauses stay valid across calls.

#include <cstdint>
#include <limits>
#include <span>
#include <vector>

#include "strongnet/sat_engine.hpp"

namespace strongnet::detail {

class CdclSolver final : public SolverBackend {
 public:
  void reserve_vars(Var num_vars) override;
  void add_clause(std::span<const Literal> clause) override;
  bool solve(std::span<const Literal> assumptions) override;
  bool model_value(Var var) const override { return model_[var - 1]; }

  std::uint64_t conflicts() const { return conflicts_; }

 private:
  using Lit = std::uint32_t;  // 2 * (var - 1) + negated
  using CRef = std::uint32_t;
  static constexpr CRef kNoReason = std::numeric_limits<CRef>::max();
  static constexpr Lit kNoLit = std::numeric_limits<Lit>::max();
  static constexpr std::int8_t kTrue = 1, kFalse = -1, kUndef = 0;
  enum class Result { Sat, Unsat, Unknown };

  struct ClauseData {
    std::vector<Lit> lits;
    double activity = 0.0;
    bool learnt = false;
  };
  struct Watcher {
    CRef cref;
    Lit blocker;
  };

  static Lit encode(Literal lit) { return 2 * (lit.var() - 1) + (lit.positive() ? 0 : 1); }
  static std::uint32_t var_of(Lit p) { return p >> 1; }

  std::int8_t value(Lit p) const {
    std::int8_t a = assigns_[p >> 1];
    return (p & 1) ? static_cast<std::int8_t>(-a) : a;
  }
  int decision_level() const { return static_cast<int>(trail_lim_.size()); }

  void enqueue(Lit p, CRef from);
  void attach(CRef cref);
  CRef propagate();
  void analyze(CRef confl, std::vector<Lit>& learnt, int& backtrack_level);
  bool redundant(Lit p) const;
  void cancel_until(int level);
  Result search(std::int64_t conflict_budget);
  Lit pick_branch();
  void reduce_db();
  bool locked(CRef cref) const;

  void bump_var(std::uint32_t v);
  void bump_clause(ClauseData& c);

  // Binary max-heap of unassigned variables keyed by activity.
  void heap_insert(std::uint32_t v);
  std::uint32_t heap_pop();
  void heap_up(std::size_t i);
  void heap_down(std::size_t i);
  bool heap_less(std::uint32_t a, std::uint32_t b) const { return activity_[a] < activity_[b]; }

  std::vector<ClauseData> clauses_;
  std::vector<CRef> learnts_;
  std::vector<std::vector<Watcher>> watches_;
  std::vector<std::int8_t> assigns_;
  std::vector<int> level_;
  std::vector<CRef> reason_;
  std::vector<bool> polarity_;  // saved phase: true = negative
  std::vector<char> seen_;
  std::vector<Lit> trail_;
  std::vector<std::size_t> trail_lim_;
  std::size_t qhead_ = 0;

  std::vector<double> activity_;
  std::vector<std::uint32_t> heap_;
  std::vector<int> heap_pos_;
  double var_inc_ = 1.0;
  double cla_inc_ = 1.0;

  std::vector<Lit> assumptions_;
  std::vector<bool> model_;
  std::size_t num_problem_clauses_ = 0;
  double max_learnts_ = 0.0;
  std::uint64_t conflicts_ = 0;
  bool ok_ = true;
};

}  // namespace strongnet::detail
