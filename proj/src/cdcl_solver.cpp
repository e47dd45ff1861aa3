#include "cdcl_solver.hpp"

#include <algorithm>
#include <cmath>

namespace strongnet::detail {

namespace {

constexpr double kVarDecay = 0.95;
constexpr double kClauseDecay = 0.999;
constexpr std::int64_t kRestartBase = 100;

// Finite subsequences of the Luby series: 1 1 2 1 1 2 4 ...
double luby(double y, int x) {
  int size = 1;
  int seq = 0;
  for (; size < x + 1; seq++, size = 2 * size + 1) {
  }
  while (size - 1 != x) {
    size = (size - 1) >> 1;
    seq--;
    x = x % size;
  }
  return std::pow(y, seq);
}

}  // namespace

void CdclSolver::reserve_vars(Var num_vars) {
  std::size_t old = assigns_.size();
  if (num_vars <= old) return;
  assigns_.resize(num_vars, kUndef);
  level_.resize(num_vars, 0);
  reason_.resize(num_vars, kNoReason);
  polarity_.resize(num_vars, true);
  seen_.resize(num_vars, 0);
  activity_.resize(num_vars, 0.0);
  heap_pos_.resize(num_vars, -1);
  watches_.resize(2 * static_cast<std::size_t>(num_vars));
  for (std::size_t v = old; v < num_vars; ++v) heap_insert(static_cast<std::uint32_t>(v));
}

void CdclSolver::add_clause(std::span<const Literal> clause) {
  if (!ok_) return;
  cancel_until(0);
  std::vector<Lit> lits;
  lits.reserve(clause.size());
  for (Literal lit : clause) {
    if (lit.var() > assigns_.size()) reserve_vars(lit.var());
    lits.push_back(encode(lit));
  }
  std::sort(lits.begin(), lits.end());
  std::vector<Lit> kept;
  Lit prev = kNoLit;
  for (Lit p : lits) {
    if (value(p) == kTrue || (prev != kNoLit && p == (prev ^ 1))) return;  // satisfied or tautology
    if (value(p) == kFalse || p == prev) continue;
    kept.push_back(p);
    prev = p;
  }
  if (kept.empty()) {
    ok_ = false;
    return;
  }
  if (kept.size() == 1) {
    enqueue(kept[0], kNoReason);
    if (propagate() != kNoReason) ok_ = false;
    return;
  }
  clauses_.push_back(ClauseData{std::move(kept), 0.0, false});
  ++num_problem_clauses_;
  attach(static_cast<CRef>(clauses_.size() - 1));
}

void CdclSolver::enqueue(Lit p, CRef from) {
  std::uint32_t v = var_of(p);
  assigns_[v] = (p & 1) ? kFalse : kTrue;
  level_[v] = decision_level();
  reason_[v] = from;
  trail_.push_back(p);
}

void CdclSolver::attach(CRef cref) {
  const auto& lits = clauses_[cref].lits;
  watches_[lits[0] ^ 1].push_back({cref, lits[1]});
  watches_[lits[1] ^ 1].push_back({cref, lits[0]});
}

CdclSolver::CRef CdclSolver::propagate() {
  CRef conflict = kNoReason;
  while (qhead_ < trail_.size()) {
    Lit p = trail_[qhead_++];
    Lit false_lit = p ^ 1;
    auto& ws = watches_[p];
    std::size_t i = 0, j = 0;
    while (i < ws.size()) {
      Watcher w = ws[i];
      if (value(w.blocker) == kTrue) {
        ws[j++] = ws[i++];
        continue;
      }
      auto& lits = clauses_[w.cref].lits;
      if (lits[0] == false_lit) std::swap(lits[0], lits[1]);
      ++i;
      Lit first = lits[0];
      Watcher updated{w.cref, first};
      if (first != w.blocker && value(first) == kTrue) {
        ws[j++] = updated;
        continue;
      }
      bool moved = false;
      for (std::size_t k = 2; k < lits.size(); ++k) {
        if (value(lits[k]) != kFalse) {
          std::swap(lits[1], lits[k]);
          watches_[lits[1] ^ 1].push_back(updated);
          moved = true;
          break;
        }
      }
      if (moved) continue;
      ws[j++] = updated;
      if (value(first) == kFalse) {
        conflict = w.cref;
        qhead_ = trail_.size();
        while (i < ws.size()) ws[j++] = ws[i++];
      } else {
        enqueue(first, w.cref);
      }
    }
    ws.resize(j);
  }
  return conflict;
}

void CdclSolver::analyze(CRef confl, std::vector<Lit>& learnt, int& backtrack_level) {
  learnt.clear();
  learnt.push_back(kNoLit);
  int path_count = 0;
  Lit p = kNoLit;
  std::size_t index = trail_.size();

  do {
    ClauseData& c = clauses_[confl];
    if (c.learnt) bump_clause(c);
    for (std::size_t k = (p == kNoLit ? 0 : 1); k < c.lits.size(); ++k) {
      Lit q = c.lits[k];
      std::uint32_t v = var_of(q);
      if (!seen_[v] && level_[v] > 0) {
        bump_var(v);
        seen_[v] = 1;
        if (level_[v] >= decision_level()) {
          ++path_count;
        } else {
          learnt.push_back(q);
        }
      }
    }
    while (!seen_[var_of(trail_[--index])]) {
    }
    p = trail_[index];
    confl = reason_[var_of(p)];
    seen_[var_of(p)] = 0;
    --path_count;
  } while (path_count > 0);
  learnt[0] = p ^ 1;

  std::vector<Lit> original(learnt.begin() + 1, learnt.end());
  std::size_t out = 1;
  for (std::size_t i = 1; i < learnt.size(); ++i) {
    if (!redundant(learnt[i])) learnt[out++] = learnt[i];
  }
  learnt.resize(out);
  for (Lit q : original) seen_[var_of(q)] = 0;

  backtrack_level = 0;
  if (learnt.size() > 1) {
    std::size_t max_i = 1;
    for (std::size_t i = 2; i < learnt.size(); ++i) {
      if (level_[var_of(learnt[i])] > level_[var_of(learnt[max_i])]) max_i = i;
    }
    std::swap(learnt[1], learnt[max_i]);
    backtrack_level = level_[var_of(learnt[1])];
  }
}

// A literal is redundant when every other literal of its reason is already in
// the learnt clause or fixed at level 0.
bool CdclSolver::redundant(Lit p) const {
  CRef r = reason_[var_of(p)];
  if (r == kNoReason) return false;
  const auto& lits = clauses_[r].lits;
  for (std::size_t k = 1; k < lits.size(); ++k) {
    std::uint32_t v = var_of(lits[k]);
    if (!seen_[v] && level_[v] > 0) return false;
  }
  return true;
}

void CdclSolver::cancel_until(int level) {
  if (decision_level() <= level) return;
  for (std::size_t c = trail_.size(); c-- > trail_lim_[level];) {
    std::uint32_t v = var_of(trail_[c]);
    assigns_[v] = kUndef;
    reason_[v] = kNoReason;
    polarity_[v] = (trail_[c] & 1) != 0;
    if (heap_pos_[v] < 0) heap_insert(v);
  }
  qhead_ = trail_lim_[level];
  trail_.resize(trail_lim_[level]);
  trail_lim_.resize(level);
}

CdclSolver::Lit CdclSolver::pick_branch() {
  while (!heap_.empty()) {
    std::uint32_t v = heap_pop();
    if (assigns_[v] == kUndef) return 2 * v + (polarity_[v] ? 1 : 0);
  }
  return kNoLit;
}

bool CdclSolver::locked(CRef cref) const {
  Lit first = clauses_[cref].lits[0];
  return value(first) == kTrue && reason_[var_of(first)] == cref;
}

void CdclSolver::reduce_db() {
  std::sort(learnts_.begin(), learnts_.end(), [&](CRef a, CRef b) {
    return clauses_[a].activity < clauses_[b].activity;
  });
  std::vector<bool> drop(clauses_.size(), false);
  std::size_t half = learnts_.size() / 2;
  for (std::size_t i = 0; i < half; ++i) {
    CRef c = learnts_[i];
    if (clauses_[c].lits.size() > 2 && !locked(c)) drop[c] = true;
  }

  // Compact the arena and remap reasons.
  std::vector<CRef> remap(clauses_.size(), kNoReason);
  std::vector<ClauseData> kept;
  kept.reserve(clauses_.size());
  for (CRef c = 0; c < clauses_.size(); ++c) {
    if (drop[c]) continue;
    remap[c] = static_cast<CRef>(kept.size());
    kept.push_back(std::move(clauses_[c]));
  }
  clauses_ = std::move(kept);
  for (Lit p : trail_) {
    CRef& r = reason_[var_of(p)];
    if (r != kNoReason) r = remap[r];
  }
  learnts_.clear();
  for (auto& ws : watches_) ws.clear();
  for (CRef c = 0; c < clauses_.size(); ++c) {
    if (clauses_[c].learnt) learnts_.push_back(c);
    attach(c);
  }
}

void CdclSolver::bump_var(std::uint32_t v) {
  if ((activity_[v] += var_inc_) > 1e100) {
    for (double& a : activity_) a *= 1e-100;
    var_inc_ *= 1e-100;
  }
  if (heap_pos_[v] >= 0) heap_up(static_cast<std::size_t>(heap_pos_[v]));
}

void CdclSolver::bump_clause(ClauseData& c) {
  if ((c.activity += cla_inc_) > 1e20) {
    for (CRef l : learnts_) clauses_[l].activity *= 1e-20;
    cla_inc_ *= 1e-20;
  }
}

void CdclSolver::heap_insert(std::uint32_t v) {
  heap_pos_[v] = static_cast<int>(heap_.size());
  heap_.push_back(v);
  heap_up(heap_.size() - 1);
}

std::uint32_t CdclSolver::heap_pop() {
  std::uint32_t top = heap_[0];
  heap_[0] = heap_.back();
  heap_pos_[heap_[0]] = 0;
  heap_pos_[top] = -1;
  heap_.pop_back();
  if (heap_.size() > 1) heap_down(0);
  return top;
}

void CdclSolver::heap_up(std::size_t i) {
  std::uint32_t v = heap_[i];
  while (i > 0) {
    std::size_t parent = (i - 1) / 2;
    if (!heap_less(heap_[parent], v)) break;
    heap_[i] = heap_[parent];
    heap_pos_[heap_[i]] = static_cast<int>(i);
    i = parent;
  }
  heap_[i] = v;
  heap_pos_[v] = static_cast<int>(i);
}

void CdclSolver::heap_down(std::size_t i) {
  std::uint32_t v = heap_[i];
  for (;;) {
    std::size_t child = 2 * i + 1;
    if (child >= heap_.size()) break;
    if (child + 1 < heap_.size() && heap_less(heap_[child], heap_[child + 1])) ++child;
    if (!heap_less(v, heap_[child])) break;
    heap_[i] = heap_[child];
    heap_pos_[heap_[i]] = static_cast<int>(i);
    i = child;
  }
  heap_[i] = v;
  heap_pos_[v] = static_cast<int>(i);
}

CdclSolver::Result CdclSolver::search(std::int64_t conflict_budget) {
  std::int64_t conflicts_here = 0;
  std::vector<Lit> learnt;
  for (;;) {
    CRef confl = propagate();
    if (confl != kNoReason) {
      ++conflicts_;
      ++conflicts_here;
      if (decision_level() == 0) {
        ok_ = false;
        return Result::Unsat;
      }
      int backtrack_level = 0;
      analyze(confl, learnt, backtrack_level);
      cancel_until(backtrack_level);
      if (learnt.size() == 1) {
        enqueue(learnt[0], kNoReason);
      } else {
        clauses_.push_back(ClauseData{learnt, 0.0, true});
        CRef cref = static_cast<CRef>(clauses_.size() - 1);
        learnts_.push_back(cref);
        attach(cref);
        bump_clause(clauses_[cref]);
        enqueue(learnt[0], cref);
      }
      var_inc_ /= kVarDecay;
      cla_inc_ /= kClauseDecay;
      continue;
    }

    if (conflict_budget >= 0 && conflicts_here >= conflict_budget) {
      cancel_until(0);
      return Result::Unknown;
    }
    if (static_cast<double>(learnts_.size()) - static_cast<double>(trail_.size()) >=
        max_learnts_) {
      reduce_db();
    }

    Lit next = kNoLit;
    while (static_cast<std::size_t>(decision_level()) < assumptions_.size()) {
      Lit p = assumptions_[static_cast<std::size_t>(decision_level())];
      if (value(p) == kTrue) {
        trail_lim_.push_back(trail_.size());
      } else if (value(p) == kFalse) {
        return Result::Unsat;  // refuted under assumptions only
      } else {
        next = p;
        break;
      }
    }
    if (next == kNoLit) {
      next = pick_branch();
      if (next == kNoLit) return Result::Sat;
    }
    trail_lim_.push_back(trail_.size());
    enqueue(next, kNoReason);
  }
}

bool CdclSolver::solve(std::span<const Literal> assumptions) {
  model_.clear();
  if (!ok_) return false;
  cancel_until(0);
  assumptions_.clear();
  for (Literal lit : assumptions) {
    if (lit.var() > assigns_.size()) reserve_vars(lit.var());
    assumptions_.push_back(encode(lit));
  }
  max_learnts_ = std::max(1000.0, static_cast<double>(num_problem_clauses_) / 3.0);

  Result status = Result::Unknown;
  for (int restarts = 0; status == Result::Unknown; ++restarts) {
    auto budget = static_cast<std::int64_t>(luby(2.0, restarts) * kRestartBase);
    status = search(budget);
    max_learnts_ *= 1.05;
  }
  if (status == Result::Sat) {
    model_.resize(assigns_.size());
    for (std::size_t v = 0; v < assigns_.size(); ++v) model_[v] = assigns_[v] == kTrue;
  }
  cancel_until(0);
  return status == Result::Sat;
}

}  // namespace strongnet::detail
