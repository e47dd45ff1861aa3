#pragma once

// Independent reference machinery for the tests: truth tables, random
// formulas and helpers that never go through the SAT engine.

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <sstream>
#include <string>
#include <random>
#include <set>
#include <vector>

#include "strongnet/feature_model.hpp"
#include "strongnet/formula.hpp"

namespace testsupport {

using strongnet::Clause;
using strongnet::CnfFormula;
using strongnet::Literal;
using strongnet::Var;

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

inline CnfFormula coreboot() {
  return strongnet::fm_to_cnf(strongnet::parse_fm_string(read_file(STRONGNET_FIXTURES "/coreboot.fm")));
}

inline std::vector<bool> assignment(std::uint64_t bits, Var n) {
  std::vector<bool> values(n);
  for (Var v = 0; v < n; ++v) values[v] = (bits >> v) & 1U;
  return values;
}

/// Every satisfying total assignment, by evaluating all 2^n rows.
inline std::vector<std::vector<bool>> truth_table_models(const CnfFormula& f) {
  std::vector<std::vector<bool>> out;
  const Var n = f.num_vars();
  for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << n); ++bits) {
    auto values = assignment(bits, n);
    bool ok = !f.has_empty_clause();
    for (const Clause& c : f.clauses()) {
      if (!ok) break;
      ok = std::any_of(c.begin(), c.end(),
                       [&](Literal l) { return values[l.var() - 1] == l.positive(); });
    }
    if (ok) out.push_back(std::move(values));
  }
  return out;
}

inline CnfFormula random_kcnf(std::mt19937_64& rng, Var n, std::size_t m, std::size_t k = 3) {
  std::uniform_int_distribution<Var> var(1, n);
  std::bernoulli_distribution sign(0.5);
  std::vector<Clause> clauses;
  for (std::size_t i = 0; i < m; ++i) {
    Clause c;
    for (std::size_t j = 0; j < k; ++j) c.push_back(Literal(var(rng), sign(rng)));
    clauses.push_back(c);
  }
  return CnfFormula(n, clauses);
}

/// Random 3-CNF with n in [lo, hi] and clause/var ratio in [rlo, rhi],
/// redrawn until the truth table shows at least one model.
inline CnfFormula random_satisfiable(std::mt19937_64& rng, Var lo, Var hi, double rlo, double rhi) {
  std::uniform_int_distribution<Var> nv(lo, hi);
  std::uniform_real_distribution<double> ratio(rlo, rhi);
  for (;;) {
    Var n = nv(rng);
    auto m = static_cast<std::size_t>(ratio(rng) * n);
    CnfFormula f = random_kcnf(rng, n, m);
    if (!truth_table_models(f).empty()) return f;
  }
}

/// Fixed literal set of a model list (intersection of all models).
inline std::vector<Literal> intersect_models(const std::vector<std::vector<bool>>& models, Var n) {
  std::vector<Literal> out;
  for (Var v = 1; v <= n; ++v) {
    bool all_true = true, all_false = true;
    for (const auto& m : models) {
      all_true = all_true && m[v - 1];
      all_false = all_false && !m[v - 1];
    }
    if (all_true) out.push_back(Literal::pos(v));
    if (all_false) out.push_back(Literal::neg(v));
  }
  return out;
}

}  // namespace testsupport
