#pragma once

#include <compare>
#include <cstdint>
#include <istream>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace strongnet {

using Var = std::uint32_t;

/// A variable or its negation. Variables are 1-based, as in DIMACS.
class Literal {
 public:
  constexpr Literal() = default;
  constexpr Literal(Var var, bool positive) : var_(var), positive_(positive) {}

  static constexpr Literal pos(Var var) { return {var, true}; }
  static constexpr Literal neg(Var var) { return {var, false}; }
  /// From a signed DIMACS integer; `value` must be non-zero.
  static Literal from_dimacs(std::int64_t value);

  constexpr Var var() const { return var_; }
  constexpr bool positive() const { return positive_; }
  constexpr Literal operator~() const { return {var_, !positive_}; }
  std::int64_t to_dimacs() const {
    return positive_ ? static_cast<std::int64_t>(var_)
                     : -static_cast<std::int64_t>(var_);
  }

  /// Orders by variable first, negative before positive.
  constexpr auto operator<=>(const Literal&) const = default;

 private:
  Var var_ = 0;
  bool positive_ = true;
};

using Clause = std::vector<Literal>;

/// Immutable clause set over named Boolean variables.
///
/// Clauses are normalized on construction: duplicate literals are removed
/// (first occurrence kept) and tautologies are dropped. An empty clause is not
/// stored; it marks the whole formula as trivially unsatisfiable instead.
class CnfFormula {
 public:
  CnfFormula() = default;
  /// Throws InvalidArgument when a literal is out of range or names collide.
  CnfFormula(Var num_vars, std::vector<Clause> clauses,
             std::map<Var, std::string> names = {});

  Var num_vars() const { return num_vars_; }
  const std::vector<Clause>& clauses() const { return clauses_; }
  const std::map<Var, std::string>& names() const { return names_; }
  bool has_empty_clause() const { return has_empty_clause_; }

  /// Declared name, or the synthetic `v<index>`.
  std::string name_of(Var var) const;
  std::optional<Var> find(std::string_view name) const;

  friend bool operator==(const CnfFormula&, const CnfFormula&) = default;

 private:
  Var num_vars_ = 0;
  std::vector<Clause> clauses_;
  std::map<Var, std::string> names_;
  bool has_empty_clause_ = false;
};

/// Removes duplicate literals in place. Returns false for a tautology.
bool normalize_clause(Clause& clause);

/// Parses DIMACS CNF. Name comments take the form `c <index> <name>`.
/// Throws ParseError with the offending line number.
CnfFormula parse_dimacs(std::istream& in);
CnfFormula parse_dimacs_string(std::string_view text);

std::string emit_dimacs(const CnfFormula& formula);

/// Evaluates the formula under a total assignment (`values[v - 1]`).
bool evaluates_true(const CnfFormula& formula, const std::vector<bool>& values);

}  // namespace strongnet
