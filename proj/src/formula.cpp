#include "strongnet/formula.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <set>
#include <sstream>

#include "strongnet/errors.hpp"

namespace strongnet {

namespace {

std::vector<std::string_view> split_ws(std::string_view line) {
  std::vector<std::string_view> tokens;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    std::size_t j = i;
    while (j < line.size() && !std::isspace(static_cast<unsigned char>(line[j]))) ++j;
    if (j > i) tokens.push_back(line.substr(i, j - i));
    i = j;
  }
  return tokens;
}

template <typename Int>
std::optional<Int> to_int(std::string_view token) {
  Int value{};
  auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
  if (ec != std::errc{} || ptr != token.data() + token.size()) return std::nullopt;
  return value;
}

}  // namespace

Literal Literal::from_dimacs(std::int64_t value) {
  if (value == 0) throw InvalidArgument("literal 0 is a clause terminator");
  if (value > 0) return pos(static_cast<Var>(value));
  return neg(static_cast<Var>(-value));
}

bool normalize_clause(Clause& clause) {
  Clause out;
  out.reserve(clause.size());
  for (Literal lit : clause) {
    if (std::find(out.begin(), out.end(), ~lit) != out.end()) return false;
    if (std::find(out.begin(), out.end(), lit) == out.end()) out.push_back(lit);
  }
  clause = std::move(out);
  return true;
}

CnfFormula::CnfFormula(Var num_vars, std::vector<Clause> clauses,
                       std::map<Var, std::string> names)
    : num_vars_(num_vars), names_(std::move(names)) {
  clauses_.reserve(clauses.size());
  for (Clause& clause : clauses) {
    for (Literal lit : clause) {
      if (lit.var() == 0 || lit.var() > num_vars_) {
        throw InvalidArgument("literal " + std::to_string(lit.to_dimacs()) +
                              " out of range for " + std::to_string(num_vars_) +
                              " variables");
      }
    }
    if (!normalize_clause(clause)) continue;
    if (clause.empty()) {
      has_empty_clause_ = true;
      continue;
    }
    clauses_.push_back(std::move(clause));
  }
  std::set<std::string_view> seen;
  for (const auto& [var, name] : names_) {
    if (var == 0 || var > num_vars_) {
      throw InvalidArgument("name '" + name + "' bound to out-of-range variable " +
                            std::to_string(var));
    }
    if (!seen.insert(name).second) {
      throw InvalidArgument("name '" + name + "' bound to more than one variable");
    }
  }
}

std::string CnfFormula::name_of(Var var) const {
  if (auto it = names_.find(var); it != names_.end()) return it->second;
  return "v" + std::to_string(var);
}

std::optional<Var> CnfFormula::find(std::string_view name) const {
  for (const auto& [var, n] : names_) {
    if (n == name) return var;
  }
  return std::nullopt;
}

CnfFormula parse_dimacs(std::istream& in) {
  bool have_problem = false;
  Var num_vars = 0;
  std::size_t declared_clauses = 0;
  std::vector<Clause> clauses;
  std::size_t clause_count = 0;
  Clause pending;
  std::size_t pending_line = 0;
  std::map<Var, std::string> names;
  std::map<Var, std::size_t> name_lines;
  std::map<std::string, Var, std::less<>> name_owner;

  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    auto tokens = split_ws(line);
    if (tokens.empty()) continue;
    if (tokens[0] == "%") break;
    if (tokens[0] == "c") {
      if (tokens.size() == 3) {
        auto index = to_int<std::int64_t>(tokens[1]);
        if (index && *index > 0) {
          Var var = static_cast<Var>(*index);
          if (names.contains(var)) {
            throw ParseError(lineno, "duplicate name comment for variable " +
                                         std::to_string(var));
          }
          std::string name(tokens[2]);
          if (auto it = name_owner.find(name); it != name_owner.end()) {
            throw ParseError(lineno, "name '" + name + "' already bound to variable " +
                                         std::to_string(it->second));
          }
          if (have_problem && var > num_vars) {
            throw ParseError(lineno, "name comment index " + std::to_string(var) +
                                         " exceeds " + std::to_string(num_vars) +
                                         " variables");
          }
          name_owner.emplace(name, var);
          names.emplace(var, std::move(name));
          name_lines.emplace(var, lineno);
        }
      }
      continue;
    }
    if (tokens[0] == "p") {
      if (have_problem) throw ParseError(lineno, "duplicate problem line");
      if (tokens.size() != 4 || tokens[1] != "cnf") {
        throw ParseError(lineno, "malformed problem line, expected 'p cnf <vars> <clauses>'");
      }
      auto v = to_int<Var>(tokens[2]);
      auto c = to_int<std::size_t>(tokens[3]);
      if (!v || !c) throw ParseError(lineno, "malformed problem line counts");
      have_problem = true;
      num_vars = *v;
      declared_clauses = *c;
      for (const auto& [var, at] : name_lines) {
        if (var > num_vars) {
          throw ParseError(at, "name comment index " + std::to_string(var) + " exceeds " +
                                   std::to_string(num_vars) + " variables");
        }
      }
      continue;
    }
    if (!have_problem) throw ParseError(lineno, "clause data before problem line");
    for (auto token : tokens) {
      auto value = to_int<std::int64_t>(token);
      if (!value) {
        throw ParseError(lineno, "invalid literal '" + std::string(token) + "'");
      }
      if (*value == 0) {
        ++clause_count;
        clauses.push_back(std::move(pending));
        pending.clear();
        continue;
      }
      if (static_cast<std::uint64_t>(*value < 0 ? -*value : *value) > num_vars) {
        throw ParseError(lineno, "literal " + std::to_string(*value) + " exceeds " +
                                     std::to_string(num_vars) + " variables");
      }
      if (pending.empty()) pending_line = lineno;
      pending.push_back(Literal::from_dimacs(*value));
    }
  }
  if (!have_problem) throw ParseError(lineno == 0 ? 1 : lineno, "missing problem line");
  if (!pending.empty()) throw ParseError(pending_line, "clause not terminated by 0");
  if (clause_count != declared_clauses) {
    throw ParseError(lineno, "problem line declares " + std::to_string(declared_clauses) +
                                 " clauses, found " + std::to_string(clause_count));
  }
  return CnfFormula(num_vars, std::move(clauses), std::move(names));
}

CnfFormula parse_dimacs_string(std::string_view text) {
  std::istringstream in{std::string(text)};
  return parse_dimacs(in);
}

std::string emit_dimacs(const CnfFormula& formula) {
  std::ostringstream out;
  for (const auto& [var, name] : formula.names()) out << "c " << var << ' ' << name << '\n';
  std::size_t count = formula.clauses().size() + (formula.has_empty_clause() ? 1 : 0);
  out << "p cnf " << formula.num_vars() << ' ' << count << '\n';
  for (const Clause& clause : formula.clauses()) {
    for (Literal lit : clause) out << lit.to_dimacs() << ' ';
    out << "0\n";
  }
  if (formula.has_empty_clause()) out << "0\n";
  return out.str();
}

bool evaluates_true(const CnfFormula& formula, const std::vector<bool>& values) {
  if (formula.has_empty_clause()) return false;
  return std::all_of(formula.clauses().begin(), formula.clauses().end(),
                     [&](const Clause& clause) {
                       return std::any_of(clause.begin(), clause.end(), [&](Literal lit) {
                         return values[lit.var() - 1] == lit.positive();
                       });
                     });
}

}  // namespace strongnet
