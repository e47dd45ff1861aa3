#include "strongnet/feature_model.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <sstream>

#include "strongnet/errors.hpp"

namespace strongnet {

std::optional<std::size_t> FeatureModel::find(std::string_view name) const {
  for (std::size_t i = 0; i < features.size(); ++i) {
    if (features[i].name == name) return i;
  }
  return std::nullopt;
}

namespace {

bool is_name_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) != 0 || c == '_' || c == '.';
}

bool is_name(std::string_view s) {
  return !s.empty() && std::all_of(s.begin(), s.end(), is_name_char);
}

bool is_keyword(std::string_view s) {
  return s == "feature" || s == "mandatory" || s == "optional" || s == "alternative" ||
         s == "or" || s == "constraint";
}

std::vector<std::string> split_tree_line(std::string_view body) {
  std::vector<std::string> tokens;
  std::string current;
  auto flush = [&] {
    if (!current.empty()) tokens.push_back(std::move(current));
    current.clear();
  };
  for (char c : body) {
    if (c == '{' || c == '}') {
      flush();
      tokens.emplace_back(1, c);
    } else if (std::isspace(static_cast<unsigned char>(c))) {
      flush();
    } else {
      current.push_back(c);
    }
  }
  flush();
  return tokens;
}

// Recursive descent over `!`, `&`, `|`, `=>` (right-associative) and parentheses.
class ExprParser {
 public:
  ExprParser(std::string_view text, std::size_t line, const FeatureModel& model)
      : text_(text), line_(line), model_(model) {}

  ConstraintExpr parse() {
    ConstraintExpr e = implication();
    skip_ws();
    if (pos_ != text_.size()) fail("unexpected '" + std::string(text_.substr(pos_, 1)) + "'");
    return e;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError(line_, "constraint: " + what);
  }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(std::string_view token) {
    skip_ws();
    if (text_.substr(pos_, token.size()) == token) {
      pos_ += token.size();
      return true;
    }
    return false;
  }

  ConstraintExpr implication() {
    ConstraintExpr lhs = disjunction();
    if (!accept("=>")) return lhs;
    ConstraintExpr e{ConstraintExpr::Op::Implies, 0, {}};
    e.args.push_back(std::move(lhs));
    e.args.push_back(implication());
    return e;
  }

  ConstraintExpr disjunction() {
    ConstraintExpr first = conjunction();
    if (!peek('|')) return first;
    ConstraintExpr e{ConstraintExpr::Op::Or, 0, {}};
    e.args.push_back(std::move(first));
    while (accept("|")) e.args.push_back(conjunction());
    return e;
  }

  ConstraintExpr conjunction() {
    ConstraintExpr first = unary();
    if (!peek('&')) return first;
    ConstraintExpr e{ConstraintExpr::Op::And, 0, {}};
    e.args.push_back(std::move(first));
    while (accept("&")) e.args.push_back(unary());
    return e;
  }

  ConstraintExpr unary() {
    if (accept("!")) {
      ConstraintExpr e{ConstraintExpr::Op::Not, 0, {}};
      e.args.push_back(unary());
      return e;
    }
    if (accept("(")) {
      ConstraintExpr inner = implication();
      if (!accept(")")) fail("missing ')'");
      return inner;
    }
    skip_ws();
    std::size_t start = pos_;
    while (pos_ < text_.size() && is_name_char(text_[pos_])) ++pos_;
    if (start == pos_) fail(pos_ == text_.size() ? "unexpected end of expression"
                                                 : "unexpected '" + std::string(text_.substr(pos_, 1)) + "'");
    std::string_view name = text_.substr(start, pos_ - start);
    auto index = model_.find(name);
    if (!index) fail("unknown feature '" + std::string(name) + "'");
    return ConstraintExpr{ConstraintExpr::Op::Feature, *index, {}};
  }

  bool peek(char c) {
    skip_ws();
    return pos_ < text_.size() && text_[pos_] == c;
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  std::size_t line_;
  const FeatureModel& model_;
};

struct Frame {
  bool is_group;
  std::size_t indent;
  std::size_t index;  // feature or group index
};

}  // namespace

FeatureModel parse_fm(std::istream& in) {
  FeatureModel model;
  std::vector<Frame> stack;
  std::vector<std::pair<std::string, std::size_t>> pending_constraints;

  auto add_feature = [&](const std::string& name, std::optional<std::size_t> parent,
                         FeatureRelation relation, std::optional<std::size_t> group,
                         std::size_t line) {
    if (!is_name(name) || is_keyword(name)) throw ParseError(line, "invalid feature name '" + name + "'");
    if (model.find(name)) throw ParseError(line, "duplicate feature '" + name + "'");
    model.features.push_back({name, parent, relation, group, line});
    return model.features.size() - 1;
  };
  auto add_member = [&](std::size_t group, const std::string& name, std::size_t line) {
    auto& g = model.groups[group];
    auto relation = g.kind == GroupKind::Alternative ? FeatureRelation::AlternativeMember
                                                     : FeatureRelation::OrMember;
    std::size_t f = add_feature(name, g.owner, relation, group, line);
    model.groups[group].members.push_back(f);
    return f;
  };
  auto close_group = [&](std::size_t group) {
    const auto& g = model.groups[group];
    if (g.members.size() < 2) throw ParseError(g.line, "group needs at least two members");
  };

  std::string raw;
  std::size_t lineno = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    std::string_view line = raw;
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    while (!line.empty() && std::isspace(static_cast<unsigned char>(line.back()))) line.remove_suffix(1);
    std::size_t indent = 0, i = 0;
    for (; i < line.size() && (line[i] == ' ' || line[i] == '\t'); ++i) indent += line[i] == '\t' ? 4 : 1;
    std::string_view body = line.substr(i);
    if (body.empty()) continue;

    if (body.starts_with("constraint") &&
        (body.size() == 10 || std::isspace(static_cast<unsigned char>(body[10])))) {
      std::string_view expr = body.substr(10);
      if (expr.find_first_not_of(" \t") == std::string_view::npos) {
        throw ParseError(lineno, "empty constraint");
      }
      pending_constraints.emplace_back(std::string(expr), lineno);
      continue;
    }

    auto tokens = split_tree_line(body);
    const std::string& kw = tokens[0];

    if (kw == "feature") {
      if (!model.features.empty()) throw ParseError(lineno, "second root feature");
      if (tokens.size() != 2) throw ParseError(lineno, "expected 'feature <Name>'");
      add_feature(tokens[1], std::nullopt, FeatureRelation::Root, std::nullopt, lineno);
      stack.push_back({false, indent, 0});
      continue;
    }
    if (model.features.empty()) throw ParseError(lineno, "declaration before the root 'feature'");

    if (kw == "}") {
      if (tokens.size() != 1) throw ParseError(lineno, "unexpected tokens after '}'");
      while (!stack.empty() && !stack.back().is_group) stack.pop_back();
      if (stack.empty()) throw ParseError(lineno, "unmatched '}'");
      close_group(stack.back().index);
      stack.pop_back();
      continue;
    }

    while (!stack.empty() && !stack.back().is_group && stack.back().indent >= indent) stack.pop_back();
    if (stack.empty()) throw ParseError(lineno, "line is not indented below the root");
    const Frame top = stack.back();

    if (top.is_group) {
      if (indent <= top.indent) throw ParseError(model.groups[top.index].line, "unclosed group");
      for (const auto& t : tokens) {
        if (is_keyword(t) || t == "{" || t == "}") {
          throw ParseError(lineno, "expected group member names or a lone '}'");
        }
      }
      std::size_t f = 0;
      for (const auto& t : tokens) f = add_member(top.index, t, lineno);
      // Only a member alone on its line can own an indented subtree.
      if (tokens.size() == 1) stack.push_back({false, indent, f});
      continue;
    }

    if (kw == "mandatory" || kw == "optional") {
      if (tokens.size() != 2) throw ParseError(lineno, "expected '" + kw + " <Name>'");
      auto relation = kw == "mandatory" ? FeatureRelation::Mandatory : FeatureRelation::Optional;
      std::size_t f = add_feature(tokens[1], top.index, relation, std::nullopt, lineno);
      stack.push_back({false, indent, f});
      continue;
    }
    if (kw == "alternative" || kw == "or") {
      if (tokens.size() < 2 || tokens[1] != "{") throw ParseError(lineno, "expected '" + kw + " {'");
      model.groups.push_back({kw == "or" ? GroupKind::Or : GroupKind::Alternative, top.index, {}, lineno});
      const std::size_t group = model.groups.size() - 1;
      bool closed = false;
      for (std::size_t t = 2; t < tokens.size(); ++t) {
        if (tokens[t] == "}") {
          if (t + 1 != tokens.size()) throw ParseError(lineno, "unexpected tokens after '}'");
          closed = true;
          break;
        }
        if (tokens[t] == "{") throw ParseError(lineno, "unexpected '{'");
        add_member(group, tokens[t], lineno);
      }
      if (closed) {
        close_group(group);
      } else {
        stack.push_back({true, indent, group});
      }
      continue;
    }
    throw ParseError(lineno, "unknown keyword '" + kw + "'");
  }

  for (const auto& frame : stack) {
    if (frame.is_group) throw ParseError(model.groups[frame.index].line, "unclosed group");
  }
  if (model.features.empty()) throw ParseError(lineno == 0 ? 1 : lineno, "missing root 'feature'");

  for (auto& [text, line] : pending_constraints) {
    ConstraintExpr expr = ExprParser(text, line, model).parse();
    std::string trimmed = text.substr(text.find_first_not_of(" \t"));
    model.constraints.push_back({std::move(trimmed), std::move(expr), line});
  }
  return model;
}

FeatureModel parse_fm_string(std::string_view text) {
  std::istringstream in{std::string(text)};
  return parse_fm(in);
}

namespace {

using ClauseSet = std::vector<Clause>;

// Negation normal form expansion straight into clauses by distribution.
ClauseSet expand(const ConstraintExpr& e, bool negated, const Constraint& owner) {
  using Op = ConstraintExpr::Op;
  auto too_large = [&] {
    throw InvalidArgument("constraint at line " + std::to_string(owner.line) + " '" + owner.text +
                          "' expands into more than " + std::to_string(kMaxClausesPerConstraint) +
                          " clauses; it needs auxiliary variables");
  };
  auto conjoin = [&](const std::vector<ClauseSet>& parts) {
    ClauseSet out;
    for (const auto& p : parts) out.insert(out.end(), p.begin(), p.end());
    if (out.size() > kMaxClausesPerConstraint) too_large();
    return out;
  };
  auto disjoin = [&](const std::vector<ClauseSet>& parts) {
    ClauseSet out{Clause{}};
    for (const auto& p : parts) {
      ClauseSet next;
      for (const auto& left : out) {
        for (const auto& right : p) {
          Clause c = left;
          c.insert(c.end(), right.begin(), right.end());
          next.push_back(std::move(c));
          if (next.size() > kMaxClausesPerConstraint) too_large();
        }
      }
      out = std::move(next);
    }
    return out;
  };

  switch (e.op) {
    case Op::Feature:
      return {Clause{Literal(static_cast<Var>(e.feature + 1), !negated)}};
    case Op::Not:
      return expand(e.args[0], !negated, owner);
    case Op::Implies: {
      // a => b  is  !a | b ;  !(a => b)  is  a & !b
      std::vector<ClauseSet> parts{expand(e.args[0], !negated, owner),
                                   expand(e.args[1], negated, owner)};
      return negated ? conjoin(parts) : disjoin(parts);
    }
    case Op::And:
    case Op::Or: {
      std::vector<ClauseSet> parts;
      for (const auto& a : e.args) parts.push_back(expand(a, negated, owner));
      bool conjunctive = (e.op == Op::And) != negated;
      return conjunctive ? conjoin(parts) : disjoin(parts);
    }
  }
  return {};
}

}  // namespace

CnfFormula fm_to_cnf(const FeatureModel& model) {
  auto var = [](std::size_t index) { return static_cast<Var>(index + 1); };
  std::vector<Clause> clauses;
  std::map<Var, std::string> names;

  for (std::size_t i = 0; i < model.features.size(); ++i) {
    const Feature& f = model.features[i];
    names.emplace(var(i), f.name);
    if (!f.parent) {
      clauses.push_back({Literal::pos(var(i))});
      continue;
    }
    const Var child = var(i), parent = var(*f.parent);
    clauses.push_back({Literal::neg(child), Literal::pos(parent)});
    if (f.relation == FeatureRelation::Mandatory) {
      clauses.push_back({Literal::neg(parent), Literal::pos(child)});
    }
  }
  for (const FeatureGroup& g : model.groups) {
    Clause at_least_one{Literal::neg(var(g.owner))};
    for (std::size_t m : g.members) at_least_one.push_back(Literal::pos(var(m)));
    clauses.push_back(std::move(at_least_one));
    if (g.kind != GroupKind::Alternative) continue;
    for (std::size_t a = 0; a < g.members.size(); ++a) {
      for (std::size_t b = a + 1; b < g.members.size(); ++b) {
        clauses.push_back({Literal::neg(var(g.members[a])), Literal::neg(var(g.members[b]))});
      }
    }
  }
  for (const Constraint& c : model.constraints) {
    for (Clause& clause : expand(c.expr, false, c)) clauses.push_back(std::move(clause));
  }
  return CnfFormula(static_cast<Var>(model.features.size()), std::move(clauses), std::move(names));
}

}  // namespace strongnet
