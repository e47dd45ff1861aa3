#pragma once

#include <cstddef>
#include <istream>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "strongnet/formula.hpp"

namespace strongnet {

enum class FeatureRelation { Root, Mandatory, Optional, AlternativeMember, OrMember };

struct Feature {
  std::string name;
  std::optional<std::size_t> parent;  // index into FeatureModel::features
  FeatureRelation relation = FeatureRelation::Root;
  std::optional<std::size_t> group;  // index into FeatureModel::groups
  std::size_t line = 0;
};

enum class GroupKind { Alternative, Or };

struct FeatureGroup {
  GroupKind kind = GroupKind::Alternative;
  std::size_t owner = 0;
  std::vector<std::size_t> members;
  std::size_t line = 0;
};

/// Propositional formula over feature indices.
struct ConstraintExpr {
  enum class Op { Feature, Not, And, Or, Implies };
  Op op = Op::Feature;
  std::size_t feature = 0;  // for Op::Feature
  std::vector<ConstraintExpr> args;
};

struct Constraint {
  std::string text;
  ConstraintExpr expr;
  std::size_t line = 0;
};

/// Feature tree plus cross-tree constraints. `features` is in preorder with
/// the root first; variable numbering follows this order.
struct FeatureModel {
  std::vector<Feature> features;
  std::vector<FeatureGroup> groups;
  std::vector<Constraint> constraints;

  std::optional<std::size_t> find(std::string_view name) const;
};

/// Parses the line-oriented dialect:
///
///     feature Root
///       mandatory A
///         optional B
///       alternative { C D }
///       or {
///         E
///         F
///       }
///     constraint A => !B & (C | E)
///
/// Children are indented below their parent. Group members listed on their
/// own lines may carry indented children. `#` starts a comment.
/// Throws ParseError with the offending line number.
FeatureModel parse_fm(std::istream& in);
FeatureModel parse_fm_string(std::string_view text);

/// Upper bound on clauses a single constraint may expand into.
inline constexpr std::size_t kMaxClausesPerConstraint = 256;

/// Encodes the model as CNF, one variable per feature (preorder numbering),
/// named after the features. Throws InvalidArgument for a constraint whose
/// clause expansion exceeds kMaxClausesPerConstraint.
CnfFormula fm_to_cnf(const FeatureModel& model);

}  // namespace strongnet
