#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "gqms/expr.hpp"
#include "gqms/source_span.hpp"

namespace gqms {

enum class GoalType { Growth, Success, Maintenance, SpecificFocus };

std::string_view goal_type_keyword(GoalType t) noexcept;
std::optional<GoalType> goal_type_from_keyword(std::string_view word) noexcept;

enum class RelationKind { Complementary, Competing };

std::string_view relation_kind_keyword(RelationKind k) noexcept;
std::optional<RelationKind> relation_kind_from_keyword(std::string_view word) noexcept;

/// Endpoint of a relation: another goal's identifier, or a free-text label
/// for goals that are not part of the model.
struct RelationTarget {
  std::string text;
  bool is_identifier = false;

  bool operator==(const RelationTarget&) const = default;
};

/// Entry of a goal's `relations [...]` list. Entries without a kind are
/// free-text notes (tradeoffs, ordering, ...) and carry no semantics.
struct RelationRef {
  std::optional<RelationKind> kind;
  RelationTarget target;
  SourceSpan span;

  bool operator==(const RelationRef&) const = default;
};

/// Top-level `relation <kind> <from> <to>` declaration.
struct Relation {
  RelationKind kind = RelationKind::Complementary;
  std::string from;
  RelationTarget to;
  SourceSpan span;

  bool operator==(const Relation&) const = default;
};

struct Goal {
  std::string id;
  int level = 0;  // 0 = not given
  std::optional<GoalType> goal_type;
  std::string activity;
  std::string focus;
  std::string object;
  std::string magnitude;
  std::string timeframe;
  std::string scope;
  std::vector<std::string> constraints;
  std::vector<RelationRef> relations;
  std::optional<std::string> derived_from;
  std::vector<std::string> context_refs;
  std::vector<std::string> assumption_refs;
  SourceSpan span;

  bool operator==(const Goal&) const = default;
};

struct Strategy {
  std::string id;
  std::string parent_goal;
  std::string decision;
  std::vector<std::string> activities;
  std::vector<std::string> context_refs;
  std::vector<std::string> assumption_refs;
  SourceSpan span;

  bool operator==(const Strategy&) const = default;
};

struct ContextFactor {
  std::string id;
  std::string statement;
  SourceSpan span;

  bool operator==(const ContextFactor&) const = default;
};

struct Assumption {
  std::string id;
  std::string statement;
  SourceSpan span;

  bool operator==(const Assumption&) const = default;
};

enum class ValueKind { Number, Boolean };

std::string_view value_kind_keyword(ValueKind k) noexcept;

struct MetricDecl {
  std::string id;
  ValueKind value_kind = ValueKind::Number;
  std::optional<std::string> unit;
  std::optional<std::string> period_label;
  SourceSpan span;

  bool operator==(const MetricDecl&) const = default;
};

/// GQM measurement goal: the object/purpose/focus/viewpoint/context tuple.
struct MGoal {
  std::string object;
  std::string purpose;
  std::string focus;
  std::string viewpoint;
  std::string context;
  SourceSpan span;

  bool operator==(const MGoal&) const = default;
};

struct Question {
  std::string id;
  std::string text;
  SourceSpan span;

  bool operator==(const Question&) const = default;
};

struct DiagnosticRule {
  std::string message;
  Expr condition;
  SourceSpan span;

  bool operator==(const DiagnosticRule&) const = default;
};

struct InterpretationModel {
  Expr satisfied_when;
  std::vector<DiagnosticRule> diagnostics;
  SourceSpan span;

  bool operator==(const InterpretationModel&) const = default;
};

struct GQMPlan {
  std::string goal_ref;
  std::optional<std::string> strategy_ref;
  MGoal mgoal;
  std::vector<Question> questions;
  std::vector<std::string> metric_refs;
  InterpretationModel interpretation;
  SourceSpan span;

  bool operator==(const GQMPlan&) const = default;

  /// `G1` or `G1 via S1`.
  [[nodiscard]] std::string label() const;
};

/// A whole goal/strategy forest with its measurement plans. Declaration
/// order is preserved in every list.
struct Model {
  std::string name;
  std::vector<Goal> goals;
  std::vector<Strategy> strategies;
  std::vector<ContextFactor> contexts;
  std::vector<Assumption> assumptions;
  std::vector<GQMPlan> plans;
  std::vector<MetricDecl> metrics;
  std::vector<Relation> relations;

  bool operator==(const Model&) const = default;

  [[nodiscard]] bool empty() const noexcept;

  [[nodiscard]] const Goal* find_goal(std::string_view id) const;
  [[nodiscard]] const Strategy* find_strategy(std::string_view id) const;
  [[nodiscard]] const MetricDecl* find_metric(std::string_view id) const;
  [[nodiscard]] const ContextFactor* find_context(std::string_view id) const;
  [[nodiscard]] const Assumption* find_assumption(std::string_view id) const;

  /// Plans owned by `goal`, in declaration order.
  [[nodiscard]] std::vector<const GQMPlan*> plans_for(std::string_view goal) const;
  /// Strategies whose parent is `goal`, in declaration order.
  [[nodiscard]] std::vector<const Strategy*> strategies_for(std::string_view goal) const;
  /// Goals derived from `strategy`, in declaration order.
  [[nodiscard]] std::vector<const Goal*> goals_derived_from(std::string_view strategy) const;
};

/// Copy of `m` with every source span cleared, for structural comparison.
Model strip_spans(Model m);
Expr strip_spans(Expr e);

/// Equality ignoring source spans.
bool structurally_equal(const Model& a, const Model& b);

}  // namespace gqms
