#include "gqms/model.hpp"

#include <algorithm>

namespace gqms {

std::string_view goal_type_keyword(GoalType t) noexcept
{
  switch (t) {
    case GoalType::Growth: return "growth";
    case GoalType::Success: return "success";
    case GoalType::Maintenance: return "maintenance";
    case GoalType::SpecificFocus: return "specific_focus";
  }
  return "success";
}

std::optional<GoalType> goal_type_from_keyword(std::string_view word) noexcept
{
  if (word == "growth") return GoalType::Growth;
  if (word == "success") return GoalType::Success;
  if (word == "maintenance") return GoalType::Maintenance;
  if (word == "specific_focus") return GoalType::SpecificFocus;
  return std::nullopt;
}

std::string_view relation_kind_keyword(RelationKind k) noexcept
{
  return k == RelationKind::Competing ? "competing" : "complementary";
}

std::optional<RelationKind> relation_kind_from_keyword(std::string_view word) noexcept
{
  if (word == "complementary") return RelationKind::Complementary;
  if (word == "competing") return RelationKind::Competing;
  return std::nullopt;
}

std::string_view value_kind_keyword(ValueKind k) noexcept
{
  return k == ValueKind::Boolean ? "boolean" : "number";
}

std::string GQMPlan::label() const
{
  return strategy_ref ? goal_ref + " via " + *strategy_ref : goal_ref;
}

namespace {

template <typename T>
const T* find_by_id(const std::vector<T>& items, std::string_view id)
{
  const auto it = std::find_if(items.begin(), items.end(), [&](const T& x) { return x.id == id; });
  return it == items.end() ? nullptr : &*it;
}

}  // namespace

bool Model::empty() const noexcept
{
  return goals.empty() && strategies.empty() && contexts.empty() && assumptions.empty() && plans.empty() &&
         metrics.empty() && relations.empty();
}

const Goal* Model::find_goal(std::string_view id) const { return find_by_id(goals, id); }
const Strategy* Model::find_strategy(std::string_view id) const { return find_by_id(strategies, id); }
const MetricDecl* Model::find_metric(std::string_view id) const { return find_by_id(metrics, id); }
const ContextFactor* Model::find_context(std::string_view id) const { return find_by_id(contexts, id); }
const Assumption* Model::find_assumption(std::string_view id) const { return find_by_id(assumptions, id); }

std::vector<const GQMPlan*> Model::plans_for(std::string_view goal) const
{
  std::vector<const GQMPlan*> out;
  for (const auto& p : plans) {
    if (p.goal_ref == goal) out.push_back(&p);
  }
  return out;
}

std::vector<const Strategy*> Model::strategies_for(std::string_view goal) const
{
  std::vector<const Strategy*> out;
  for (const auto& s : strategies) {
    if (s.parent_goal == goal) out.push_back(&s);
  }
  return out;
}

std::vector<const Goal*> Model::goals_derived_from(std::string_view strategy) const
{
  std::vector<const Goal*> out;
  for (const auto& g : goals) {
    if (g.derived_from && *g.derived_from == strategy) out.push_back(&g);
  }
  return out;
}

Expr strip_spans(Expr e)
{
  e.span = {};
  for (auto& a : e.args) a = strip_spans(std::move(a));
  return e;
}

Model strip_spans(Model m)
{
  for (auto& g : m.goals) {
    g.span = {};
    for (auto& r : g.relations) r.span = {};
  }
  for (auto& s : m.strategies) s.span = {};
  for (auto& c : m.contexts) c.span = {};
  for (auto& a : m.assumptions) a.span = {};
  for (auto& x : m.metrics) x.span = {};
  for (auto& r : m.relations) r.span = {};
  for (auto& p : m.plans) {
    p.span = {};
    p.mgoal.span = {};
    for (auto& q : p.questions) q.span = {};
    p.interpretation.span = {};
    p.interpretation.satisfied_when = strip_spans(std::move(p.interpretation.satisfied_when));
    for (auto& d : p.interpretation.diagnostics) {
      d.span = {};
      d.condition = strip_spans(std::move(d.condition));
    }
  }
  return m;
}

bool structurally_equal(const Model& a, const Model& b)
{
  return strip_spans(a) == strip_spans(b);
}

}  // namespace gqms
