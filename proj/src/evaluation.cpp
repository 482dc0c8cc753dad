#include "gqms/evaluation.hpp"

#include <algorithm>
#include <map>

#include <fmt/format.h>

#include "gqms/validate.hpp"

namespace gqms {

const GoalOutcome* EvaluationReport::find(std::string_view goal) const
{
  const auto it = std::find_if(goals.begin(), goals.end(), [&](const GoalOutcome& g) { return g.goal == goal; });
  return it == goals.end() ? nullptr : &*it;
}

std::optional<GoalStatus> EvaluationReport::status(std::string_view goal) const
{
  const GoalOutcome* g = find(goal);
  if (g == nullptr) return std::nullopt;
  return g->status;
}

std::vector<Finding> EvaluationReport::findings_for(std::string_view goal) const
{
  std::vector<Finding> out;
  std::copy_if(findings.begin(), findings.end(), std::back_inserter(out),
               [&](const Finding& f) { return f.goal == goal; });
  return out;
}

GoalStatus status_from_value(const Value& v) noexcept
{
  if (const auto* b = std::get_if<bool>(&v)) return *b ? GoalStatus::Satisfied : GoalStatus::NotSatisfied;
  return GoalStatus::Undetermined;
}

namespace {

constexpr std::string_view k_no_plan_note = "no plan defined (see W_NO_PLAN)";

Value kleene_and(const Value& a, const Value& b)
{
  const auto* x = std::get_if<bool>(&a);
  const auto* y = std::get_if<bool>(&b);
  if ((x && !*x) || (y && !*y)) return false;
  if (x && y) return true;
  return Unknown{};
}

std::string relative_ref(const std::string& metric, std::int64_t lag)
{
  return lag == 0 ? metric + "[t]" : fmt::format("{}[t-{}]", metric, lag);
}

std::vector<std::string> leaf_lines(const Expr& expr, const EvalEnv& env)
{
  std::vector<std::string> out;
  auto add = [&](std::string line) {
    if (std::find(out.begin(), out.end(), line) == out.end()) out.push_back(std::move(line));
  };
  auto metric_line = [&](const std::string& metric, std::int64_t lag) {
    const std::int64_t period = env.period - lag;
    const auto datum = period >= 0 ? env.metric(metric, period) : std::nullopt;
    add(fmt::format("{}: {} (period {})", relative_ref(metric, lag), datum ? datum_to_string(*datum) : "missing",
                    period));
  };
  visit_expr(expr, [&](const Expr& e) {
    if (e.kind == ExprKind::Metric) {
      metric_line(e.name, e.lag);
      return;
    }
    if (e.kind == ExprKind::Call && e.function == Function::PctChange) {
      metric_line(e.args.at(0).name, e.args.at(0).lag);
      metric_line(e.args.at(0).name, e.args.at(0).lag + 1);
    } else if (e.kind == ExprKind::GoalStatus) {
      const auto s = env.status(e.name);
      add(fmt::format("status({}): {}", e.name, s ? std::string(status_keyword(*s)) : "unknown"));
    }
  });
  return out;
}

EvaluationReport evaluate_validated(const Model& model, const std::vector<std::string>& order, const Dataset& data,
                                    std::int64_t period)
{
  EvaluationReport report;
  report.period = period;

  std::map<std::string, GoalStatus, std::less<>> statuses;
  std::map<std::string, GoalOutcome, std::less<>> outcomes;

  const auto data_lookup = [&data](std::string_view metric, std::int64_t p) { return data.lookup(metric, p); };

  // Phase 1: statuses bottom-up; each goal sees only its descendants.
  for (const auto& goal_id : order) {
    const Goal& goal = *model.find_goal(goal_id);
    GoalOutcome outcome;
    outcome.goal = goal.id;
    outcome.level = goal.level;

    const auto plans = model.plans_for(goal.id);
    if (plans.empty()) {
      outcome.status = GoalStatus::Undetermined;
      outcome.note = std::string(k_no_plan_note);
    } else {
      EvalEnv env;
      env.period = period;
      env.status = [&](std::string_view g) -> std::optional<GoalStatus> {
        if (!is_descendant(model, g, goal.id)) return std::nullopt;
        const auto it = statuses.find(g);
        if (it == statuses.end()) return std::nullopt;
        return it->second;
      };
      env.metric = [&](std::string_view metric, std::int64_t p) {
        auto value = data.lookup(metric, p);
        InputUse use{std::string(metric), p, value};
        if (std::find(outcome.inputs.begin(), outcome.inputs.end(), use) == outcome.inputs.end()) {
          outcome.inputs.push_back(std::move(use));
        }
        return value;
      };

      EvalEnv quiet = env;
      quiet.metric = data_lookup;

      Value combined = true;
      for (const GQMPlan* plan : plans) {
        const Expr& condition = plan->interpretation.satisfied_when;
        const Value result = eval_expr(condition, env);
        combined = kleene_and(combined, result);
        outcome.traces.push_back(PlanTrace{plan->label(), format_expr(condition), annotate_expr(condition, quiet),
                                           leaf_lines(condition, quiet), result});
      }
      outcome.status = status_from_value(combined);
    }
    statuses.emplace(goal.id, outcome.status);
    outcomes.emplace(goal.id, std::move(outcome));
  }

  // Phase 2: diagnostics against the fixed statuses; they may look anywhere.
  EvalEnv env;
  env.period = period;
  env.metric = data_lookup;
  env.status = [&](std::string_view g) -> std::optional<GoalStatus> {
    const auto it = statuses.find(g);
    if (it == statuses.end()) return std::nullopt;
    return it->second;
  };
  for (const auto& plan : model.plans) {
    for (const auto& rule : plan.interpretation.diagnostics) {
      const Value v = eval_expr(rule.condition, env);
      if (const auto* b = std::get_if<bool>(&v); b && *b) report.findings.push_back(Finding{plan.goal_ref, rule.message});
    }
  }

  // Phase 3
  report.conflicts = detect_conflicts(model);

  for (const auto& g : model.goals) report.goals.push_back(std::move(outcomes.at(g.id)));
  return report;
}

Result<std::vector<std::string>, EvaluationError> prepare(const Model& model)
{
  auto diags = validate(model);
  if (has_errors(diags)) {
    std::vector<ValidationDiagnostic> errors;
    std::copy_if(diags.begin(), diags.end(), std::back_inserter(errors),
                 [](const auto& d) { return d.severity == Severity::Error; });
    return EvaluationError{fmt::format("model has {} validation error(s)", errors.size()), std::move(errors)};
  }
  auto order = derivation_order(model);
  if (!order) return EvaluationError{order.error(), {}};
  return std::move(order).value();
}

}  // namespace

Result<EvaluationReport, EvaluationError> evaluate(const Model& model, const Dataset& data, std::int64_t period)
{
  if (period < 0) return EvaluationError{fmt::format("period must be non-negative, got {}", period), {}};
  auto order = prepare(model);
  if (!order) return std::move(order).error();
  return evaluate_validated(model, order.value(), data, period);
}

Result<std::vector<EvaluationReport>, EvaluationError> evaluate_series(const Model& model, const Dataset& data,
                                                                        std::int64_t from, std::int64_t to)
{
  if (from > to) return EvaluationError{fmt::format("empty period range {}..{}", from, to), {}};
  if (from < 0) return EvaluationError{fmt::format("period must be non-negative, got {}", from), {}};
  auto order = prepare(model);
  if (!order) return std::move(order).error();
  std::vector<EvaluationReport> reports;
  for (std::int64_t p = from; p <= to; ++p) reports.push_back(evaluate_validated(model, order.value(), data, p));
  return reports;
}

Result<Explanation, std::string> explain(const EvaluationReport& report, std::string_view goal)
{
  const GoalOutcome* outcome = report.find(goal);
  if (outcome == nullptr) return fmt::format("goal '{}' is not part of this report", goal);
  Explanation ex;
  ex.goal = outcome->goal;
  ex.status = outcome->status;
  ex.note = outcome->note;
  ex.traces = outcome->traces;
  ex.findings = report.findings_for(goal);
  return ex;
}

std::string Explanation::to_string() const
{
  std::string out = fmt::format("{}: {}\n", goal, status_name(status));
  if (!note.empty()) out += fmt::format("  {}\n", note);
  for (const auto& t : traces) {
    out += fmt::format("  plan {}: {} ⇒ {}\n", t.plan, t.annotated, value_to_string(t.result));
    for (const auto& leaf : t.leaves) out += fmt::format("    {}\n", leaf);
  }
  for (const auto& f : findings) out += fmt::format("  finding: {}\n", f.message);
  return out;
}

}  // namespace gqms
