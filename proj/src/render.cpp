#include "gqms/render.hpp"

#include <algorithm>
#include <set>

#include <fmt/format.h>

namespace gqms {
namespace {

std::string_view glyph(GoalStatus s) noexcept
{
  switch (s) {
    case GoalStatus::Satisfied: return "✓";
    case GoalStatus::NotSatisfied: return "✗";
    case GoalStatus::Undetermined: break;
  }
  return "?";
}

std::string_view ansi_color(GoalStatus s) noexcept
{
  switch (s) {
    case GoalStatus::Satisfied: return "\x1b[32m";
    case GoalStatus::NotSatisfied: return "\x1b[31m";
    case GoalStatus::Undetermined: break;
  }
  return "\x1b[33m";
}

GoalStatus status_or_undetermined(const EvaluationReport* report, std::string_view goal)
{
  if (report == nullptr) return GoalStatus::Undetermined;
  return report->status(goal).value_or(GoalStatus::Undetermined);
}

std::string summary(const Goal& g)
{
  std::string out = g.activity;
  if (!g.focus.empty()) out += (out.empty() ? "" : " ") + g.focus;
  return out;
}

// Goals whose derivation does not lead back to a known strategy start a tree.
std::vector<const Goal*> roots(const Model& model)
{
  std::vector<const Goal*> out;
  for (const auto& g : model.goals) {
    if (!g.derived_from || model.find_strategy(*g.derived_from) == nullptr) out.push_back(&g);
  }
  return out;
}

class TreeWriter {
public:
  TreeWriter(const Model& model, const EvaluationReport* report, RenderOptions options)
    : model_(model), report_(report), options_(options)
  {
  }

  std::string run()
  {
    for (const Goal* g : roots(model_)) goal(*g, "", "");
    return std::move(out_);
  }

private:
  void goal(const Goal& g, const std::string& lead, const std::string& indent)
  {
    if (!visited_.insert(g.id).second) return;
    out_ += lead + g.id;
    if (report_ != nullptr && options_.show_statuses) {
      const GoalStatus s = status_or_undetermined(report_, g.id);
      out_ += ' ';
      if (options_.color) {
        out_ += fmt::format("{}{}\x1b[0m", ansi_color(s), glyph(s));
      } else {
        out_ += glyph(s);
      }
    }
    out_ += fmt::format(" level {}: {} [plans: {}]\n", g.level, summary(g), model_.plans_for(g.id).size());

    const auto children = model_.strategies_for(g.id);
    for (std::size_t i = 0; i < children.size(); ++i) {
      const bool last = i + 1 == children.size();
      strategy(*children[i], indent + (last ? "└─ " : "├─ "), indent + (last ? "   " : "│  "));
    }
  }

  void strategy(const Strategy& s, const std::string& lead, const std::string& indent)
  {
    out_ += fmt::format("{}{}: {}\n", lead, s.id, s.decision);
    const auto children = model_.goals_derived_from(s.id);
    for (std::size_t i = 0; i < children.size(); ++i) {
      const bool last = i + 1 == children.size();
      goal(*children[i], indent + (last ? "└─ " : "├─ "), indent + (last ? "   " : "│  "));
    }
  }

  const Model& model_;
  const EvaluationReport* report_;
  RenderOptions options_;
  std::set<std::string, std::less<>> visited_;
  std::string out_;
};

std::string dot_quote(std::string_view s)
{
  std::string out = "\"";
  for (const char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\r': break;
      default: out += c;
    }
  }
  return out + '"';
}

std::string goal_label(const Model& model, const Goal& g)
{
  std::string head = fmt::format("{} (level {}", g.id, g.level);
  if (g.goal_type) head += fmt::format(", {}", goal_type_keyword(*g.goal_type));
  head += ')';
  std::vector<std::string> lines{head, summary(g)};
  if (!g.object.empty()) lines.push_back("object: " + g.object);
  if (!g.magnitude.empty()) lines.push_back("magnitude: " + g.magnitude);
  if (!g.timeframe.empty()) lines.push_back("timeframe: " + g.timeframe);
  if (!g.scope.empty()) lines.push_back("scope: " + g.scope);
  lines.push_back(fmt::format("plans: {}", model.plans_for(g.id).size()));
  return fmt::format("{}", fmt::join(lines, "\n"));
}

std::string_view fill_color(GoalStatus s) noexcept
{
  switch (s) {
    case GoalStatus::Satisfied: return "palegreen";
    case GoalStatus::NotSatisfied: return "lightcoral";
    case GoalStatus::Undetermined: break;
  }
  return "lightgray";
}

std::string md_cell(std::string_view s)
{
  std::string out;
  for (const char c : s) {
    if (c == '|') {
      out += "\\|";
    } else if (c == '\n') {
      out += ' ';
    } else {
      out += c;
    }
  }
  return out;
}

std::string key_inputs(const GoalOutcome& outcome)
{
  if (outcome.inputs.empty()) return "-";
  std::vector<std::string> parts;
  parts.reserve(outcome.inputs.size());
  for (const auto& in : outcome.inputs) {
    parts.push_back(
      fmt::format("{}[{}]={}", in.metric, in.period, in.value ? datum_to_string(*in.value) : std::string("missing")));
  }
  return fmt::format("{}", fmt::join(parts, ", "));
}

void plan_section(std::string& out, const GQMPlan& plan)
{
  out += fmt::format("### {}\n\n", plan.label());
  const MGoal& m = plan.mgoal;
  out += fmt::format(
    "Measurement goal: analyze {} for the purpose of {} with respect to {} from the viewpoint of {} in the "
    "context of {}.\n\n",
    m.object, m.purpose, m.focus, m.viewpoint, m.context);
  if (!plan.questions.empty()) {
    out += "Questions:\n\n";
    for (const auto& q : plan.questions) out += fmt::format("- {}: {}\n", q.id, q.text);
    out += '\n';
  }
  if (!plan.metric_refs.empty()) out += fmt::format("Metrics: {}\n\n", fmt::join(plan.metric_refs, ", "));
  out += fmt::format("Satisfied when: `{}`\n\n", format_expr(plan.interpretation.satisfied_when));
  if (!plan.interpretation.diagnostics.empty()) {
    out += "Diagnostics:\n\n";
    for (const auto& d : plan.interpretation.diagnostics) {
      out += fmt::format("- \"{}\" when `{}`\n", d.message, format_expr(d.condition));
    }
    out += '\n';
  }
}

}  // namespace

std::string render_tree(const Model& model, const EvaluationReport* report, RenderOptions options)
{
  return TreeWriter(model, report, options).run();
}

std::string render_dot(const Model& model, const EvaluationReport* report, RenderOptions options)
{
  const bool fill = report != nullptr && options.show_statuses;
  std::string out = fmt::format("digraph {} {{\n", dot_quote(model.name.empty() ? "model" : model.name));

  for (const auto& g : model.goals) {
    out += fmt::format("  {} [shape=box, label={}", dot_quote(g.id), dot_quote(goal_label(model, g)));
    if (fill) out += fmt::format(", style=filled, fillcolor={}", fill_color(status_or_undetermined(report, g.id)));
    out += "];\n";
  }
  for (const auto& s : model.strategies) {
    out += fmt::format("  {} [shape=ellipse, label={}];\n", dot_quote(s.id), dot_quote(s.id + "\n" + s.decision));
  }

  // Relation endpoints that are not goals of this model become plain text nodes.
  std::vector<std::string> relation_edges;
  auto target_node = [&](const std::string& node_id, const RelationTarget& target) {
    if (target.is_identifier && model.find_goal(target.text) != nullptr) return dot_quote(target.text);
    out += fmt::format("  {} [shape=plaintext, label={}];\n", dot_quote(node_id), dot_quote(target.text));
    return dot_quote(node_id);
  };
  for (const auto& g : model.goals) {
    for (std::size_t i = 0; i < g.relations.size(); ++i) {
      const auto& r = g.relations[i];
      const std::string to = target_node(fmt::format("{}.r{}", g.id, i + 1), r.target);
      const std::string_view label = r.kind ? relation_kind_keyword(*r.kind) : "note";
      relation_edges.push_back(
        fmt::format("  {} -> {} [style=dashed, label={}];\n", dot_quote(g.id), to, dot_quote(label)));
    }
  }
  for (std::size_t i = 0; i < model.relations.size(); ++i) {
    const auto& r = model.relations[i];
    const std::string to = target_node(fmt::format("relation.{}", i + 1), r.to);
    relation_edges.push_back(fmt::format("  {} -> {} [style=dashed, label={}];\n", dot_quote(r.from), to,
                                         dot_quote(relation_kind_keyword(r.kind))));
  }

  for (const auto& s : model.strategies) {
    if (model.find_goal(s.parent_goal) != nullptr) {
      out += fmt::format("  {} -> {} [style=solid];\n", dot_quote(s.parent_goal), dot_quote(s.id));
    }
  }
  for (const auto& g : model.goals) {
    if (g.derived_from && model.find_strategy(*g.derived_from) != nullptr) {
      out += fmt::format("  {} -> {} [style=solid];\n", dot_quote(*g.derived_from), dot_quote(g.id));
    }
  }
  for (const auto& e : relation_edges) out += e;
  out += "}\n";
  return out;
}

std::string render_report_md(const Model& model, const EvaluationReport& report)
{
  std::string out = fmt::format("# Evaluation report: {} (period {})\n\n", model.name.empty() ? "model" : model.name,
                                report.period);

  out += "| Goal | Level | Status | Key inputs |\n";
  out += "|---|---|---|---|\n";
  for (const auto& g : report.goals) {
    out += fmt::format("| {} | {} | {} | {} |\n", md_cell(g.goal), g.level, status_name(g.status),
                       md_cell(key_inputs(g)));
  }
  out += '\n';
  const bool all_undetermined =
    !report.goals.empty() && std::all_of(report.goals.begin(), report.goals.end(), [](const GoalOutcome& g) {
      return g.status == GoalStatus::Undetermined;
    });
  if (all_undetermined) {
    out += fmt::format(
      "> Note: every goal is Undetermined. The supplied data lacks the measurements these goals need at period "
      "{}.\n\n",
      report.period);
  }

  out += "## Findings\n\n";
  if (report.findings.empty()) {
    out += "None.\n\n";
  } else {
    for (const auto& f : report.findings) out += fmt::format("- **{}**: {}\n", f.goal, f.message);
    out += '\n';
  }

  out += "## Conflicts\n\n";
  if (report.conflicts.empty()) {
    out += "None.\n\n";
  } else {
    for (const auto& c : report.conflicts) out += fmt::format("- {}\n", c.message);
    out += '\n';
  }

  out += "## Measurement plans\n\n";
  if (model.plans.empty()) out += "None.\n\n";
  for (const auto& plan : model.plans) plan_section(out, plan);

  out += "## Appendix: explanations\n";
  for (const auto& g : report.goals) {
    auto ex = explain(report, g.goal);
    if (!ex) continue;
    out += fmt::format("\n### {}\n\n```text\n{}```\n", g.goal, ex->to_string());
  }
  return out;
}

}  // namespace gqms
