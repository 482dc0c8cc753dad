#include <fmt/format.h>

#include "gqms/parser.hpp"

namespace gqms {

std::string quote(std::string_view text)
{
  std::string out;
  out.reserve(text.size() + 2);
  out += '"';
  for (const char c : text) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  out += '"';
  return out;
}

namespace {

std::string string_list(const std::vector<std::string>& items)
{
  std::string out = "[";
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (i > 0) out += ", ";
    out += quote(items[i]);
  }
  return out + "]";
}

std::string identifier_list(const std::vector<std::string>& items)
{
  return fmt::format("[{}]", fmt::join(items, ", "));
}

std::string target_text(const RelationTarget& t)
{
  return t.is_identifier ? t.text : quote(t.text);
}

std::string relation_list(const std::vector<RelationRef>& refs)
{
  std::string out = "[";
  for (std::size_t i = 0; i < refs.size(); ++i) {
    if (i > 0) out += ", ";
    if (refs[i].kind) {
      out += relation_kind_keyword(*refs[i].kind);
      out += ' ';
    }
    out += target_text(refs[i].target);
  }
  return out + "]";
}

void write_goal(std::string& out, const Goal& g)
{
  out += fmt::format("goal {} {{\n", g.id);
  if (g.level > 0) out += fmt::format("  level {}\n", g.level);
  if (g.goal_type) out += fmt::format("  type {}\n", goal_type_keyword(*g.goal_type));
  out += fmt::format("  activity {}\n", quote(g.activity));
  out += fmt::format("  focus {}\n", quote(g.focus));
  out += fmt::format("  object {}\n", quote(g.object));
  out += fmt::format("  magnitude {}\n", quote(g.magnitude));
  out += fmt::format("  timeframe {}\n", quote(g.timeframe));
  out += fmt::format("  scope {}\n", quote(g.scope));
  out += fmt::format("  constraints {}\n", string_list(g.constraints));
  out += fmt::format("  relations {}\n", relation_list(g.relations));
  if (g.derived_from) out += fmt::format("  derived_from {}\n", *g.derived_from);
  if (!g.context_refs.empty()) out += fmt::format("  context {}\n", identifier_list(g.context_refs));
  if (!g.assumption_refs.empty()) out += fmt::format("  assumptions {}\n", identifier_list(g.assumption_refs));
  out += "}\n";
}

void write_strategy(std::string& out, const Strategy& s)
{
  out += fmt::format("strategy {} for {} {{\n", s.id, s.parent_goal);
  out += fmt::format("  decision {}\n", quote(s.decision));
  out += fmt::format("  activities {}\n", string_list(s.activities));
  if (!s.context_refs.empty()) out += fmt::format("  context {}\n", identifier_list(s.context_refs));
  if (!s.assumption_refs.empty()) out += fmt::format("  assumptions {}\n", identifier_list(s.assumption_refs));
  out += "}\n";
}

void write_metric(std::string& out, const MetricDecl& m)
{
  out += fmt::format("metric {} : {}", m.id, value_kind_keyword(m.value_kind));
  if (m.unit) out += fmt::format(" unit {}", quote(*m.unit));
  if (m.period_label) out += fmt::format(" period {}", quote(*m.period_label));
  out += '\n';
}

void write_plan(std::string& out, const GQMPlan& p)
{
  out += fmt::format("gqm for {}", p.goal_ref);
  if (p.strategy_ref) out += fmt::format(" via {}", *p.strategy_ref);
  out += " {\n";
  out += "  mgoal {\n";
  out += fmt::format("    object {}\n", quote(p.mgoal.object));
  out += fmt::format("    purpose {}\n", quote(p.mgoal.purpose));
  out += fmt::format("    focus {}\n", quote(p.mgoal.focus));
  out += fmt::format("    viewpoint {}\n", quote(p.mgoal.viewpoint));
  out += fmt::format("    context {}\n", quote(p.mgoal.context));
  out += "  }\n";
  for (const auto& q : p.questions) out += fmt::format("  question {} {}\n", q.id, quote(q.text));
  for (const auto& m : p.metric_refs) out += fmt::format("  metric {}\n", m);
  out += "  interpretation {\n";
  out += fmt::format("    satisfied when {}\n", format_expr(p.interpretation.satisfied_when));
  for (const auto& d : p.interpretation.diagnostics) {
    out += fmt::format("    diagnostic {} when {}\n", quote(d.message), format_expr(d.condition));
  }
  out += "  }\n";
  out += "}\n";
}

}  // namespace

std::string format_model(const Model& model)
{
  std::vector<std::string> blocks;
  std::string chunk;
  auto flush = [&] {
    if (!chunk.empty()) blocks.push_back(std::move(chunk));
    chunk.clear();
  };

  for (const auto& c : model.contexts) chunk += fmt::format("context {} {}\n", c.id, quote(c.statement));
  flush();
  for (const auto& a : model.assumptions) chunk += fmt::format("assumption {} {}\n", a.id, quote(a.statement));
  flush();
  for (const auto& m : model.metrics) write_metric(chunk, m);
  flush();
  for (const auto& g : model.goals) {
    write_goal(chunk, g);
    flush();
  }
  for (const auto& s : model.strategies) {
    write_strategy(chunk, s);
    flush();
  }
  for (const auto& r : model.relations) {
    chunk += fmt::format("relation {} {} {}\n", relation_kind_keyword(r.kind), r.from, target_text(r.to));
  }
  flush();
  for (const auto& p : model.plans) {
    write_plan(chunk, p);
    flush();
  }
  return fmt::format("{}", fmt::join(blocks, "\n"));
}

}  // namespace gqms
