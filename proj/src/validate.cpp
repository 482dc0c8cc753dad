#include "gqms/validate.hpp"

#include <algorithm>
#include <map>
#include <set>

#include <fmt/format.h>

namespace gqms {
namespace {

class Validator {
 public:
  Validator(const Model& model, ValidateOptions options) : m_(model), options_(options) {}

  std::vector<ValidationDiagnostic> run()
  {
    if (options_.strict && m_.goals.empty()) {
      warn(DiagCode::Empty, "model declares no goals", {});
    }
    check_identifiers();
    check_required_fields();
    check_references();
    check_relations();
    check_forest();
    check_plans();
    std::stable_sort(out_.begin(), out_.end(), [](const ValidationDiagnostic& a, const ValidationDiagnostic& b) {
      return std::pair(a.location.start_line, a.location.start_col) <
             std::pair(b.location.start_line, b.location.start_col);
    });
    return std::move(out_);
  }

 private:
  void error(DiagCode code, std::string message, const SourceSpan& at)
  {
    out_.push_back(ValidationDiagnostic{Severity::Error, code, std::move(message), at});
  }

  void warn(DiagCode code, std::string message, const SourceSpan& at)
  {
    out_.push_back(ValidationDiagnostic{Severity::Warning, code, std::move(message), at});
  }

  // ---- identifiers ---------------------------------------------------------

  void check_identifiers()
  {
    struct Seen {
      std::string_view kind;
      const MetricDecl* metric = nullptr;
    };
    std::map<std::string, Seen, std::less<>> seen;
    auto declare = [&](const std::string& id, std::string_view kind, const SourceSpan& span,
                       const MetricDecl* metric = nullptr) {
      const auto [it, inserted] = seen.emplace(id, Seen{kind, metric});
      if (inserted) return;
      if (metric != nullptr && it->second.metric != nullptr) {
        const MetricDecl& first = *it->second.metric;
        if (first.value_kind == metric->value_kind && first.unit == metric->unit &&
            first.period_label == metric->period_label) {
          warn(DiagCode::MetricRedundant, fmt::format("metric '{}' is declared more than once", id), span);
        } else {
          error(DiagCode::MetricRedecl, fmt::format("metric '{}' is redeclared with a different kind, unit or period", id),
                span);
        }
        return;
      }
      error(DiagCode::DuplicateId, fmt::format("{} '{}' reuses an identifier already declared as a {}", kind, id,
                                               it->second.kind),
            span);
    };
    for (const auto& g : m_.goals) declare(g.id, "goal", g.span);
    for (const auto& s : m_.strategies) declare(s.id, "strategy", s.span);
    for (const auto& c : m_.contexts) declare(c.id, "context", c.span);
    for (const auto& a : m_.assumptions) declare(a.id, "assumption", a.span);
    for (const auto& x : m_.metrics) declare(x.id, "metric", x.span, &x);

    for (const auto& p : m_.plans) {
      std::set<std::string_view> questions;
      for (const auto& q : p.questions) {
        if (!questions.insert(q.id).second) {
          error(DiagCode::DuplicateId, fmt::format("question '{}' appears twice in plan {}", q.id, p.label()), q.span);
        }
      }
    }
  }

  // ---- template completeness ----------------------------------------------

  void require_text(const std::string& value, std::string_view field, std::string_view owner, const SourceSpan& at)
  {
    if (value.empty()) {
      error(DiagCode::MissingField, fmt::format("{} is missing required field '{}'", owner, field), at);
    }
  }

  void check_required_fields()
  {
    for (const auto& g : m_.goals) {
      const std::string owner = fmt::format("goal {}", g.id);
      if (g.level == 0) error(DiagCode::MissingField, fmt::format("{} is missing required field 'level'", owner), g.span);
      require_text(g.activity, "activity", owner, g.span);
      require_text(g.focus, "focus", owner, g.span);
      require_text(g.object, "object", owner, g.span);
      require_text(g.magnitude, "magnitude", owner, g.span);
      require_text(g.timeframe, "timeframe", owner, g.span);
      require_text(g.scope, "scope", owner, g.span);
    }
    for (const auto& s : m_.strategies) require_text(s.decision, "decision", fmt::format("strategy {}", s.id), s.span);
    for (const auto& c : m_.contexts) require_text(c.statement, "statement", fmt::format("context {}", c.id), c.span);
    for (const auto& a : m_.assumptions) {
      require_text(a.statement, "statement", fmt::format("assumption {}", a.id), a.span);
    }
    for (const auto& p : m_.plans) {
      const std::string owner = fmt::format("measurement goal of plan {}", p.label());
      const SourceSpan& at = p.mgoal.span.valid() ? p.mgoal.span : p.span;
      require_text(p.mgoal.object, "object", owner, at);
      require_text(p.mgoal.purpose, "purpose", owner, at);
      require_text(p.mgoal.focus, "focus", owner, at);
      require_text(p.mgoal.viewpoint, "viewpoint", owner, at);
      require_text(p.mgoal.context, "context", owner, at);
    }
  }

  // ---- reference resolution -----------------------------------------------

  void dangling(std::string_view what, std::string_view id, std::string_view owner, const SourceSpan& at)
  {
    error(DiagCode::DanglingRef, fmt::format("{} refers to unknown {} '{}'", owner, what, id), at);
  }

  void check_annotation_refs(const std::vector<std::string>& contexts, const std::vector<std::string>& assumptions,
                             std::string_view owner, const SourceSpan& at)
  {
    for (const auto& c : contexts) {
      if (m_.find_context(c) == nullptr) dangling("context factor", c, owner, at);
    }
    for (const auto& a : assumptions) {
      if (m_.find_assumption(a) == nullptr) dangling("assumption", a, owner, at);
    }
  }

  void check_references()
  {
    for (const auto& g : m_.goals) {
      const std::string owner = fmt::format("goal {}", g.id);
      if (g.derived_from && m_.find_strategy(*g.derived_from) == nullptr) {
        dangling("strategy", *g.derived_from, owner, g.span);
      }
      check_annotation_refs(g.context_refs, g.assumption_refs, owner, g.span);
    }
    for (const auto& s : m_.strategies) {
      const std::string owner = fmt::format("strategy {}", s.id);
      if (m_.find_goal(s.parent_goal) == nullptr) dangling("goal", s.parent_goal, owner, s.span);
      check_annotation_refs(s.context_refs, s.assumption_refs, owner, s.span);
    }
    for (const auto& p : m_.plans) {
      const std::string owner = fmt::format("plan {}", p.label());
      if (m_.find_goal(p.goal_ref) == nullptr) dangling("goal", p.goal_ref, owner, p.span);
      if (p.strategy_ref) {
        const Strategy* s = m_.find_strategy(*p.strategy_ref);
        if (s == nullptr) {
          dangling("strategy", *p.strategy_ref, owner, p.span);
        } else if (s->parent_goal != p.goal_ref) {
          error(DiagCode::PlanStrategy,
                fmt::format("plan {} names strategy {}, which belongs to goal {}", p.label(), s->id, s->parent_goal),
                p.span);
        }
      }
      for (const auto& metric : p.metric_refs) {
        if (m_.find_metric(metric) == nullptr) dangling("metric", metric, owner, p.span);
      }
      check_expression(p.interpretation.satisfied_when, owner);
      for (const auto& d : p.interpretation.diagnostics) check_expression(d.condition, owner);
    }
  }

  void check_expression(const Expr& e, std::string_view owner)
  {
    for (const auto& err : typecheck_expr(e, m_).errors) {
      const SourceSpan& at = err.span.valid() ? err.span : e.span;
      if (err.kind == TypeError::Kind::Mismatch) {
        error(DiagCode::Type, fmt::format("{}: {}", owner, err.message), at);
      } else {
        error(DiagCode::DanglingRef, fmt::format("{}: {}", owner, err.message), at);
      }
    }
  }

  // ---- relations -----------------------------------------------------------

  void check_relation_target(std::string_view from, const RelationTarget& to, const SourceSpan& at)
  {
    if (!to.is_identifier) return;
    if (m_.find_goal(to.text) == nullptr) {
      error(DiagCode::RelationEndpoint, fmt::format("relation from {} targets unknown goal '{}'", from, to.text), at);
    } else if (to.text == from) {
      error(DiagCode::RelationEndpoint, fmt::format("goal {} cannot be related to itself", from), at);
    }
  }

  void check_relations()
  {
    for (const auto& g : m_.goals) {
      for (const auto& r : g.relations) check_relation_target(g.id, r.target, r.span.valid() ? r.span : g.span);
    }
    for (const auto& r : m_.relations) {
      if (m_.find_goal(r.from) == nullptr) {
        error(DiagCode::RelationEndpoint, fmt::format("relation starts at unknown goal '{}'", r.from), r.span);
        continue;
      }
      check_relation_target(r.from, r.to, r.span);
    }
  }

  // ---- derivation forest ---------------------------------------------------

  const Goal* parent_of(const Goal& g) const
  {
    if (!g.derived_from) return nullptr;
    const Strategy* s = m_.find_strategy(*g.derived_from);
    return s == nullptr ? nullptr : m_.find_goal(s->parent_goal);
  }

  void check_forest()
  {
    // Goals lying on a derivation cycle.
    std::set<const Goal*> on_cycle;
    for (const auto& g : m_.goals) {
      if (on_cycle.count(&g) != 0) continue;
      std::vector<const Goal*> path;
      const Goal* cur = &g;
      while (cur != nullptr && std::find(path.begin(), path.end(), cur) == path.end()) {
        path.push_back(cur);
        cur = parent_of(*cur);
      }
      if (cur == nullptr || on_cycle.count(cur) != 0) continue;
      const auto loop_start = std::find(path.begin(), path.end(), cur);
      std::vector<std::string> ids;
      for (auto it = loop_start; it != path.end(); ++it) {
        on_cycle.insert(*it);
        ids.push_back((*it)->id);
      }
      ids.push_back(cur->id);
      error(DiagCode::Cycle, fmt::format("derivation cycle: {}", fmt::join(ids, " -> ")), cur->span);
    }

    for (const auto& g : m_.goals) {
      if (on_cycle.count(&g) != 0 || g.level == 0) continue;
      if (!g.derived_from) {
        if (g.level != 1) {
          error(DiagCode::Level, fmt::format("goal {} has no deriving strategy, so it must be at level 1 (found {})",
                                             g.id, g.level),
                g.span);
        }
      } else if (const Goal* parent = parent_of(g); parent != nullptr && parent->level > 0) {
        if (g.level != parent->level + 1) {
          error(DiagCode::Level, fmt::format("goal {} derives from {} (level {}), so it must be at level {} (found {})",
                                             g.id, parent->id, parent->level, parent->level + 1, g.level),
                g.span);
        }
      }
      if (g.level == 1 && !g.goal_type) {
        error(DiagCode::GoalType,
              fmt::format("level-1 goal {} needs a type (growth, success, maintenance, specific_focus)", g.id), g.span);
      }
    }
  }

  // ---- plans ---------------------------------------------------------------

  void check_plans()
  {
    std::set<std::pair<std::string, std::string>> keys;
    for (const auto& p : m_.plans) {
      if (!keys.emplace(p.goal_ref, p.strategy_ref.value_or("")).second) {
        error(DiagCode::DuplicatePlan, fmt::format("plan {} is defined more than once", p.label()), p.span);
      }
    }

    const Severity missing = options_.strict ? Severity::Error : Severity::Warning;
    for (const auto& s : m_.strategies) {
      if (m_.find_goal(s.parent_goal) == nullptr) continue;
      if (keys.count({s.parent_goal, s.id}) == 0) {
        out_.push_back(ValidationDiagnostic{missing, DiagCode::NoPlan,
                                            fmt::format("no plan measures goal {} via strategy {}", s.parent_goal, s.id),
                                            s.span});
      }
    }
    for (const auto& g : m_.goals) {
      if (!m_.strategies_for(g.id).empty()) continue;
      if (m_.plans_for(g.id).empty()) {
        out_.push_back(
          ValidationDiagnostic{missing, DiagCode::NoPlan, fmt::format("no plan measures goal {}", g.id), g.span});
      }
    }

    for (const auto& p : m_.plans) {
      const Goal* owner = m_.find_goal(p.goal_ref);
      if (owner != nullptr) {
        visit_expr(p.interpretation.satisfied_when, [&](const Expr& e) {
          if (e.kind != ExprKind::GoalStatus || m_.find_goal(e.name) == nullptr) return;
          if (!is_descendant(m_, e.name, owner->id)) {
            error(DiagCode::StatusScope,
                  fmt::format("plan {}: 'satisfied when' may only read statuses of goals below {}, not {}", p.label(),
                              owner->id, e.name),
                  e.span.valid() ? e.span : p.span);
          }
        });
      }

      std::set<std::string> reported;
      auto unlisted = [&](const Expr& e) {
        if (e.kind != ExprKind::Metric || m_.find_metric(e.name) == nullptr) return;
        if (std::find(p.metric_refs.begin(), p.metric_refs.end(), e.name) != p.metric_refs.end()) return;
        if (!reported.insert(e.name).second) return;
        warn(DiagCode::UnlistedMetric,
             fmt::format("plan {} interprets metric '{}' without listing it", p.label(), e.name),
             e.span.valid() ? e.span : p.span);
      };
      visit_expr(p.interpretation.satisfied_when, unlisted);
      for (const auto& d : p.interpretation.diagnostics) visit_expr(d.condition, unlisted);
    }
  }

  const Model& m_;
  ValidateOptions options_;
  std::vector<ValidationDiagnostic> out_;
};

// ---- conflict heuristics -----------------------------------------------------

// +1: the term grows with the metric, -1: it shrinks.
void collect_terms(const Expr& e, int sign, std::vector<std::pair<std::string, int>>& out)
{
  switch (e.kind) {
    case ExprKind::Metric:
      if (e.lag == 0) out.emplace_back(e.name, sign);
      return;
    case ExprKind::Unary:
      if (e.unary == UnaryOp::Negate) collect_terms(e.args.at(0), -sign, out);
      return;
    case ExprKind::Call:
      if (e.function == Function::PctChange) collect_terms(e.args.at(0), sign, out);
      return;
    case ExprKind::Binary: {
      const Expr& l = e.args.at(0);
      const Expr& r = e.args.at(1);
      auto literal_sign = [](const Expr& x) { return x.number > 0 ? 1 : (x.number < 0 ? -1 : 0); };
      switch (e.binary) {
        case BinaryOp::Add:
          collect_terms(l, sign, out);
          collect_terms(r, sign, out);
          return;
        case BinaryOp::Subtract:
          collect_terms(l, sign, out);
          collect_terms(r, -sign, out);
          return;
        case BinaryOp::Multiply:
          if (l.kind == ExprKind::Number && literal_sign(l) != 0) collect_terms(r, sign * literal_sign(l), out);
          if (r.kind == ExprKind::Number && literal_sign(r) != 0) collect_terms(l, sign * literal_sign(r), out);
          return;
        case BinaryOp::Divide:
          if (r.kind == ExprKind::Number && literal_sign(r) != 0) collect_terms(l, sign * literal_sign(r), out);
          return;
        default: return;
      }
    }
    default: return;
  }
}

// Direction each metric is required to move in: +1 up, -1 down.
void collect_requirements(const Expr& e, int polarity, std::set<std::pair<std::string, int>>& out)
{
  if (e.kind == ExprKind::Unary && e.unary == UnaryOp::Not) {
    collect_requirements(e.args.at(0), -polarity, out);
    return;
  }
  if (e.kind != ExprKind::Binary) return;
  int direction = 0;
  switch (e.binary) {
    case BinaryOp::And:
    case BinaryOp::Or:
      collect_requirements(e.args.at(0), polarity, out);
      collect_requirements(e.args.at(1), polarity, out);
      return;
    case BinaryOp::Greater:
    case BinaryOp::GreaterEqual: direction = 1; break;
    case BinaryOp::Less:
    case BinaryOp::LessEqual: direction = -1; break;
    default: return;
  }
  std::vector<std::pair<std::string, int>> terms;
  collect_terms(e.args.at(0), 1, terms);
  collect_terms(e.args.at(1), -1, terms);
  for (const auto& [metric, sign] : terms) out.emplace(metric, direction * sign * polarity);
}

}  // namespace

std::vector<ValidationDiagnostic> validate(const Model& model, ValidateOptions options)
{
  return Validator(model, options).run();
}

bool has_errors(const std::vector<ValidationDiagnostic>& diags) noexcept
{
  return std::any_of(diags.begin(), diags.end(), [](const auto& d) { return d.severity == Severity::Error; });
}

bool is_descendant(const Model& model, std::string_view candidate, std::string_view ancestor)
{
  const Goal* g = model.find_goal(candidate);
  for (std::size_t steps = 0; g != nullptr && steps <= model.goals.size(); ++steps) {
    if (!g->derived_from) return false;
    const Strategy* s = model.find_strategy(*g->derived_from);
    if (s == nullptr) return false;
    if (s->parent_goal == ancestor) return true;
    g = model.find_goal(s->parent_goal);
  }
  return false;
}

Result<std::vector<std::string>, std::string> derivation_order(const Model& model)
{
  std::vector<std::string> order;
  std::set<const Goal*> visited;

  // Iterative post-order so deep forests cannot exhaust the stack.
  struct Frame {
    const Goal* goal;
    std::vector<const Goal*> children;
    std::size_t next = 0;
  };
  auto children_of = [&](const Goal& g) {
    std::vector<const Goal*> kids;
    for (const Strategy* s : model.strategies_for(g.id)) {
      for (const Goal* child : model.goals_derived_from(s->id)) kids.push_back(child);
    }
    return kids;
  };

  for (const auto& root : model.goals) {
    if (root.derived_from) continue;
    if (!visited.insert(&root).second) continue;
    std::vector<Frame> stack;
    stack.push_back(Frame{&root, children_of(root)});
    while (!stack.empty()) {
      Frame& top = stack.back();
      if (top.next < top.children.size()) {
        const Goal* child = top.children[top.next++];
        if (visited.insert(child).second) stack.push_back(Frame{child, children_of(*child)});
        continue;
      }
      order.push_back(top.goal->id);
      stack.pop_back();
    }
  }

  if (order.size() != model.goals.size()) {
    std::vector<std::string> stranded;
    for (const auto& g : model.goals) {
      if (visited.count(&g) == 0) stranded.push_back(g.id);
    }
    return fmt::format("goals not reachable from a root (derivation cycle or unknown strategy): {}",
                       fmt::join(stranded, ", "));
  }
  return order;
}

std::vector<ValidationDiagnostic> detect_conflicts(const Model& model)
{
  std::vector<ValidationDiagnostic> out;

  std::set<std::pair<std::string, std::string>> echoed;
  auto competing = [&](const std::string& from, const RelationTarget& to, const SourceSpan& at) {
    std::pair key{from, to.is_identifier ? to.text : "\"" + to.text + "\""};
    if (to.is_identifier && key.second < key.first) std::swap(key.first, key.second);
    if (!echoed.insert(key).second) return;
    const std::string message = to.is_identifier
                                  ? fmt::format("goals {} and {} are declared competing", from, to.text)
                                  : fmt::format("goal {} is declared competing with \"{}\"", from, to.text);
    out.push_back(ValidationDiagnostic{Severity::Warning, DiagCode::Conflict, message, at});
  };
  for (const auto& g : model.goals) {
    for (const auto& r : g.relations) {
      if (r.kind == RelationKind::Competing) competing(g.id, r.target, r.span.valid() ? r.span : g.span);
    }
  }
  for (const auto& r : model.relations) {
    if (r.kind == RelationKind::Competing) competing(r.from, r.to, r.span);
  }

  // metric -> direction -> plans requiring it, in declaration order
  std::map<std::string, std::map<int, std::vector<const GQMPlan*>>> requirements;
  std::vector<std::string> metric_order;
  for (const auto& p : model.plans) {
    std::set<std::pair<std::string, int>> found;
    collect_requirements(p.interpretation.satisfied_when, 1, found);
    for (const auto& [metric, direction] : found) {
      auto& by_dir = requirements[metric];
      if (by_dir.empty()) metric_order.push_back(metric);
      by_dir[direction].push_back(&p);
    }
  }
  for (const auto& metric : metric_order) {
    auto& by_dir = requirements[metric];
    const auto& ups = by_dir[1];
    const auto& downs = by_dir[-1];
    const GQMPlan* up = nullptr;
    const GQMPlan* down = nullptr;
    for (const GQMPlan* u : ups) {
      for (const GQMPlan* d : downs) {
        if (u != d && up == nullptr) {
          up = u;
          down = d;
        }
      }
    }
    if (up == nullptr) continue;
    const GQMPlan* later = up > down ? up : down;
    out.push_back(ValidationDiagnostic{
      Severity::Warning, DiagCode::Conflict,
      fmt::format("metric '{}' must rise for plan {} but fall for plan {}", metric, up->label(), down->label()),
      later->span});
  }
  return out;
}

}  // namespace gqms
