#pragma once

// Random models for round-trip properties. Identifiers start with an
// upper-case letter so they can never collide with a keyword.

#include <random>
#include <string>
#include <vector>

#include "gqms/model.hpp"
#include "reference_eval.hpp"

namespace oracle {

inline gqms::Expr to_expr(const Node& n)
{
  using gqms::BinaryOp;
  using gqms::Expr;
  using gqms::Function;
  auto kid = [&](std::size_t i) { return to_expr(n.kids[i]); };
  auto bin = [&](BinaryOp op) { return Expr::binary_op(op, kid(0), kid(1)); };
  switch (n.op) {
    case Op::Num: return Expr::number_literal(n.num);
    case Op::Bool: return Expr::boolean_literal(n.tri == 2);
    case Op::Stat: {
      static const gqms::GoalStatus table[] = {gqms::GoalStatus::Satisfied, gqms::GoalStatus::NotSatisfied,
                                               gqms::GoalStatus::Undetermined};
      return Expr::status_literal(table[n.stat]);
    }
    case Op::Metric: return Expr::metric(n.name, n.lag);
    case Op::Status: return Expr::goal_status(n.name);
    case Op::Neg: return Expr::unary_op(gqms::UnaryOp::Negate, kid(0));
    case Op::Not: return Expr::unary_op(gqms::UnaryOp::Not, kid(0));
    case Op::Add: return bin(BinaryOp::Add);
    case Op::Sub: return bin(BinaryOp::Subtract);
    case Op::Mul: return bin(BinaryOp::Multiply);
    case Op::Div: return bin(BinaryOp::Divide);
    case Op::Lt: return bin(BinaryOp::Less);
    case Op::Le: return bin(BinaryOp::LessEqual);
    case Op::Gt: return bin(BinaryOp::Greater);
    case Op::Ge: return bin(BinaryOp::GreaterEqual);
    case Op::Eq: return bin(BinaryOp::Equal);
    case Op::Ne: return bin(BinaryOp::NotEqual);
    case Op::And: return bin(BinaryOp::And);
    case Op::Or: return bin(BinaryOp::Or);
    case Op::Defined: return Expr::call(Function::Defined, {kid(0)});
    case Op::Pct: return Expr::call(Function::PctChange, {kid(0)});
    case Op::Abs: return Expr::call(Function::Abs, {kid(0)});
    case Op::Min: return Expr::call(Function::Min, {kid(0), kid(1)});
    case Op::Max: return Expr::call(Function::Max, {kid(0), kid(1)});
  }
  return Expr::boolean_literal(false);
}

class ModelGenerator {
public:
  explicit ModelGenerator(std::uint64_t seed) : exprs_(seed), rng_(seed ^ 0x9e3779b97f4a7c15ULL) {}

  gqms::Model model()
  {
    gqms::Model m;
    m.name = "generated";
    const int n_ctx = count(3);
    for (int i = 0; i < n_ctx; ++i) m.contexts.push_back({"C" + std::to_string(i + 1), text(), {}});
    const int n_asm = count(3);
    for (int i = 0; i < n_asm; ++i) m.assumptions.push_back({"A" + std::to_string(i + 1), text(), {}});
    const int n_met = count(4);
    for (int i = 0; i < n_met; ++i) {
      gqms::MetricDecl d;
      d.id = "M" + std::to_string(i + 1);
      d.value_kind = chance(0.3) ? gqms::ValueKind::Boolean : gqms::ValueKind::Number;
      if (chance(0.5)) d.unit = text();
      if (chance(0.5)) d.period_label = text();
      m.metrics.push_back(d);
    }
    const int n_goals = count(5);
    for (int i = 0; i < n_goals; ++i) m.goals.push_back(goal(i));
    const int n_str = count(4);
    for (int i = 0; i < n_str; ++i) {
      gqms::Strategy s;
      s.id = "S" + std::to_string(i + 1);
      s.parent_goal = ident("G");
      s.decision = text();
      for (int k = count(2); k > 0; --k) s.activities.push_back(text());
      for (int k = count(2); k > 0; --k) s.context_refs.push_back(ident("C"));
      for (int k = count(2); k > 0; --k) s.assumption_refs.push_back(ident("A"));
      m.strategies.push_back(s);
    }
    for (int k = count(2); k > 0; --k) {
      gqms::Relation r;
      r.kind = chance(0.5) ? gqms::RelationKind::Competing : gqms::RelationKind::Complementary;
      r.from = ident("G");
      r.to = chance(0.5) ? gqms::RelationTarget{ident("G"), true} : gqms::RelationTarget{text(), false};
      m.relations.push_back(r);
    }
    for (int k = count(3); k > 0; --k) m.plans.push_back(plan());
    return m;
  }

private:
  gqms::Goal goal(int i)
  {
    gqms::Goal g;
    g.id = "G" + std::to_string(i + 1);
    g.level = static_cast<int>(pick(0, 4));
    if (chance(0.6)) {
      static const gqms::GoalType types[] = {gqms::GoalType::Growth, gqms::GoalType::Success,
                                             gqms::GoalType::Maintenance, gqms::GoalType::SpecificFocus};
      g.goal_type = types[pick(0, 3)];
    }
    g.activity = text();
    g.focus = text();
    g.object = text();
    g.magnitude = text();
    g.timeframe = text();
    g.scope = text();
    for (int k = count(2); k > 0; --k) g.constraints.push_back(text());
    for (int k = count(3); k > 0; --k) {
      gqms::RelationRef r;
      if (chance(0.7)) r.kind = chance(0.5) ? gqms::RelationKind::Competing : gqms::RelationKind::Complementary;
      if (r.kind && chance(0.5)) {
        r.target = {ident("G"), true};
      } else {
        r.target = {text(), false};
      }
      g.relations.push_back(r);
    }
    if (chance(0.5)) g.derived_from = ident("S");
    for (int k = count(2); k > 0; --k) g.context_refs.push_back(ident("C"));
    for (int k = count(2); k > 0; --k) g.assumption_refs.push_back(ident("A"));
    return g;
  }

  gqms::GQMPlan plan()
  {
    gqms::GQMPlan p;
    p.goal_ref = ident("G");
    if (chance(0.7)) p.strategy_ref = ident("S");
    p.mgoal = {text(), text(), text(), text(), text(), {}};
    for (int k = count(3); k > 0; --k) p.questions.push_back({"Q" + std::to_string(k), text(), {}});
    for (int k = count(3); k > 0; --k) p.metric_refs.push_back(ident("M"));
    p.interpretation.satisfied_when = to_expr(exprs_.expr(Ty::Bool, 4));
    for (int k = count(2); k > 0; --k) {
      p.interpretation.diagnostics.push_back({text(), to_expr(exprs_.expr(Ty::Bool, 3)), {}});
    }
    return p;
  }

  std::string ident(const char* prefix)
  {
    std::string s = prefix;
    s += std::to_string(pick(1, 9));
    if (chance(0.2)) s += "_x";
    return s;
  }

  std::string text()
  {
    static const std::vector<std::string> pieces{
      "a", "Profit", " ", "15%", "\"q\"", "\\", "#", "{", "}", "[x]", ",", "é", "goal", "t-1", "  "};
    std::string s;
    for (int k = static_cast<int>(pick(0, 5)); k > 0; --k) s += pieces[pick(0, static_cast<std::int64_t>(pieces.size()) - 1)];
    return s;
  }

  int count(int max) { return static_cast<int>(pick(0, max)); }
  bool chance(double p) { return std::uniform_real_distribution<double>(0, 1)(rng_) < p; }
  std::int64_t pick(std::int64_t lo, std::int64_t hi) { return std::uniform_int_distribution<std::int64_t>(lo, hi)(rng_); }

  Generator exprs_;
  std::mt19937_64 rng_;
};

}  // namespace oracle
