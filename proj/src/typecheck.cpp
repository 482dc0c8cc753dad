#include <fmt/format.h>

#include "gqms/expr.hpp"
#include "gqms/model.hpp"

namespace gqms {
namespace {

class TypeChecker {
 public:
  explicit TypeChecker(const Model& model) : model_(model) {}

  ExprType check(const Expr& e)
  {
    switch (e.kind) {
      case ExprKind::Number: return ExprType::Number;
      case ExprKind::Boolean: return ExprType::Boolean;
      case ExprKind::Status: return ExprType::Status;
      case ExprKind::Metric: return metric_type(e);
      case ExprKind::GoalStatus:
        if (model_.find_goal(e.name) == nullptr) {
          report(TypeError::Kind::UnknownGoal, e, "goal", "unknown identifier",
                 fmt::format("status({}) does not name a goal", e.name));
          return ExprType::Invalid;
        }
        return ExprType::Status;
      case ExprKind::Unary: {
        const ExprType operand = check(e.args.at(0));
        const ExprType want = e.unary == UnaryOp::Not ? ExprType::Boolean : ExprType::Number;
        if (!require(e.args.at(0), operand, want, e.unary == UnaryOp::Not ? "not" : "unary -")) {
          return ExprType::Invalid;
        }
        return want;
      }
      case ExprKind::Binary: return binary(e);
      case ExprKind::Call: return call(e);
    }
    return ExprType::Invalid;
  }

  std::vector<TypeError> errors;

  void report(TypeError::Kind kind, const Expr& at, std::string expected, std::string found, std::string message)
  {
    errors.push_back(TypeError{kind, at.span, std::move(expected), std::move(found), std::move(message)});
  }

 private:
  ExprType metric_type(const Expr& e)
  {
    const MetricDecl* decl = model_.find_metric(e.name);
    if (decl == nullptr) {
      report(TypeError::Kind::UnknownMetric, e, "declared metric", "unknown identifier",
             fmt::format("metric '{}' is not declared", e.name));
      return ExprType::Invalid;
    }
    return decl->value_kind == ValueKind::Number ? ExprType::Number : ExprType::Boolean;
  }

  // Reports a mismatch unless the operand was already invalid.
  bool require(const Expr& operand, ExprType actual, ExprType want, std::string_view context)
  {
    if (actual == ExprType::Invalid) return false;
    if (actual == want) return true;
    report(TypeError::Kind::Mismatch, operand, std::string(type_name(want)), std::string(type_name(actual)),
           fmt::format("operand of '{}' must be {}, found {}", context, type_name(want), type_name(actual)));
    return false;
  }

  ExprType binary(const Expr& e)
  {
    const Expr& lhs = e.args.at(0);
    const Expr& rhs = e.args.at(1);
    const ExprType lt = check(lhs);
    const ExprType rt = check(rhs);
    const std::string_view op = binary_op_spelling(e.binary);
    switch (e.binary) {
      case BinaryOp::Add:
      case BinaryOp::Subtract:
      case BinaryOp::Multiply:
      case BinaryOp::Divide: {
        const bool l = require(lhs, lt, ExprType::Number, op);
        const bool r = require(rhs, rt, ExprType::Number, op);
        return l && r ? ExprType::Number : ExprType::Invalid;
      }
      case BinaryOp::Less:
      case BinaryOp::LessEqual:
      case BinaryOp::Greater:
      case BinaryOp::GreaterEqual: {
        const bool l = require(lhs, lt, ExprType::Number, op);
        const bool r = require(rhs, rt, ExprType::Number, op);
        return l && r ? ExprType::Boolean : ExprType::Invalid;
      }
      case BinaryOp::Equal:
      case BinaryOp::NotEqual: {
        if (lt == ExprType::Invalid || rt == ExprType::Invalid) return ExprType::Invalid;
        if (lt == ExprType::Boolean) {
          require(lhs, lt, ExprType::Number, op);
          return ExprType::Invalid;
        }
        if (!require(rhs, rt, lt, op)) return ExprType::Invalid;
        return ExprType::Boolean;
      }
      case BinaryOp::And:
      case BinaryOp::Or: {
        const bool l = require(lhs, lt, ExprType::Boolean, op);
        const bool r = require(rhs, rt, ExprType::Boolean, op);
        return l && r ? ExprType::Boolean : ExprType::Invalid;
      }
    }
    return ExprType::Invalid;
  }

  ExprType call(const Expr& e)
  {
    const std::string_view fn = function_name(e.function);
    switch (e.function) {
      case Function::Defined:
        return check(e.args.at(0)) == ExprType::Invalid ? ExprType::Invalid : ExprType::Boolean;
      case Function::PctChange:
      case Function::Abs: {
        const bool ok = require(e.args.at(0), check(e.args.at(0)), ExprType::Number, fn);
        return ok ? ExprType::Number : ExprType::Invalid;
      }
      case Function::Min:
      case Function::Max: {
        const bool a = require(e.args.at(0), check(e.args.at(0)), ExprType::Number, fn);
        const bool b = require(e.args.at(1), check(e.args.at(1)), ExprType::Number, fn);
        return a && b ? ExprType::Number : ExprType::Invalid;
      }
    }
    return ExprType::Invalid;
  }

  const Model& model_;
};

}  // namespace

TypeCheckResult typecheck_expr(const Expr& expr, const Model& model, bool require_boolean_root)
{
  TypeChecker checker(model);
  TypeCheckResult result;
  result.type = checker.check(expr);
  if (require_boolean_root && result.type != ExprType::Invalid && result.type != ExprType::Boolean) {
    checker.report(TypeError::Kind::Mismatch, expr, "boolean", std::string(type_name(result.type)),
                   fmt::format("condition must be boolean, found {}", type_name(result.type)));
  }
  result.errors = std::move(checker.errors);
  return result;
}

}  // namespace gqms
