#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "gqms/dataset.hpp"
#include "gqms/diagnostic.hpp"
#include "gqms/expr.hpp"
#include "gqms/model.hpp"
#include "gqms/result.hpp"
#include "gqms/status.hpp"

namespace gqms {

/// A metric read performed while evaluating a goal.
struct InputUse {
  std::string metric;
  std::int64_t period = 0;
  std::optional<Datum> value;  // nullopt = missing

  bool operator==(const InputUse&) const = default;
};

/// How one plan's `satisfied when` clause evaluated.
struct PlanTrace {
  std::string plan;        // plan label, e.g. "G1 via S1"
  std::string expression;  // canonical expression text
  std::string annotated;   // expression with leaf values filled in
  std::vector<std::string> leaves;  // "P[t]: 116 (period 2)"
  Value result;

  bool operator==(const PlanTrace&) const = default;
};

struct GoalOutcome {
  std::string goal;
  int level = 0;
  GoalStatus status = GoalStatus::Undetermined;
  std::string note;  // set for goals without a plan
  std::vector<PlanTrace> traces;
  std::vector<InputUse> inputs;

  bool operator==(const GoalOutcome&) const = default;
};

struct Finding {
  std::string goal;
  std::string message;

  bool operator==(const Finding&) const = default;
};

struct EvaluationReport {
  std::int64_t period = 0;
  std::vector<GoalOutcome> goals;  // model declaration order
  std::vector<Finding> findings;
  std::vector<ValidationDiagnostic> conflicts;

  bool operator==(const EvaluationReport&) const = default;

  [[nodiscard]] const GoalOutcome* find(std::string_view goal) const;
  [[nodiscard]] std::optional<GoalStatus> status(std::string_view goal) const;
  [[nodiscard]] std::vector<Finding> findings_for(std::string_view goal) const;
};

struct EvaluationError {
  std::string message;
  std::vector<ValidationDiagnostic> diagnostics;
};

/// Computes goal statuses bottom-up at `period`, then fires diagnostic
/// rules against the fixed statuses, then attaches conflict warnings.
Result<EvaluationReport, EvaluationError> evaluate(const Model& model, const Dataset& data, std::int64_t period);

/// One report per period in [from, to].
Result<std::vector<EvaluationReport>, EvaluationError> evaluate_series(const Model& model, const Dataset& data,
                                                                        std::int64_t from, std::int64_t to);

struct Explanation {
  std::string goal;
  GoalStatus status = GoalStatus::Undetermined;
  std::string note;
  std::vector<PlanTrace> traces;
  std::vector<Finding> findings;

  [[nodiscard]] std::string to_string() const;
};

Result<Explanation, std::string> explain(const EvaluationReport& report, std::string_view goal);

GoalStatus status_from_value(const Value& v) noexcept;

}  // namespace gqms
