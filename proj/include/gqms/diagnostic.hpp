#pragma once

#include <string>
#include <string_view>

#include "gqms/source_span.hpp"

namespace gqms {

enum class Severity { Error, Warning };

enum class DiagCode {
  MissingField,       // E_MISSING_FIELD
  DuplicateId,        // E_DUPLICATE_ID
  DanglingRef,        // E_DANGLING_REF
  Cycle,              // E_CYCLE
  Level,              // E_LEVEL
  GoalType,           // E_GOAL_TYPE
  MetricRedecl,       // E_METRIC_REDECL
  DuplicatePlan,      // E_DUPLICATE_PLAN
  PlanStrategy,       // E_PLAN_STRATEGY
  RelationEndpoint,   // E_RELATION_ENDPOINT
  StatusScope,        // E_STATUS_SCOPE
  Type,               // E_TYPE
  NoPlan,             // W_NO_PLAN
  UnlistedMetric,     // W_UNLISTED_METRIC
  MetricRedundant,    // W_METRIC_REDUNDANT
  Empty,              // W_EMPTY
  Conflict,           // W_CONFLICT
};

std::string_view code_name(DiagCode code) noexcept;
std::string_view severity_name(Severity s) noexcept;

struct ValidationDiagnostic {
  Severity severity = Severity::Error;
  DiagCode code = DiagCode::MissingField;
  std::string message;
  SourceSpan location;

  bool operator==(const ValidationDiagnostic&) const = default;

  /// `severity CODE file:line:col message`
  [[nodiscard]] std::string to_string() const;
};

}  // namespace gqms
