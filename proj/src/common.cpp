#include <algorithm>
#include <string>

#include <fmt/format.h>

#include "gqms/diagnostic.hpp"
#include "gqms/source_span.hpp"
#include "gqms/status.hpp"

namespace gqms {

SourceSpan join(const SourceSpan& a, const SourceSpan& b)
{
  if (!a.valid()) return b;
  if (!b.valid()) return a;
  SourceSpan out = a;
  if (std::pair(b.start_line, b.start_col) < std::pair(a.start_line, a.start_col)) {
    out.start_line = b.start_line;
    out.start_col = b.start_col;
  }
  if (std::pair(b.end_line, b.end_col) > std::pair(a.end_line, a.end_col)) {
    out.end_line = b.end_line;
    out.end_col = b.end_col;
  }
  return out;
}

std::string location_string(const SourceSpan& span)
{
  if (!span.valid()) return span.file;
  return fmt::format("{}:{}:{}", span.file, span.start_line, span.start_col);
}

namespace {

std::size_t offset_of(std::string_view text, int line, int col)
{
  std::size_t pos = 0;
  for (int l = 1; l < line && pos < text.size(); ++pos) {
    if (text[pos] == '\n') ++l;
  }
  return std::min(text.size(), pos + static_cast<std::size_t>(std::max(col - 1, 0)));
}

}  // namespace

std::string_view slice(std::string_view text, const SourceSpan& span)
{
  if (!span.valid()) return {};
  const auto begin = offset_of(text, span.start_line, span.start_col);
  const auto end = offset_of(text, span.end_line, span.end_col);
  if (end <= begin) return {};
  return text.substr(begin, end - begin);
}

std::string_view status_keyword(GoalStatus s) noexcept
{
  switch (s) {
    case GoalStatus::Satisfied: return "satisfied";
    case GoalStatus::NotSatisfied: return "not_satisfied";
    case GoalStatus::Undetermined: return "undetermined";
  }
  return "undetermined";
}

std::string_view status_name(GoalStatus s) noexcept
{
  switch (s) {
    case GoalStatus::Satisfied: return "Satisfied";
    case GoalStatus::NotSatisfied: return "NotSatisfied";
    case GoalStatus::Undetermined: return "Undetermined";
  }
  return "Undetermined";
}

std::optional<GoalStatus> status_from_keyword(std::string_view word) noexcept
{
  if (word == "satisfied") return GoalStatus::Satisfied;
  if (word == "not_satisfied") return GoalStatus::NotSatisfied;
  if (word == "undetermined") return GoalStatus::Undetermined;
  return std::nullopt;
}

std::string_view code_name(DiagCode code) noexcept
{
  switch (code) {
    case DiagCode::MissingField: return "E_MISSING_FIELD";
    case DiagCode::DuplicateId: return "E_DUPLICATE_ID";
    case DiagCode::DanglingRef: return "E_DANGLING_REF";
    case DiagCode::Cycle: return "E_CYCLE";
    case DiagCode::Level: return "E_LEVEL";
    case DiagCode::GoalType: return "E_GOAL_TYPE";
    case DiagCode::MetricRedecl: return "E_METRIC_REDECL";
    case DiagCode::DuplicatePlan: return "E_DUPLICATE_PLAN";
    case DiagCode::PlanStrategy: return "E_PLAN_STRATEGY";
    case DiagCode::RelationEndpoint: return "E_RELATION_ENDPOINT";
    case DiagCode::StatusScope: return "E_STATUS_SCOPE";
    case DiagCode::Type: return "E_TYPE";
    case DiagCode::NoPlan: return "W_NO_PLAN";
    case DiagCode::UnlistedMetric: return "W_UNLISTED_METRIC";
    case DiagCode::MetricRedundant: return "W_METRIC_REDUNDANT";
    case DiagCode::Empty: return "W_EMPTY";
    case DiagCode::Conflict: return "W_CONFLICT";
  }
  return "E_UNKNOWN";
}

std::string_view severity_name(Severity s) noexcept
{
  return s == Severity::Error ? "error" : "warning";
}

std::string ValidationDiagnostic::to_string() const
{
  const auto where = location_string(location);
  return fmt::format("{} {} {} {}", severity_name(severity), code_name(code), where.empty() ? "-" : where, message);
}

}  // namespace gqms
