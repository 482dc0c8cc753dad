#pragma once

#include <optional>
#include <string_view>

namespace gqms {

/// Verdict of an interpretation model.
enum class GoalStatus { Satisfied, NotSatisfied, Undetermined };

/// Keyword spelling used in expressions: satisfied / not_satisfied / undetermined.
std::string_view status_keyword(GoalStatus s) noexcept;
/// Report spelling: Satisfied / NotSatisfied / Undetermined.
std::string_view status_name(GoalStatus s) noexcept;
std::optional<GoalStatus> status_from_keyword(std::string_view word) noexcept;

}  // namespace gqms
