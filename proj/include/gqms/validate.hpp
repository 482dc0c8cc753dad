#pragma once

#include <string>
#include <vector>

#include "gqms/diagnostic.hpp"
#include "gqms/model.hpp"
#include "gqms/result.hpp"

namespace gqms {

struct ValidateOptions {
  /// Promotes missing plans to errors and lints empty models.
  bool strict = false;
};

/// Checks every meta-model rule and returns all findings, sorted by
/// source position (rule order breaks ties). Never throws.
std::vector<ValidationDiagnostic> validate(const Model& model, ValidateOptions options = {});

bool has_errors(const std::vector<ValidationDiagnostic>& diags) noexcept;

/// Goals in child-before-parent order (post-order of the derivation
/// forest, siblings in declaration order). Fails if some goal is not
/// reachable from a root, i.e. it sits on or under a derivation cycle or
/// derives from an unknown strategy.
Result<std::vector<std::string>, std::string> derivation_order(const Model& model);

/// True if `candidate` lies strictly below `ancestor` in the derivation forest.
bool is_descendant(const Model& model, std::string_view candidate, std::string_view ancestor);

/// W_CONFLICT for each declared competing relation, and for each metric
/// that one plan requires to rise while another requires it to fall.
std::vector<ValidationDiagnostic> detect_conflicts(const Model& model);

}  // namespace gqms
