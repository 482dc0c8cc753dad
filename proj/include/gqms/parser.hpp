#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "gqms/expr.hpp"
#include "gqms/model.hpp"
#include "gqms/result.hpp"

namespace gqms {

/// Parses `.gqms` text. The model name is the file name's stem. On any
/// error the whole list is returned and no model is produced.
Result<Model, std::vector<ParseError>> parse_model(std::string_view text, std::string_view file_name);

/// Canonical `.gqms` text for `model`.
std::string format_model(const Model& model);

/// Escapes `"` and `\` and wraps in quotes.
std::string quote(std::string_view text);

}  // namespace gqms
