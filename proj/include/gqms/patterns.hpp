#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "gqms/model.hpp"
#include "gqms/result.hpp"

namespace gqms {

struct PatternParam {
  std::string name;
  std::string description;
  std::optional<std::string> default_value;

  bool operator==(const PatternParam&) const = default;
};

/// Reusable `.gqms` fragment with `${name}` placeholders.
struct Pattern {
  std::string id;
  std::string title;
  GoalType goal_type = GoalType::Success;
  std::vector<PatternParam> params;
  std::string body;

  bool operator==(const Pattern&) const = default;
};

/// Parameter name -> replacement text.
using Binding = std::map<std::string, std::string, std::less<>>;

/// Reads one `.gqmp` document: a `key: value` header, a `---` line, then
/// the body. Header keys are id, title, goal_type, and repeated
/// `param: name | description [| default]`.
Result<Pattern, std::string> parse_pattern(std::string_view text);

/// Placeholder names in order of first appearance.
std::vector<std::string> placeholders(std::string_view body);

struct Catalog {
  std::vector<Pattern> patterns;       // sorted by id
  std::vector<std::string> warnings;   // one per malformed file

  [[nodiscard]] const Pattern* find(std::string_view id) const;
};

/// Loads every `*.gqmp` file in `dir`. Malformed files become warnings;
/// only an unreadable directory is an error.
Result<Catalog, std::string> list_patterns(const std::filesystem::path& dir);

/// The catalog compiled into the library.
Catalog builtin_catalog();

/// Substitutes every placeholder. Fails on unbound parameters (after
/// defaults), on binding keys the pattern does not declare, and when the
/// result does not parse.
Result<std::string, std::string> instantiate(const Pattern& pattern, const Binding& binding);

}  // namespace gqms
