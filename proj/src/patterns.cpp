#include "gqms/patterns.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

#include <fmt/format.h>

#include "gqms/lexer.hpp"
#include "gqms/parser.hpp"

namespace gqms {
namespace {

std::string_view trim(std::string_view s)
{
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

bool valid_pattern_id(std::string_view id)
{
  return !id.empty() && std::all_of(id.begin(), id.end(), [](char c) {
    return (c >= 'a' && c <= 'z') || (c >= '0' && c <= '9') || c == '-' || c == '_';
  });
}

std::vector<std::string> split_bar(std::string_view s)
{
  std::vector<std::string> out;
  std::size_t start = 0;
  for (;;) {
    const auto bar = s.find('|', start);
    out.emplace_back(trim(s.substr(start, bar == std::string_view::npos ? s.npos : bar - start)));
    if (bar == std::string_view::npos) return out;
    start = bar + 1;
  }
}

// Calls `on_placeholder(name)` for each `${name}`, `on_text` for the rest.
// Returns an error message for an unterminated placeholder.
template <typename OnText, typename OnPlaceholder>
std::optional<std::string> scan(std::string_view body, OnText on_text, OnPlaceholder on_placeholder)
{
  std::size_t pos = 0;
  while (pos < body.size()) {
    const auto open = body.find("${", pos);
    if (open == std::string_view::npos) {
      on_text(body.substr(pos));
      return std::nullopt;
    }
    on_text(body.substr(pos, open - pos));
    const auto close = body.find('}', open + 2);
    if (close == std::string_view::npos) return std::string("unterminated placeholder '${'");
    on_placeholder(body.substr(open + 2, close - open - 2));
    pos = close + 1;
  }
  return std::nullopt;
}

}  // namespace

std::vector<std::string> placeholders(std::string_view body)
{
  std::vector<std::string> names;
  scan(
    body, [](std::string_view) {},
    [&](std::string_view name) {
      if (std::find(names.begin(), names.end(), name) == names.end()) names.emplace_back(name);
    });
  return names;
}

Result<Pattern, std::string> parse_pattern(std::string_view text)
{
  Pattern p;
  bool have_type = false;
  std::size_t pos = 0;
  int line_no = 0;
  bool found_separator = false;
  while (pos < text.size()) {
    const auto nl = text.find('\n', pos);
    const std::string_view line = trim(text.substr(pos, nl == std::string_view::npos ? text.npos : nl - pos));
    pos = nl == std::string_view::npos ? text.size() : nl + 1;
    ++line_no;
    if (line == "---") {
      found_separator = true;
      break;
    }
    if (line.empty() || line.front() == '#') continue;
    const auto colon = line.find(':');
    if (colon == std::string_view::npos) return fmt::format("line {}: expected 'key: value'", line_no);
    const std::string_view key = trim(line.substr(0, colon));
    const std::string_view value = trim(line.substr(colon + 1));
    if (key == "id") {
      if (!valid_pattern_id(value)) return fmt::format("line {}: invalid pattern id '{}'", line_no, value);
      p.id = value;
    } else if (key == "title") {
      p.title = value;
    } else if (key == "goal_type") {
      const auto type = goal_type_from_keyword(value);
      if (!type) return fmt::format("line {}: unknown goal_type '{}'", line_no, value);
      p.goal_type = *type;
      have_type = true;
    } else if (key == "param") {
      const auto parts = split_bar(value);
      if (parts.size() < 2 || parts.size() > 3) {
        return fmt::format("line {}: expected 'param: name | description [| default]'", line_no);
      }
      if (!is_identifier(parts[0])) return fmt::format("line {}: invalid parameter name '{}'", line_no, parts[0]);
      const bool duplicate = std::any_of(p.params.begin(), p.params.end(),
                                         [&](const PatternParam& x) { return x.name == parts[0]; });
      if (duplicate) return fmt::format("line {}: parameter '{}' declared twice", line_no, parts[0]);
      PatternParam param{parts[0], parts[1], std::nullopt};
      if (parts.size() == 3) param.default_value = parts[2];
      p.params.push_back(std::move(param));
    } else {
      return fmt::format("line {}: unknown header key '{}'", line_no, key);
    }
  }
  if (!found_separator) return std::string("missing '---' line between header and body");
  if (p.id.empty()) return std::string("header lacks 'id'");
  if (p.title.empty()) return std::string("header lacks 'title'");
  if (!have_type) return std::string("header lacks 'goal_type'");
  p.body = std::string(text.substr(pos));

  std::vector<std::string> undeclared;
  std::vector<std::string> seen;
  auto err = scan(
    p.body, [](std::string_view) {},
    [&](std::string_view name) {
      seen.emplace_back(name);
      const bool known =
        std::any_of(p.params.begin(), p.params.end(), [&](const PatternParam& x) { return x.name == name; });
      if (!known && std::find(undeclared.begin(), undeclared.end(), name) == undeclared.end()) {
        undeclared.emplace_back(name);
      }
    });
  if (err) return *err;
  if (!undeclared.empty()) {
    return fmt::format("body uses undeclared placeholder(s): {}", fmt::join(undeclared, ", "));
  }
  return p;
}

const Pattern* Catalog::find(std::string_view id) const
{
  const auto it = std::find_if(patterns.begin(), patterns.end(), [&](const Pattern& p) { return p.id == id; });
  return it == patterns.end() ? nullptr : &*it;
}

namespace detail {

struct EmbeddedPattern {
  const char* file_name;
  const char* text;
};

// Defined in the generated builtin_patterns.cpp.
extern const EmbeddedPattern k_builtin_patterns[];
extern const std::size_t k_builtin_pattern_count;

}  // namespace detail

namespace {

void add_to_catalog(Catalog& catalog, const std::string& file_name, std::string_view text)
{
  auto parsed = parse_pattern(text);
  if (!parsed) {
    catalog.warnings.push_back(fmt::format("{}: {}", file_name, parsed.error()));
    return;
  }
  if (catalog.find(parsed->id) != nullptr) {
    catalog.warnings.push_back(fmt::format("{}: duplicate pattern id '{}' ignored", file_name, parsed->id));
    return;
  }
  catalog.patterns.push_back(std::move(parsed).value());
}

void sort_catalog(Catalog& catalog)
{
  std::sort(catalog.patterns.begin(), catalog.patterns.end(),
            [](const Pattern& a, const Pattern& b) { return a.id < b.id; });
}

}  // namespace

Result<Catalog, std::string> list_patterns(const std::filesystem::path& dir)
{
  std::error_code ec;
  if (!std::filesystem::is_directory(dir, ec)) {
    return fmt::format("cannot read pattern directory '{}'", dir.string());
  }
  std::vector<std::filesystem::path> files;
  for (const auto& entry : std::filesystem::directory_iterator(dir, ec)) {
    if (entry.is_regular_file() && entry.path().extension() == ".gqmp") files.push_back(entry.path());
  }
  if (ec) return fmt::format("cannot read pattern directory '{}': {}", dir.string(), ec.message());
  std::sort(files.begin(), files.end());

  Catalog catalog;
  for (const auto& file : files) {
    std::ifstream in(file, std::ios::binary);
    if (!in) {
      catalog.warnings.push_back(fmt::format("{}: cannot open file", file.filename().string()));
      continue;
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    add_to_catalog(catalog, file.filename().string(), buf.str());
  }
  sort_catalog(catalog);
  return catalog;
}

Catalog builtin_catalog()
{
  Catalog catalog;
  for (std::size_t i = 0; i < detail::k_builtin_pattern_count; ++i) {
    add_to_catalog(catalog, detail::k_builtin_patterns[i].file_name, detail::k_builtin_patterns[i].text);
  }
  sort_catalog(catalog);
  return catalog;
}

Result<std::string, std::string> instantiate(const Pattern& pattern, const Binding& binding)
{
  std::vector<std::string> unknown;
  for (const auto& [key, value] : binding) {
    const bool declared = std::any_of(pattern.params.begin(), pattern.params.end(),
                                      [&](const PatternParam& p) { return p.name == key; });
    if (!declared) unknown.push_back(key);
  }
  if (!unknown.empty()) {
    return fail(fmt::format("unknown parameter: {} (pattern {} takes no such parameter)", fmt::join(unknown, ", "),
                            pattern.id));
  }

  std::map<std::string, std::string, std::less<>> values;
  std::vector<std::string> unbound;
  for (const auto& p : pattern.params) {
    if (const auto it = binding.find(p.name); it != binding.end()) {
      values.emplace(p.name, it->second);
    } else if (p.default_value) {
      values.emplace(p.name, *p.default_value);
    } else {
      unbound.push_back(p.name);
    }
  }
  if (!unbound.empty()) return fail(fmt::format("unbound: {}", fmt::join(unbound, ", ")));

  std::string out;
  std::vector<std::string> missing;
  auto err = scan(
    pattern.body, [&](std::string_view text) { out += text; },
    [&](std::string_view name) {
      if (const auto it = values.find(name); it != values.end()) {
        out += it->second;
      } else {
        missing.emplace_back(name);
      }
    });
  if (err) return fail(*err);
  if (!missing.empty()) return fail(fmt::format("unbound: {}", fmt::join(missing, ", ")));

  auto parsed = parse_model(out, pattern.id + ".gqms");
  if (!parsed) {
    return fail(fmt::format("instantiated fragment does not parse: {}", parsed.error().front().message()));
  }
  return out;
}

}  // namespace gqms
