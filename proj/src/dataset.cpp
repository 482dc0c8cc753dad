#include "gqms/dataset.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>

#include <fmt/format.h>
#include <json.hpp>

#include "gqms/model.hpp"

namespace gqms {

void Dataset::set(std::string metric, std::int64_t period, Datum value)
{
  values_.insert_or_assign(Key{std::move(metric), period}, std::move(value));
}

std::optional<Datum> Dataset::lookup(std::string_view metric, std::int64_t period) const
{
  const auto it = values_.find(std::pair<std::string_view, std::int64_t>(metric, period));
  if (it == values_.end()) return std::nullopt;
  return it->second;
}

std::optional<std::int64_t> Dataset::max_period() const
{
  std::optional<std::int64_t> best;
  for (const auto& [key, value] : values_) {
    if (!best || key.second > *best) best = key.second;
  }
  return best;
}

std::vector<Observation> Dataset::observations() const
{
  std::vector<Observation> out;
  out.reserve(values_.size());
  for (const auto& [key, value] : values_) out.push_back(Observation{key.first, key.second, value});
  return out;
}

std::string IngestError::to_string() const
{
  if (line <= 0) return message;
  return fmt::format("line {}: {}", line, message);
}

std::string datum_to_string(const Datum& d)
{
  if (const auto* b = std::get_if<bool>(&d)) return *b ? "true" : "false";
  return number_to_string(std::get<double>(d));
}

std::string MergeConflict::to_string() const
{
  return fmt::format("conflicting values for ({}, {}): {} vs {}", metric, period, datum_to_string(left),
                     datum_to_string(right));
}

namespace {

struct RawObservation {
  int line = 0;
  Observation obs;
};

std::string_view trim(std::string_view s)
{
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> split_lines(std::string_view text)
{
  std::vector<std::string_view> lines;
  std::size_t start = 0;
  while (start <= text.size()) {
    const std::size_t nl = text.find('\n', start);
    std::string_view line = text.substr(start, nl == std::string_view::npos ? text.size() - start : nl - start);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    lines.push_back(line);
    if (nl == std::string_view::npos) break;
    start = nl + 1;
  }
  return lines;
}

std::string lower(std::string_view s)
{
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(), [](unsigned char c) { return std::tolower(c); });
  return out;
}

// Shared rule checks: declared metric, matching kind, one value per key.
Result<Dataset, std::vector<IngestError>> build(const std::vector<RawObservation>& raw, const Model& model,
                                                std::vector<IngestError> errors)
{
  std::map<Dataset::Key, int> first_line;
  Dataset data;
  for (const auto& r : raw) {
    const MetricDecl* decl = model.find_metric(r.obs.metric);
    if (decl == nullptr) {
      errors.push_back({r.line, fmt::format("unknown metric '{}'", r.obs.metric)});
      continue;
    }
    const bool is_bool = std::holds_alternative<bool>(r.obs.value);
    if (is_bool != (decl->value_kind == ValueKind::Boolean)) {
      errors.push_back({r.line, fmt::format("kind mismatch: metric '{}' is {}, found {} value {}", r.obs.metric,
                                            value_kind_keyword(decl->value_kind), is_bool ? "boolean" : "number",
                                            datum_to_string(r.obs.value))});
      continue;
    }
    const auto [it, inserted] = first_line.emplace(Dataset::Key{r.obs.metric, r.obs.period}, r.line);
    if (!inserted) {
      errors.push_back({r.line, fmt::format("duplicate observation for ({}, {}), first given on line {}",
                                            r.obs.metric, r.obs.period, it->second)});
      continue;
    }
    data.set(r.obs.metric, r.obs.period, r.obs.value);
  }
  if (!errors.empty()) {
    std::stable_sort(errors.begin(), errors.end(), [](const auto& a, const auto& b) { return a.line < b.line; });
    return errors;
  }
  return data;
}

std::optional<std::int64_t> parse_period(std::string_view s)
{
  std::int64_t v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size() || v < 0) return std::nullopt;
  return v;
}

std::optional<Datum> parse_value(std::string_view s)
{
  const std::string l = lower(s);
  if (l == "true") return Datum{true};
  if (l == "false") return Datum{false};
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc() || ptr != s.data() + s.size() || !std::isfinite(v)) return std::nullopt;
  return Datum{v};
}

}  // namespace

Result<Dataset, std::vector<IngestError>> ingest_csv(std::string_view text, const Model& model)
{
  const auto lines = split_lines(text);
  std::vector<IngestError> errors;
  std::vector<RawObservation> raw;

  std::size_t i = 0;
  while (i < lines.size() && trim(lines[i]).empty()) ++i;
  if (i == lines.size()) return std::vector<IngestError>{{1, "missing header row 'metric,period,value'"}};
  {
    const std::string header = lower(trim(lines[i]));
    std::string compact;
    for (const char c : header) {
      if (!std::isspace(static_cast<unsigned char>(c))) compact += c;
    }
    if (compact != "metric,period,value") {
      return std::vector<IngestError>{
        {static_cast<int>(i + 1), fmt::format("expected header 'metric,period,value', found '{}'", trim(lines[i]))}};
    }
  }

  for (++i; i < lines.size(); ++i) {
    const int line_no = static_cast<int>(i + 1);
    const std::string_view line = lines[i];
    if (trim(line).empty()) continue;
    std::vector<std::string_view> fields;
    std::size_t start = 0;
    for (;;) {
      const std::size_t comma = line.find(',', start);
      fields.push_back(trim(line.substr(start, comma == std::string_view::npos ? line.npos : comma - start)));
      if (comma == std::string_view::npos) break;
      start = comma + 1;
    }
    if (fields.size() != 3) {
      errors.push_back({line_no, fmt::format("expected 3 fields, found {}", fields.size())});
      continue;
    }
    if (fields[0].empty()) {
      errors.push_back({line_no, "empty metric identifier"});
      continue;
    }
    const auto period = parse_period(fields[1]);
    if (!period) {
      errors.push_back({line_no, fmt::format("period must be a non-negative integer, found '{}'", fields[1])});
      continue;
    }
    const auto value = parse_value(fields[2]);
    if (!value) {
      errors.push_back({line_no, fmt::format("value must be a finite number or true/false, found '{}'", fields[2])});
      continue;
    }
    raw.push_back(RawObservation{line_no, Observation{std::string(fields[0]), *period, *value}});
  }
  return build(raw, model, std::move(errors));
}

Result<Dataset, std::vector<IngestError>> ingest_jsonl(std::string_view text, const Model& model)
{
  using nlohmann::json;
  const auto lines = split_lines(text);
  std::vector<IngestError> errors;
  std::vector<RawObservation> raw;

  for (std::size_t i = 0; i < lines.size(); ++i) {
    const int line_no = static_cast<int>(i + 1);
    if (trim(lines[i]).empty()) continue;
    const json obj = json::parse(lines[i], nullptr, false);
    if (obj.is_discarded() || !obj.is_object()) {
      errors.push_back({line_no, "expected one JSON object per line"});
      continue;
    }
    bool ok = true;
    for (const char* key : {"metric", "period", "value"}) {
      if (!obj.contains(key)) {
        errors.push_back({line_no, fmt::format("missing key '{}'", key)});
        ok = false;
      }
    }
    for (const auto& item : obj.items()) {
      if (item.key() != "metric" && item.key() != "period" && item.key() != "value") {
        errors.push_back({line_no, fmt::format("unexpected key '{}'", item.key())});
        ok = false;
      }
    }
    if (!ok) continue;

    const json& metric = obj["metric"];
    const json& period = obj["period"];
    const json& value = obj["value"];
    if (!metric.is_string() || metric.get<std::string>().empty()) {
      errors.push_back({line_no, "'metric' must be a non-empty string"});
      continue;
    }
    std::optional<std::int64_t> p;
    if (period.is_number_unsigned()) {
      const auto u = period.get<std::uint64_t>();
      if (u <= static_cast<std::uint64_t>(INT64_MAX)) p = static_cast<std::int64_t>(u);
    } else if (period.is_number_integer() && period.get<std::int64_t>() >= 0) {
      p = period.get<std::int64_t>();
    }
    if (!p) {
      errors.push_back({line_no, "'period' must be a non-negative integer"});
      continue;
    }
    Datum d;
    if (value.is_boolean()) {
      d = value.get<bool>();
    } else if (value.is_number() && std::isfinite(value.get<double>())) {
      d = value.get<double>();
    } else {
      errors.push_back({line_no, "'value' must be a finite number or a boolean"});
      continue;
    }
    raw.push_back(RawObservation{line_no, Observation{metric.get<std::string>(), *p, d}});
  }
  return build(raw, model, std::move(errors));
}

Result<Dataset, std::vector<MergeConflict>> merge(const Dataset& a, const Dataset& b)
{
  Dataset out = a;
  std::vector<MergeConflict> conflicts;
  for (const auto& obs : b.observations()) {
    const auto existing = a.lookup(obs.metric, obs.period);
    if (!existing) {
      out.set(obs.metric, obs.period, obs.value);
    } else if (!(*existing == obs.value)) {
      conflicts.push_back(MergeConflict{obs.metric, obs.period, *existing, obs.value});
    }
  }
  if (!conflicts.empty()) return conflicts;
  return out;
}

}  // namespace gqms
