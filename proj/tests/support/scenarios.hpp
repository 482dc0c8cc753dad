#pragma once

// Golden-scenario datasets built on top of models/abc.csv.

#include <map>
#include <string>

#include "fixtures.hpp"
#include "gqms/evaluation.hpp"

namespace fixtures {

/// (metric, period) -> CSV value text; an empty string removes the cell.
using Overrides = std::map<std::pair<std::string, std::int64_t>, std::string>;

inline std::string golden_csv_with(const Overrides& overrides)
{
  std::map<std::pair<std::string, std::int64_t>, std::string> cells;
  const std::string text = abc_csv();
  std::size_t pos = text.find('\n') + 1;
  while (pos < text.size()) {
    const auto nl = text.find('\n', pos);
    const std::string line = text.substr(pos, nl - pos);
    pos = nl == std::string::npos ? text.size() : nl + 1;
    if (line.empty()) continue;
    const auto c1 = line.find(',');
    const auto c2 = line.find(',', c1 + 1);
    cells[{line.substr(0, c1), std::stoll(line.substr(c1 + 1, c2 - c1 - 1))}] = line.substr(c2 + 1);
  }
  for (const auto& [key, value] : overrides) {
    if (value.empty()) {
      cells.erase(key);
    } else {
      cells[key] = value;
    }
  }
  std::string out = "metric,period,value\n";
  for (const auto& [key, value] : cells) out += key.first + "," + std::to_string(key.second) + "," + value + "\n";
  return out;
}

inline gqms::EvaluationReport evaluate_golden(const Overrides& overrides, std::int64_t period = 2)
{
  const gqms::Model model = abc_model();
  auto data = gqms::ingest_csv(golden_csv_with(overrides), model);
  if (!data) throw std::runtime_error("scenario data rejected: " + data.error().front().to_string());
  auto report = gqms::evaluate(model, *data, period);
  if (!report) throw std::runtime_error("evaluation failed: " + report.error().message);
  return std::move(report).value();
}

inline bool has_finding(const gqms::EvaluationReport& r, std::string_view goal, std::string_view phrase)
{
  for (const auto& f : r.findings) {
    if (f.goal == goal && f.message.find(phrase) != std::string::npos) return true;
  }
  return false;
}

}  // namespace fixtures
