#pragma once

#include <algorithm>
#include <charconv>
#include <variant>
#include <fstream>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "gqms/dataset.hpp"
#include "gqms/model.hpp"
#include "gqms/parser.hpp"

namespace fixtures {

inline std::string source_path(const std::string& relative) { return std::string(GQMS_SOURCE_DIR) + "/" + relative; }

inline std::string read_text(const std::string& path)
{
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

inline std::string abc_text() { return read_text(source_path("models/abc.gqms")); }
inline std::string abc_csv() { return read_text(source_path("models/abc.csv")); }

inline gqms::Model parse_or_throw(const std::string& text, const std::string& name = "abc.gqms")
{
  auto m = gqms::parse_model(text, name);
  if (!m) throw std::runtime_error("parse failed: " + m.error().front().message());
  return std::move(m).value();
}

inline gqms::Model abc_model() { return parse_or_throw(abc_text()); }

/// Replaces the single occurrence of `from`; throws if it is absent or repeated.
inline std::string replace_once(std::string text, const std::string& from, const std::string& to)
{
  const auto pos = text.find(from);
  if (pos == std::string::npos || text.find(from, pos + 1) != std::string::npos) {
    throw std::runtime_error("fixture edit anchor not unique: " + from);
  }
  return text.replace(pos, from.size(), to);
}

/// CSV text for a list of observations, written without the library.
struct Row {
  std::string metric;
  std::int64_t period;
  std::variant<double, bool> value;
};

inline std::string number_text(double v)
{
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

inline std::string value_text(const std::variant<double, bool>& v)
{
  if (std::holds_alternative<bool>(v)) return std::get<bool>(v) ? "true" : "false";
  return number_text(std::get<double>(v));
}

inline std::string to_csv(const std::vector<Row>& rows)
{
  std::string out = "metric,period,value\n";
  for (const auto& r : rows) out += r.metric + "," + std::to_string(r.period) + "," + value_text(r.value) + "\n";
  return out;
}

inline std::string to_jsonl(const std::vector<Row>& rows)
{
  std::string out;
  for (const auto& r : rows) {
    out += "{\"metric\": \"" + r.metric + "\", \"period\": " + std::to_string(r.period) +
           ", \"value\": " + value_text(r.value) + "}\n";
  }
  return out;
}

/// Model declaring number metrics n0..n3 and boolean metrics f0..f1.
inline gqms::Model data_model()
{
  gqms::Model m;
  for (int i = 0; i < 4; ++i) m.metrics.push_back({"n" + std::to_string(i), gqms::ValueKind::Number, {}, {}, {}});
  for (int i = 0; i < 2; ++i) m.metrics.push_back({"f" + std::to_string(i), gqms::ValueKind::Boolean, {}, {}, {}});
  return m;
}

/// Rows with unique (metric, period) keys drawn from `periods` periods.
inline std::vector<Row> random_rows(std::mt19937_64& rng, int periods, double density)
{
  std::uniform_real_distribution<double> u(0, 1);
  std::uniform_int_distribution<int> small(-2000, 2000);
  std::vector<Row> rows;
  for (std::int64_t p = 0; p < periods; ++p) {
    for (int i = 0; i < 4; ++i) {
      if (u(rng) < density) rows.push_back({"n" + std::to_string(i), p, small(rng) / 8.0});
    }
    for (int i = 0; i < 2; ++i) {
      if (u(rng) < density) rows.push_back({"f" + std::to_string(i), p, u(rng) < 0.5});
    }
  }
  std::shuffle(rows.begin(), rows.end(), rng);
  return rows;
}

}  // namespace fixtures
