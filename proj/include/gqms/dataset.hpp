#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "gqms/expr.hpp"
#include "gqms/result.hpp"

namespace gqms {

struct Model;

struct Observation {
  std::string metric;
  std::int64_t period = 0;
  Datum value;

  bool operator==(const Observation&) const = default;
};

/// Recorded measurements keyed by (metric, period). Absent pairs read as
/// missing.
class Dataset {
 public:
  using Key = std::pair<std::string, std::int64_t>;

  Dataset() = default;

  /// Inserts or overwrites one observation.
  void set(std::string metric, std::int64_t period, Datum value);

  [[nodiscard]] std::optional<Datum> lookup(std::string_view metric, std::int64_t period) const;
  [[nodiscard]] bool empty() const noexcept { return values_.empty(); }
  [[nodiscard]] std::size_t size() const noexcept { return values_.size(); }
  /// Largest period present, or nullopt for an empty dataset.
  [[nodiscard]] std::optional<std::int64_t> max_period() const;

  /// Observations sorted by metric, then period.
  [[nodiscard]] std::vector<Observation> observations() const;

  bool operator==(const Dataset&) const = default;

 private:
  struct KeyLess {
    using is_transparent = void;
    template <typename A, typename B>
    bool operator()(const A& a, const B& b) const
    {
      return std::pair<std::string_view, std::int64_t>(a.first, a.second) <
             std::pair<std::string_view, std::int64_t>(b.first, b.second);
    }
  };

  std::map<Key, Datum, KeyLess> values_;
};

struct IngestError {
  int line = 0;  // 1-based; 0 when not tied to a line
  std::string message;

  [[nodiscard]] std::string to_string() const;
};

/// CSV with header `metric,period,value`; LF or CRLF line ends.
Result<Dataset, std::vector<IngestError>> ingest_csv(std::string_view text, const Model& model);

/// One JSON object per line with exactly the keys metric, period, value.
Result<Dataset, std::vector<IngestError>> ingest_jsonl(std::string_view text, const Model& model);

struct MergeConflict {
  std::string metric;
  std::int64_t period = 0;
  Datum left;
  Datum right;

  [[nodiscard]] std::string to_string() const;
};

/// Union of two datasets. Equal duplicates are fine; differing values for
/// the same (metric, period) are all reported.
Result<Dataset, std::vector<MergeConflict>> merge(const Dataset& a, const Dataset& b);

std::string datum_to_string(const Datum& d);

}  // namespace gqms
