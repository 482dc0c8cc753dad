#pragma once

#include <string>
#include <string_view>

namespace gqms {

/// Region of a source file. Lines and columns are 1-based and count bytes;
/// the end position is exclusive (one past the last character).
struct SourceSpan {
  std::string file;
  int start_line = 0;
  int start_col = 0;
  int end_line = 0;
  int end_col = 0;

  [[nodiscard]] bool valid() const noexcept { return start_line > 0; }

  bool operator==(const SourceSpan&) const = default;
};

/// Smallest span covering both `a` and `b`.
SourceSpan join(const SourceSpan& a, const SourceSpan& b);

/// `file:line:col`, or just the file name for an invalid span.
std::string location_string(const SourceSpan& span);

/// The bytes of `text` covered by `span`.
std::string_view slice(std::string_view text, const SourceSpan& span);

}  // namespace gqms
