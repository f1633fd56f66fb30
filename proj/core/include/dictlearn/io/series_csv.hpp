#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "dictlearn/matrix.hpp"

namespace dictlearn::io {

/// Time-series table: header `time,<name_1>,...,<name_m>`, one row per tick.
/// A cell is missing when empty or equal to the sentinel.
struct SeriesTable {
  std::vector<std::string> times;  // first column, kept verbatim
  std::vector<std::string> names;  // series column names
  Matrix values;                   // m x T (missing cells hold the sentinel)
  Mask observed;                   // m x T
};

inline constexpr double kDefaultSentinel = -100.0;

/// Throws ParseError carrying the 1-based line number (an empty input
/// reports line 1).
SeriesTable parse_series_csv(std::string_view text, double sentinel = kDefaultSentinel);
SeriesTable read_series_csv(const std::filesystem::path& path,
                            double sentinel = kDefaultSentinel);

/// Same layout; cells where `present` is false are written empty.
std::string format_series_csv(const std::vector<std::string>& times,
                              const std::vector<std::string>& names, const Matrix& values,
                              const Mask& present);

}  // namespace dictlearn::io
