#pragma once

#include <cstddef>
#include <filesystem>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "dictlearn/imaging.hpp"

namespace dictlearn::io {

/// Writes to a sibling temporary file and renames it over `path`.
void write_file_atomic(const std::filesystem::path& path, std::span<const std::byte> bytes);
void write_file_atomic(const std::filesystem::path& path, std::string_view text);

std::vector<std::byte> read_file(const std::filesystem::path& path);

/// Sidecar metadata: one `key=value` per line, keys sorted, no spaces around
/// '='. Lines starting with '#' and blank lines are ignored on reading.
using Metadata = std::map<std::string, std::string>;

std::string format_metadata(const Metadata& metadata);
Metadata parse_metadata(std::string_view text);  // throws ParseError
void write_metadata(const std::filesystem::path& path, const Metadata& metadata);
Metadata read_metadata(const std::filesystem::path& path);

/// Label CSV for color restoration: header `row,col,class`, then one line
/// per grid anchor. Throws ParseError with the offending line number.
ClassLabelMap parse_labels_csv(std::string_view text);
ClassLabelMap read_labels_csv(const std::filesystem::path& path);
std::string format_labels_csv(const ClassLabelMap& labels);

/// Shortest decimal text that round-trips to the same double.
std::string format_double(double value);

}  // namespace dictlearn::io
