#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

#include "dictlearn/online_nmf.hpp"

namespace dictlearn::io {

/// Binary snapshot of an OnlineDictionaryState.
///
///   offset  size     field
///   0       5        magic "ONMF1"
///   5       4        format version (u32, currently 1)
///   9       8        d (u64)
///   17      8        r (u64)
///   25      8        t (u64)
///   33      8        lambda (f64)
///   41      8 d r    W, row-major f64
///   ...     8 r r    A, row-major f64
///   ...     8 r d    B, row-major f64
///
/// All integers and floats are little-endian. The payload length must equal
/// the header-implied length exactly.
inline constexpr std::uint32_t kDictionaryFormatVersion = 1;

std::vector<std::byte> encode_dictionary(const OnlineDictionaryState& state);

/// Throws FormatError on bad magic, unknown version or length mismatch.
OnlineDictionaryState decode_dictionary(std::span<const std::byte> bytes);

void write_dictionary(const std::filesystem::path& path, const OnlineDictionaryState& state);
OnlineDictionaryState read_dictionary(const std::filesystem::path& path);

}  // namespace dictlearn::io
