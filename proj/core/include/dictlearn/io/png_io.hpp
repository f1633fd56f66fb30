#pragma once

#include <cstddef>
#include <filesystem>
#include <span>
#include <vector>

#include "dictlearn/imaging.hpp"

namespace dictlearn::io {

/// 8-bit PNG decoding to [0,1] intensities. Palette, gray, alpha and 16-bit
/// inputs are converted; alpha is dropped. Throws FormatError.
ColorImage decode_png_rgb(std::span<const std::byte> bytes);
GrayImage decode_png_gray(std::span<const std::byte> bytes);

/// Encodes with each intensity rounded to the nearest of 0..255.
std::vector<std::byte> encode_png(const ColorImage& image);
std::vector<std::byte> encode_png(const GrayImage& image);

ColorImage read_png_rgb(const std::filesystem::path& path);
GrayImage read_png_gray(const std::filesystem::path& path);
void write_png(const std::filesystem::path& path, const ColorImage& image);
void write_png(const std::filesystem::path& path, const GrayImage& image);

}  // namespace dictlearn::io
