#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "dictlearn/imaging.hpp"
#include "dictlearn/matrix.hpp"
#include "dictlearn/video.hpp"

namespace dictlearn::cli {

namespace fs = std::filesystem;

/// Creates the parent directory of `path` if needed.
void prepare_output(const fs::path& path);

void write_text_output(const fs::path& path, std::string_view text);
void write_png_output(const fs::path& path, const ColorImage& image);
void write_png_output(const fs::path& path, const GrayImage& image);

/// All *.png files of `dir` in lexicographic order, decoded as grayscale.
/// Throws InsufficientDataError when there are fewer than `min_frames`
/// frames and ShapeError when frame sizes disagree.
FrameStack load_frame_directory(const fs::path& dir, int min_frames);

/// Per-matrix min-max normalization for display (a constant matrix maps to 0).
GrayImage display_image(const Matrix& m);

/// Parses "1,5,7" into {1, 5, 7}. Throws InvalidArgumentError.
std::vector<int> parse_int_list(std::string_view text);

/// Throws InvalidArgumentError with `message` unless `condition` holds.
void require(bool condition, const std::string& message);

}  // namespace dictlearn::cli
