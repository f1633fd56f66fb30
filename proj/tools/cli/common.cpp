#include "cli/common.hpp"

#include <algorithm>
#include <charconv>

#include "dictlearn/errors.hpp"
#include "dictlearn/io/files.hpp"
#include "dictlearn/io/png_io.hpp"

namespace dictlearn::cli {

void prepare_output(const fs::path& path) {
  const fs::path parent = path.parent_path();
  if (!parent.empty()) fs::create_directories(parent);
}

void write_text_output(const fs::path& path, std::string_view text) {
  prepare_output(path);
  io::write_file_atomic(path, text);
}

void write_png_output(const fs::path& path, const ColorImage& image) {
  prepare_output(path);
  io::write_png(path, image);
}

void write_png_output(const fs::path& path, const GrayImage& image) {
  prepare_output(path);
  io::write_png(path, image);
}

FrameStack load_frame_directory(const fs::path& dir, int min_frames) {
  if (!fs::is_directory(dir)) throw Error("frame directory not found: " + dir.string());
  std::vector<fs::path> files;
  for (const fs::directory_entry& entry : fs::directory_iterator(dir)) {
    if (entry.is_regular_file() && entry.path().extension() == ".png")
      files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end());
  if (static_cast<int>(files.size()) < min_frames) {
    throw InsufficientDataError(dir.string() + " holds " + std::to_string(files.size()) +
                                " frame(s), at least " + std::to_string(min_frames) +
                                " required");
  }

  FrameStack stack;
  for (const fs::path& file : files) {
    const GrayImage gray = io::read_png_gray(file);
    if (stack.frames.empty()) {
      stack.height = gray.height();
      stack.width = gray.width();
    } else if (gray.height() != stack.height || gray.width() != stack.width) {
      throw ShapeError(file.filename().string() + " is " + std::to_string(gray.height()) + "x" +
                       std::to_string(gray.width()) + ", expected " +
                       std::to_string(stack.height) + "x" + std::to_string(stack.width));
    }
    Matrix frame(gray.height(), gray.width());
    for (int row = 0; row < gray.height(); ++row)
      for (int col = 0; col < gray.width(); ++col) frame(row, col) = gray.at(row, col);
    stack.frames.push_back(std::move(frame));
  }
  stack.validate();
  return stack;
}

GrayImage display_image(const Matrix& m) {
  GrayImage out(static_cast<int>(m.rows()), static_cast<int>(m.cols()));
  if (m.size() == 0) return out;
  const double lo = m.minCoeff();
  const double span = m.maxCoeff() - lo;
  for (int row = 0; row < out.height(); ++row)
    for (int col = 0; col < out.width(); ++col)
      out.at(row, col) = span > 0.0 ? (m(row, col) - lo) / span : 0.0;
  return out;
}

std::vector<int> parse_int_list(std::string_view text) {
  std::vector<int> values;
  std::size_t start = 0;
  while (start <= text.size()) {
    const std::size_t end = std::min(text.find(',', start), text.size());
    const std::string_view item = text.substr(start, end - start);
    int value = 0;
    const auto [ptr, ec] = std::from_chars(item.data(), item.data() + item.size(), value);
    if (item.empty() || ec != std::errc{} || ptr != item.data() + item.size())
      throw InvalidArgumentError("expected a comma-separated integer list, got '" +
                                 std::string(text) + "'");
    values.push_back(value);
    start = end + 1;
  }
  return values;
}

void require(bool condition, const std::string& message) {
  if (!condition) throw InvalidArgumentError(message);
}

}  // namespace dictlearn::cli
