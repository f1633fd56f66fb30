#include "dictlearn/io/png_io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <string>

#include <png.h>

#include "dictlearn/errors.hpp"
#include "dictlearn/io/files.hpp"

namespace dictlearn::io {
namespace {

struct Decoded {
  int height = 0;
  int width = 0;
  bool color = false;
  std::vector<std::uint8_t> pixels;  // RGB or gray, row-major
};

Decoded decode(std::span<const std::byte> bytes) {
  png_image image;
  std::memset(&image, 0, sizeof image);
  image.version = PNG_IMAGE_VERSION;
  if (!png_image_begin_read_from_memory(&image, bytes.data(), bytes.size()))
    throw FormatError(std::string("not a readable PNG: ") + image.message);

  Decoded out;
  out.color = (image.format & PNG_FORMAT_FLAG_COLOR) != 0;
  image.format = out.color ? PNG_FORMAT_RGB : PNG_FORMAT_GRAY;
  out.height = static_cast<int>(image.height);
  out.width = static_cast<int>(image.width);
  out.pixels.resize(PNG_IMAGE_SIZE(image));
  if (!png_image_finish_read(&image, nullptr, out.pixels.data(), 0, nullptr)) {
    const std::string message = image.message;
    png_image_free(&image);
    throw FormatError("PNG decode failed: " + message);
  }
  return out;
}

std::uint8_t quantize(double v) {
  return static_cast<std::uint8_t>(std::lround(std::clamp(v, 0.0, 1.0) * 255.0));
}

std::vector<std::byte> encode(const std::uint8_t* pixels, int height, int width,
                              png_uint_32 format) {
  png_image image;
  std::memset(&image, 0, sizeof image);
  image.version = PNG_IMAGE_VERSION;
  image.width = static_cast<png_uint_32>(width);
  image.height = static_cast<png_uint_32>(height);
  image.format = format;

  png_alloc_size_t size = 0;
  if (!png_image_write_get_memory_size(image, size, 0, pixels, 0, nullptr))
    throw FormatError(std::string("PNG encode failed: ") + image.message);
  std::vector<std::byte> out(size);
  if (!png_image_write_to_memory(&image, out.data(), &size, 0, pixels, 0, nullptr))
    throw FormatError(std::string("PNG encode failed: ") + image.message);
  out.resize(size);
  return out;
}

}  // namespace

ColorImage decode_png_rgb(std::span<const std::byte> bytes) {
  const Decoded d = decode(bytes);
  ColorImage image(d.height, d.width);
  const int channels = d.color ? 3 : 1;
  for (int row = 0; row < d.height; ++row) {
    for (int col = 0; col < d.width; ++col) {
      const std::size_t base = (static_cast<std::size_t>(row) * d.width + col) * channels;
      for (int c = 0; c < 3; ++c)
        image.at(row, col, c) = d.pixels[base + (d.color ? c : 0)] / 255.0;
    }
  }
  return image;
}

GrayImage decode_png_gray(std::span<const std::byte> bytes) {
  const Decoded d = decode(bytes);
  if (d.color) return to_grayscale(decode_png_rgb(bytes));
  GrayImage image(d.height, d.width);
  std::span<double> dst = image.data();
  for (std::size_t i = 0; i < dst.size(); ++i) dst[i] = d.pixels[i] / 255.0;
  return image;
}

std::vector<std::byte> encode_png(const ColorImage& image) {
  std::vector<std::uint8_t> pixels(image.data().size());
  std::transform(image.data().begin(), image.data().end(), pixels.begin(), quantize);
  return encode(pixels.data(), image.height(), image.width(), PNG_FORMAT_RGB);
}

std::vector<std::byte> encode_png(const GrayImage& image) {
  std::vector<std::uint8_t> pixels(image.data().size());
  std::transform(image.data().begin(), image.data().end(), pixels.begin(), quantize);
  return encode(pixels.data(), image.height(), image.width(), PNG_FORMAT_GRAY);
}

ColorImage read_png_rgb(const std::filesystem::path& path) {
  return decode_png_rgb(read_file(path));
}

GrayImage read_png_gray(const std::filesystem::path& path) {
  return decode_png_gray(read_file(path));
}

void write_png(const std::filesystem::path& path, const ColorImage& image) {
  write_file_atomic(path, encode_png(image));
}

void write_png(const std::filesystem::path& path, const GrayImage& image) {
  write_file_atomic(path, encode_png(image));
}

}  // namespace dictlearn::io
