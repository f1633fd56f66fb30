#include "dictlearn/render.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <string>

#include "dictlearn/errors.hpp"

namespace dictlearn {
namespace {

using Rgb = std::array<double, 3>;

// Curve colors in series order: blue, red, yellow, black, then extras.
constexpr std::array<Rgb, 8> kPalette = {{{0.0, 0.25, 0.9},
                                          {0.85, 0.1, 0.1},
                                          {0.95, 0.75, 0.0},
                                          {0.0, 0.0, 0.0},
                                          {0.1, 0.6, 0.2},
                                          {0.6, 0.2, 0.7},
                                          {0.0, 0.7, 0.7},
                                          {0.5, 0.5, 0.5}}};

struct TileShape {
  int height;
  int width;
  Eigen::Index rows;  // expected dictionary rows
};

TileShape tile_shape(const RenderOptions& o, Eigen::Index rows) {
  switch (o.layout) {
    case AtomLayout::kColorPatch:
      return {o.p, o.p, static_cast<Eigen::Index>(3) * o.p * o.p};
    case AtomLayout::kGrayPatch:
      return {o.p, o.p, static_cast<Eigen::Index>(o.p) * o.p};
    case AtomLayout::kFrame:
      return {o.height, o.width, static_cast<Eigen::Index>(o.height) * o.width};
    case AtomLayout::kTemporal:
      if (o.k < 1 || rows % o.k != 0)
        throw ShapeError("temporal layout needs a row count divisible by k");
      return {o.tile_size, o.tile_size, rows};
  }
  throw FormatError("unknown atom layout");
}

void draw_line(ColorImage& img, double x0, double y0, double x1, double y1, const Rgb& color) {
  const int steps = static_cast<int>(std::ceil(std::max(std::abs(x1 - x0), std::abs(y1 - y0)))) + 1;
  for (int s = 0; s <= steps; ++s) {
    const double f = static_cast<double>(s) / steps;
    const int x = static_cast<int>(std::lround(x0 + f * (x1 - x0)));
    const int y = static_cast<int>(std::lround(y0 + f * (y1 - y0)));
    if (x < 0 || y < 0 || x >= img.width() || y >= img.height()) continue;
    for (int c = 0; c < 3; ++c) img.at(y, x, c) = color[static_cast<std::size_t>(c)];
  }
}

}  // namespace

AtomLayout parse_atom_layout(std::string_view name) {
  if (name == "patch") return AtomLayout::kColorPatch;
  if (name == "gray-patch") return AtomLayout::kGrayPatch;
  if (name == "frame") return AtomLayout::kFrame;
  if (name == "temporal") return AtomLayout::kTemporal;
  throw FormatError("unknown layout '" + std::string(name) +
                    "' (expected patch, gray-patch, frame or temporal)");
}

ColorImage render_dictionary_grid(const Matrix& W, const RenderOptions& options) {
  const TileShape shape = tile_shape(options, W.rows());
  if (shape.height < 1 || shape.width < 1) throw ShapeError("layout dimensions must be >= 1");
  if (W.rows() != shape.rows) {
    throw ShapeError("dictionary has " + std::to_string(W.rows()) + " rows, layout expects " +
                     std::to_string(shape.rows));
  }
  const int total = static_cast<int>(W.cols());
  const int count = options.max_atoms > 0 ? std::min(options.max_atoms, total) : total;
  if (count < 1) throw ShapeError("dictionary has no atoms to render");
  const int grid_cols = options.columns > 0
                            ? options.columns
                            : static_cast<int>(std::ceil(std::sqrt(static_cast<double>(count))));
  const int grid_rows = (count + grid_cols - 1) / grid_cols;
  const int scale =
      options.scale > 0
          ? options.scale
          : (options.layout == AtomLayout::kTemporal
                 ? 1
                 : std::max(1, 40 / std::max(shape.height, shape.width)));
  const int th = shape.height * scale;
  const int tw = shape.width * scale;

  ColorImage out(grid_rows * (th + 1) + 1, grid_cols * (tw + 1) + 1, 1.0);
  for (int a = 0; a < count; ++a) {
    const int top = 1 + (a / grid_cols) * (th + 1);
    const int left = 1 + (a % grid_cols) * (tw + 1);
    const auto atom = W.col(a);
    const double lo = atom.minCoeff();
    const double span = atom.maxCoeff() - lo;
    auto norm = [&](double v) { return span > 0.0 ? (v - lo) / span : 0.0; };

    if (options.layout == AtomLayout::kTemporal) {
      const int k = options.k;
      const int m = static_cast<int>(W.rows()) / k;
      const double margin = 3.0;
      const double xs = k > 1 ? (tw - 1 - 2 * margin) / (k - 1) : 0.0;
      for (int s = 0; s < m; ++s) {
        const Rgb& color = kPalette[static_cast<std::size_t>(s) % kPalette.size()];
        auto point = [&](int i) {
          const double x = left + margin + i * xs;
          const double y = top + margin + (1.0 - norm(atom(s * k + i))) * (th - 1 - 2 * margin);
          return std::pair{x, y};
        };
        for (int i = 0; i + 1 < k; ++i) {
          const auto [x0, y0] = point(i);
          const auto [x1, y1] = point(i + 1);
          draw_line(out, x0, y0, x1, y1, color);
        }
        if (k == 1) {
          const auto [x0, y0] = point(0);
          draw_line(out, x0, y0, x0 + 1, y0, color);
        }
      }
      continue;
    }

    for (int i = 0; i < th; ++i) {
      for (int j = 0; j < tw; ++j) {
        const int pi = i / scale;
        const int pj = j / scale;
        Rgb px{};
        switch (options.layout) {
          case AtomLayout::kColorPatch: {
            const int area = options.p * options.p;
            const int idx = pj * options.p + pi;
            px = {norm(atom(idx)), norm(atom(2 * area + idx)), norm(atom(area + idx))};
            break;
          }
          case AtomLayout::kGrayPatch: {
            const double v = norm(atom(pj * options.p + pi));
            px = {v, v, v};
            break;
          }
          default: {
            const double v = norm(atom(static_cast<Eigen::Index>(pj) * shape.height + pi));
            px = {v, v, v};
            break;
          }
        }
        for (int c = 0; c < 3; ++c) out.at(top + i, left + j, c) = px[static_cast<std::size_t>(c)];
      }
    }
  }
  return out;
}

}  // namespace dictlearn
