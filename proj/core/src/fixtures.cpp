#include "dictlearn/fixtures.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "dictlearn/errors.hpp"
#include "dictlearn/rng.hpp"

namespace dictlearn::fixtures {
namespace {

constexpr double kPi = std::numbers::pi;

double clamp01(double v) { return std::clamp(v, 0.0, 1.0); }

}  // namespace

FrameStack candle_frames(int frames, int height, int width, std::uint64_t seed) {
  FrameStack stack{height, width, {}};
  CounterRng rng(seed);
  const double body_half = std::max(1.0, width / 10.0);
  const double body_top = 0.6 * height;
  double drift = 0.0;
  for (int t = 0; t < frames; ++t) {
    drift = 0.8 * drift + 0.2 * (rng.uniform() - 0.5);
    const double cx = 0.5 * (width - 1) + 0.22 * width * std::sin(2.0 * kPi * t / 25.0) + drift;
    const double cy = 0.35 * height + 0.03 * height * std::sin(2.0 * kPi * t / 9.0);
    const double sx = 0.08 * width + 0.5;
    const double sy = 0.12 * height + 0.5;
    Matrix frame(height, width);
    for (int col = 0; col < width; ++col) {
      for (int row = 0; row < height; ++row) {
        const double dx = (col - cx) / sx;
        const double dy = (row - cy) / sy;
        double v = 0.05 + 0.9 * std::exp(-0.5 * (dx * dx + dy * dy));
        if (row >= body_top && std::abs(col - 0.5 * (width - 1)) <= body_half) v = 0.6;
        frame(row, col) = clamp01(v);
      }
    }
    stack.frames.push_back(std::move(frame));
  }
  return stack;
}

FrameStack noise_frames(int frames, int height, int width, std::uint64_t seed) {
  FrameStack stack{height, width, {}};
  for (int t = 0; t < frames; ++t)
    stack.frames.push_back(random_uniform(height, width, seed, static_cast<std::uint64_t>(t)));
  return stack;
}

FrameStack noisy_pattern_frames(int frames, int height, int width, std::uint64_t seed) {
  Matrix pattern(height, width);
  for (int col = 0; col < width; ++col) {
    for (int row = 0; row < height; ++row) {
      const double u = static_cast<double>(row) / std::max(1, height - 1);
      const double v = static_cast<double>(col) / std::max(1, width - 1);
      pattern(row, col) = 0.5 + 0.5 * std::sin(2.0 * kPi * u) * std::cos(kPi * v);
    }
  }
  FrameStack stack{height, width, {}};
  for (int t = 0; t < frames; ++t) {
    const Matrix noise = random_uniform(height, width, seed, static_cast<std::uint64_t>(t));
    stack.frames.push_back(0.8 * pattern + 0.2 * noise);
  }
  return stack;
}

FrameStack concatenate(const FrameStack& first, const FrameStack& second) {
  if (first.height != second.height || first.width != second.width)
    throw ShapeError("cannot concatenate frame stacks of different sizes");
  FrameStack out = first;
  out.frames.insert(out.frames.end(), second.frames.begin(), second.frames.end());
  return out;
}

Matrix seasonal_series(int m, int length, std::uint64_t seed) {
  CounterRng rng(seed);
  Matrix values(m, length);
  for (int s = 0; s < m; ++s) {
    const double base = 55.0 + 5.0 * s;
    const double amplitude = 6.0 + 5.0 * s;
    const double phase = 0.3 * s;
    for (int t = 0; t < length; ++t) {
      values(s, t) = base + amplitude * std::sin(2.0 * kPi * t / 12.0 + phase) + 0.5 * rng.normal();
    }
  }
  return values;
}

ColorImage textured_image(int height, int width, std::uint64_t seed) {
  CounterRng rng(seed);
  struct Grating {
    double fx, fy, phase, weight;
    int channel;
  };
  std::vector<Grating> gratings;
  for (int g = 0; g < 9; ++g) {
    gratings.push_back({0.05 + 0.3 * rng.uniform(), 0.05 + 0.3 * rng.uniform(),
                        2.0 * kPi * rng.uniform(), 0.08 + 0.08 * rng.uniform(), g % 3});
  }
  ColorImage image(height, width);
  for (int row = 0; row < height; ++row) {
    for (int col = 0; col < width; ++col) {
      const double u = static_cast<double>(row) / std::max(1, height - 1);
      const double v = static_cast<double>(col) / std::max(1, width - 1);
      double rgb[3] = {0.25 + 0.4 * u, 0.3 + 0.3 * v, 0.55 - 0.3 * u * v};
      for (const Grating& g : gratings)
        rgb[g.channel] += g.weight * std::sin(g.fx * row + g.fy * col + g.phase);
      for (int c = 0; c < 3; ++c) image.at(row, col, c) = clamp01(rgb[c] + 0.03 * rng.uniform());
    }
  }
  return image;
}

ColorImage grass_and_sand(int height, int width, std::uint64_t seed) {
  CounterRng rng(seed);
  ColorImage image(height, width);
  for (int row = 0; row < height; ++row) {
    for (int col = 0; col < width; ++col) {
      const double n = rng.uniform();
      if (col < width / 2) {
        const double blade = 0.5 + 0.5 * std::sin(1.3 * col + 0.2 * row);
        image.at(row, col, kRed) = clamp01(0.12 + 0.1 * n);
        image.at(row, col, kGreen) = clamp01(0.35 + 0.3 * blade + 0.1 * n);
        image.at(row, col, kBlue) = clamp01(0.08 + 0.06 * n);
      } else {
        image.at(row, col, kRed) = clamp01(0.82 + 0.12 * n);
        image.at(row, col, kGreen) = clamp01(0.7 + 0.1 * n);
        image.at(row, col, kBlue) = clamp01(0.45 + 0.1 * n);
      }
    }
  }
  return image;
}

}  // namespace dictlearn::fixtures
