#pragma once

#include <cstdint>

#include "dictlearn/imaging.hpp"
#include "dictlearn/matrix.hpp"
#include "dictlearn/video.hpp"

// Seeded synthetic data used by the tests, benchmarks and the `synth`
// command. All generators are deterministic in their arguments.
namespace dictlearn::fixtures {

/// Candle-like video: a bright flame blob swaying left/right above a
/// static candle body on a dark background. Smooth in time.
FrameStack candle_frames(int frames, int height = 80, int width = 30, std::uint64_t seed = 0);

/// i.i.d. uniform [0,1) pixels.
FrameStack noise_frames(int frames, int height, int width, std::uint64_t seed);

/// One fixed smooth pattern, each frame = 0.8 pattern + 0.2 uniform noise.
FrameStack noisy_pattern_frames(int frames, int height, int width, std::uint64_t seed);

/// Frames of `first` followed by frames of `second` (dimensions must agree).
FrameStack concatenate(const FrameStack& first, const FrameStack& second);

/// m seasonal series (period 12) in Fahrenheit-like units with distinct
/// amplitudes and phases plus small Gaussian noise; m x T.
Matrix seasonal_series(int m, int length, std::uint64_t seed);

/// Smooth colored gradient overlaid with oriented gratings and blobs.
ColorImage textured_image(int height, int width, std::uint64_t seed);

/// Left half green grass-like texture, right half sandy texture.
ColorImage grass_and_sand(int height, int width, std::uint64_t seed);

}  // namespace dictlearn::fixtures
