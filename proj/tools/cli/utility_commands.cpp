#include <memory>
#include <ostream>
#include <string>

#include <CLI11.hpp>

#include "cli/cli.hpp"
#include "cli/common.hpp"
#include "dictlearn/fixtures.hpp"
#include "dictlearn/io/dictionary_file.hpp"
#include "dictlearn/io/files.hpp"
#include "dictlearn/io/series_csv.hpp"
#include "dictlearn/render.hpp"
#include "dictlearn/rng.hpp"

namespace dictlearn::cli {
namespace {

struct RenderConfig {
  std::string dict;
  std::string layout = "patch";
  int p = 0;
  int height = 0;
  int width = 0;
  int k = 0;
  int max_atoms = 0;
  int columns = 0;
  int scale = 0;
  std::string out;
};

struct WeatherConfig {
  int m = 4;
  int length = 300;
  double missing = 0.0;
  std::uint64_t seed = 0;
  std::string out;
};

struct CandleConfig {
  int frames = 75;
  int noise_frames = 0;
  int height = 80;
  int width = 30;
  std::uint64_t seed = 0;
  std::string out_dir;
};

struct ImageConfig {
  int height = 100;
  int width = 100;
  std::uint64_t seed = 0;
  std::string out;
  // grass-sand only
  int p = 10;
  int overlap = 9;
  std::string labels;
  std::string halves;
};

void run_render(const RenderConfig& cfg, Context& ctx) {
  RenderOptions opts;
  opts.layout = parse_atom_layout(cfg.layout);
  opts.p = cfg.p;
  opts.height = cfg.height;
  opts.width = cfg.width;
  opts.k = cfg.k;
  opts.max_atoms = cfg.max_atoms;
  opts.columns = cfg.columns;
  opts.scale = cfg.scale;
  const Matrix W = io::read_dictionary(cfg.dict).W;
  const ColorImage grid = render_dictionary_grid(W, opts);
  write_png_output(cfg.out, grid);
  ctx.out << "render: " << grid.height() << "x" << grid.width() << "\n";
}

void run_weather(const WeatherConfig& cfg, Context& ctx) {
  require(cfg.missing >= 0.0 && cfg.missing < 1.0, "--missing must be in [0, 1)");
  const Matrix values = fixtures::seasonal_series(cfg.m, cfg.length, cfg.seed);
  Mask present = Mask::Constant(values.rows(), values.cols(), true);
  CounterRng rng(cfg.seed, 1);
  int hidden = 0;
  for (Eigen::Index t = 0; t < values.cols(); ++t) {
    for (Eigen::Index s = 0; s < values.rows(); ++s) {
      if (cfg.missing > 0.0 && rng.uniform() < cfg.missing) {
        present(s, t) = false;
        ++hidden;
      }
    }
  }
  std::vector<std::string> times;
  for (int t = 0; t < cfg.length; ++t) times.push_back(std::to_string(t));
  std::vector<std::string> names;
  for (int s = 0; s < cfg.m; ++s) names.push_back("series_" + std::to_string(s + 1));
  write_text_output(cfg.out, io::format_series_csv(times, names, values, present));
  ctx.out << "synth weather: m=" << cfg.m << " T=" << cfg.length << " missing=" << hidden
          << "\n";
}

void run_candle(const CandleConfig& cfg, Context& ctx) {
  FrameStack stack = fixtures::candle_frames(cfg.frames, cfg.height, cfg.width, cfg.seed);
  if (cfg.noise_frames > 0) {
    stack = fixtures::concatenate(
        stack, fixtures::noise_frames(cfg.noise_frames, cfg.height, cfg.width, cfg.seed + 1));
  }
  const fs::path dir = cfg.out_dir;
  for (int t = 0; t < stack.frame_count(); ++t) {
    GrayImage frame(stack.height, stack.width);
    for (int row = 0; row < stack.height; ++row)
      for (int col = 0; col < stack.width; ++col)
        frame.at(row, col) = stack.frames[static_cast<std::size_t>(t)](row, col);
    std::string name = std::to_string(t);
    name.insert(0, name.size() < 4 ? 4 - name.size() : 0, '0');
    write_png_output(dir / ("frame_" + name + ".png"), frame);
  }
  ctx.out << "synth candle: frames=" << stack.frame_count() << "\n";
}

void run_grass_sand(const ImageConfig& cfg, Context& ctx) {
  require(cfg.overlap >= 0 && cfg.overlap < cfg.p, "--overlap must satisfy 0 <= overlap < p");
  const ColorImage image = fixtures::grass_and_sand(cfg.height, cfg.width, cfg.seed);
  write_png_output(cfg.out, image);
  if (!cfg.labels.empty()) {
    // Class 0 (grass) for anchors whose patch center lies in the left half.
    const PatchGrid grid = PatchGrid::regular(cfg.height, cfg.width, cfg.p, cfg.p - cfg.overlap);
    ClassLabelMap labels;
    for (const Anchor& a : grid.anchors) labels[a] = 2 * a.col + cfg.p <= cfg.width ? 0 : 1;
    write_text_output(cfg.labels, io::format_labels_csv(labels));
  }
  if (!cfg.halves.empty()) {
    const int half = cfg.width / 2;
    for (int part = 0; part < 2; ++part) {
      const int first = part == 0 ? 0 : half;
      const int cols = part == 0 ? half : cfg.width - half;
      ColorImage region(cfg.height, cols);
      for (int row = 0; row < cfg.height; ++row)
        for (int col = 0; col < cols; ++col)
          for (int c = 0; c < 3; ++c) region.at(row, col, c) = image.at(row, first + col, c);
      write_png_output(cfg.halves + (part == 0 ? "_grass.png" : "_sand.png"), region);
    }
  }
  ctx.out << "synth grass-sand: " << cfg.height << "x" << cfg.width << "\n";
}

void add_image_size(CLI::App* cmd, ImageConfig& cfg) {
  cmd->add_option("--height", cfg.height, "Image height")->check(CLI::PositiveNumber);
  cmd->add_option("--width", cfg.width, "Image width")->check(CLI::PositiveNumber);
  cmd->add_option("--seed", cfg.seed, "Random seed");
  cmd->add_option("--out", cfg.out, "Output PNG")->required();
}

}  // namespace

void add_utility_commands(CLI::App& app, Context& ctx) {
  {
    auto cfg = std::make_shared<RenderConfig>();
    CLI::App* cmd = app.add_subcommand("render", "Render a dictionary file as an atom grid");
    cmd->add_option("dict", cfg->dict, "Dictionary file")->required()->check(CLI::ExistingFile);
    cmd->add_option("--layout", cfg->layout, "patch, gray-patch, frame or temporal");
    cmd->add_option("--p", cfg->p, "Patch side (patch layouts)");
    cmd->add_option("--height", cfg->height, "Frame height (frame layout)");
    cmd->add_option("--width", cfg->width, "Frame width (frame layout)");
    cmd->add_option("--k", cfg->k, "Points per curve (temporal layout)");
    cmd->add_option("--max-atoms", cfg->max_atoms, "Atoms shown, 0 = all")
        ->check(CLI::NonNegativeNumber);
    cmd->add_option("--columns", cfg->columns, "Grid columns, 0 = automatic")
        ->check(CLI::NonNegativeNumber);
    cmd->add_option("--scale", cfg->scale, "Pixel magnification, 0 = automatic")
        ->check(CLI::NonNegativeNumber);
    cmd->add_option("--out", cfg->out, "Output PNG")->required();
    cmd->callback([cfg, &ctx] { run_render(*cfg, ctx); });
  }

  CLI::App* synth = app.add_subcommand("synth", "Write synthetic fixtures");
  synth->require_subcommand(1);
  {
    auto cfg = std::make_shared<WeatherConfig>();
    CLI::App* cmd = synth->add_subcommand("weather", "Seasonal multi-series CSV");
    cmd->add_option("--m", cfg->m, "Series count")->check(CLI::PositiveNumber);
    cmd->add_option("--T", cfg->length, "Length")->check(CLI::PositiveNumber);
    cmd->add_option("--missing", cfg->missing, "Fraction of cells left empty");
    cmd->add_option("--seed", cfg->seed, "Random seed");
    cmd->add_option("--out", cfg->out, "Output CSV")->required();
    cmd->callback([cfg, &ctx] { run_weather(*cfg, ctx); });
  }
  {
    auto cfg = std::make_shared<CandleConfig>();
    CLI::App* cmd = synth->add_subcommand("candle", "Candle-like frames, optionally followed by noise");
    cmd->add_option("--frames", cfg->frames, "Candle frames")->check(CLI::PositiveNumber);
    cmd->add_option("--noise-frames", cfg->noise_frames, "Uniform-noise frames appended")
        ->check(CLI::NonNegativeNumber);
    cmd->add_option("--height", cfg->height, "Frame height")->check(CLI::PositiveNumber);
    cmd->add_option("--width", cfg->width, "Frame width")->check(CLI::PositiveNumber);
    cmd->add_option("--seed", cfg->seed, "Random seed");
    cmd->add_option("--out-dir", cfg->out_dir, "Output directory")->required();
    cmd->callback([cfg, &ctx] { run_candle(*cfg, ctx); });
  }
  {
    auto cfg = std::make_shared<ImageConfig>();
    CLI::App* cmd = synth->add_subcommand("texture", "Textured color image");
    add_image_size(cmd, *cfg);
    cmd->callback([cfg, &ctx] {
      write_png_output(cfg->out, fixtures::textured_image(cfg->height, cfg->width, cfg->seed));
      ctx.out << "synth texture: " << cfg->height << "x" << cfg->width << "\n";
    });
  }
  {
    auto cfg = std::make_shared<ImageConfig>();
    CLI::App* cmd =
        synth->add_subcommand("grass-sand", "Two-region image with an anchor label CSV");
    add_image_size(cmd, *cfg);
    cmd->add_option("--p", cfg->p, "Patch side used for the labels")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--overlap", cfg->overlap, "Patch overlap used for the labels");
    cmd->add_option("--labels", cfg->labels, "Output label CSV");
    cmd->add_option("--halves", cfg->halves,
                    "Also write PREFIX_grass.png and PREFIX_sand.png (class training images)");
    cmd->callback([cfg, &ctx] { run_grass_sand(*cfg, ctx); });
  }
}

}  // namespace dictlearn::cli
