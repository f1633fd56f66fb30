#include <memory>
#include <ostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "cli/cli.hpp"
#include "cli/common.hpp"
#include "dictlearn/io/files.hpp"
#include "dictlearn/render.hpp"
#include "dictlearn/video.hpp"

namespace dictlearn::cli {
namespace {

// Frame-based commands need at least three frames.
constexpr int kMinFrames = 3;

struct DictConfig {
  std::string frames;
  int r = 5;
  std::string mode = "offline";
  int iters = 300;
  double lambda = 0.0;
  std::uint64_t seed = 0;
  std::string snapshots;
  std::string out_dir = ".";
};

struct ChangeConfig {
  std::string frames;
  int r = 5;
  int iters = 300;
  std::uint64_t seed = 0;
  double threshold = kChangeThreshold;
  std::string out;
};

std::string padded(int value, int width) {
  std::string s = std::to_string(value);
  if (static_cast<int>(s.size()) < width) s.insert(0, static_cast<std::size_t>(width) - s.size(), '0');
  return s;
}

void write_atoms(const fs::path& dir, const std::string& stem, const Matrix& W, int height,
                 int width) {
  for (Eigen::Index j = 0; j < W.cols(); ++j) {
    const Matrix atom = devectorize_frame(W.col(j), height, width);
    write_png_output(dir / (stem + "_atom" + padded(static_cast<int>(j), 2) + ".png"),
                     display_image(atom));
  }
  RenderOptions render;
  render.layout = AtomLayout::kFrame;
  render.height = height;
  render.width = width;
  render.columns = static_cast<int>(W.cols());
  write_png_output(dir / (stem + "_grid.png"), render_dictionary_grid(W, render));
}

void run_dict(const DictConfig& cfg, Context& ctx) {
  require(cfg.mode == "offline" || cfg.mode == "online", "--mode must be offline or online");
  const FrameStack stack = load_frame_directory(cfg.frames, kMinFrames);

  SpatialMode mode;
  if (cfg.mode == "offline") {
    require(cfg.snapshots.empty(), "--snapshots requires --mode online");
    mode = OfflineMode{cfg.iters, cfg.seed};
  } else {
    OnlineMode online{cfg.lambda, cfg.seed, {}, {}};
    if (!cfg.snapshots.empty()) online.snapshot_frames = parse_int_list(cfg.snapshots);
    for (int f : online.snapshot_frames) {
      require(f >= 1 && f <= stack.frame_count(),
              "snapshot frame " + std::to_string(f) + " outside 1.." +
                  std::to_string(stack.frame_count()));
    }
    mode = online;
  }

  const SpatialDictionary dict = learn_spatial_dictionary(stack, cfg.r, mode);
  const fs::path dir = cfg.out_dir;
  write_atoms(dir, "final", dict.W, stack.height, stack.width);
  for (const SpatialSnapshot& snap : dict.snapshots)
    write_atoms(dir, "snapshot" + padded(snap.frame, 4), snap.W, stack.height, stack.width);

  ctx.out << "video-dict: frames=" << stack.frame_count() << " size=" << stack.height << "x"
          << stack.width << " r=" << dict.W.cols() << " snapshots=" << dict.snapshots.size()
          << "\n";
}

void run_change(const ChangeConfig& cfg, Context& ctx) {
  const FrameStack stack = load_frame_directory(cfg.frames, kMinFrames);
  const ChangeReport report = detect_changepoint(stack, cfg.r, cfg.iters, cfg.seed, cfg.threshold);

  std::ostringstream csv;
  csv << "boundary,score\n";
  for (std::size_t t = 0; t < report.scores.size(); ++t) {
    csv << t << ',' << io::format_double(report.scores[t]) << '\n';
  }
  write_text_output(cfg.out, csv.str());

  ctx.out << "video-changepoint: changepoint=" << report.changepoint << " score="
          << io::format_double(report.scores[static_cast<std::size_t>(report.changepoint)])
          << " significant=" << (report.significant ? "true" : "false") << "\n";
}

}  // namespace

void add_video_commands(CLI::App& app, Context& ctx) {
  {
    auto cfg = std::make_shared<DictConfig>();
    CLI::App* cmd =
        app.add_subcommand("video-dict", "Learn spatial atoms from a directory of frames");
    cmd->add_option("frames", cfg->frames, "Directory of PNG frames")->required();
    cmd->add_option("--r", cfg->r, "Number of atoms")->check(CLI::PositiveNumber);
    cmd->add_option("--mode", cfg->mode, "offline or online");
    cmd->add_option("--iters", cfg->iters, "Offline iterations")->check(CLI::PositiveNumber);
    cmd->add_option("--lambda", cfg->lambda, "Online L1 penalty")
        ->check(CLI::NonNegativeNumber);
    cmd->add_option("--seed", cfg->seed, "Random seed");
    cmd->add_option("--snapshots", cfg->snapshots, "Online snapshot frames, e.g. 1,5,7,15");
    cmd->add_option("--out-dir", cfg->out_dir, "Output directory");
    cmd->callback([cfg, &ctx] { run_dict(*cfg, ctx); });
  }
  {
    auto cfg = std::make_shared<ChangeConfig>();
    CLI::App* cmd = app.add_subcommand(
        "video-changepoint", "Locate the strongest change in a directory of frames");
    cmd->add_option("frames", cfg->frames, "Directory of PNG frames")->required();
    cmd->add_option("--r", cfg->r, "Number of atoms")->check(CLI::PositiveNumber);
    cmd->add_option("--iters", cfg->iters, "Factorization iterations")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--seed", cfg->seed, "Random seed");
    cmd->add_option("--threshold", cfg->threshold, "Significance threshold")
        ->check(CLI::NonNegativeNumber);
    cmd->add_option("--out", cfg->out, "Report CSV (boundary,score)")->required();
    cmd->callback([cfg, &ctx] { run_change(*cfg, ctx); });
  }
}

}  // namespace dictlearn::cli
