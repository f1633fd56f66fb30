#include <algorithm>
#include <memory>
#include <ostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "cli/cli.hpp"
#include "cli/common.hpp"
#include "dictlearn/errors.hpp"
#include "dictlearn/imaging.hpp"
#include "dictlearn/io/dictionary_file.hpp"
#include "dictlearn/io/files.hpp"
#include "dictlearn/io/png_io.hpp"
#include "dictlearn/render.hpp"

namespace dictlearn::cli {
namespace {

struct TrainConfig {
  std::vector<std::string> images;
  int p = 20;
  int r = 100;
  int batches = 30;
  int batch_size = 1000;
  double lambda = 0.1;
  std::uint64_t seed = 0;
  std::string out;
  std::string render;
  int render_count = 25;
};

struct CompressConfig {
  std::string input;
  std::string dict;
  int p = 20;
  int overlap = 0;
  double lambda = 0.1;
  std::string out;
};

struct RestoreConfig {
  std::string input;
  std::string labels;
  std::vector<std::string> dicts;
  int p = 10;
  int overlap = 0;
  double lambda = 0.1;
  std::string reference;
  std::string out;
};

struct GrayConfig {
  std::string input;
  std::string out;
};

void require_patch_rows(const Matrix& W, int p, const std::string& what) {
  const Eigen::Index expected = 3 * static_cast<Eigen::Index>(p) * p;
  if (W.rows() != expected) {
    throw ShapeError(what + " has " + std::to_string(W.rows()) + " rows, patch size p=" +
                     std::to_string(p) + " needs 3p^2=" + std::to_string(expected));
  }
}

void require_overlap(int p, int overlap) {
  require(overlap >= 0 && overlap < p, "--overlap must satisfy 0 <= overlap < p");
}

void run_train(const TrainConfig& cfg, Context& ctx) {
  std::vector<ColorImage> images;
  images.reserve(cfg.images.size());
  for (const std::string& path : cfg.images) images.push_back(io::read_png_rgb(path));

  PatchTrainingConfig train;
  train.p = cfg.p;
  train.r = cfg.r;
  train.batches = cfg.batches;
  train.batch_size = cfg.batch_size;
  train.lambda = cfg.lambda;
  train.seed = cfg.seed;
  const OnlineDictionaryState state = train_patch_state(images, train);

  prepare_output(cfg.out);
  io::write_dictionary(cfg.out, state);
  if (!cfg.render.empty()) {
    RenderOptions render;
    render.layout = AtomLayout::kColorPatch;
    render.p = cfg.p;
    render.max_atoms = cfg.render_count;
    write_png_output(cfg.render, render_dictionary_grid(state.W, render));
  }
  ctx.out << "img-train: d=" << state.dim() << " r=" << state.rank() << " steps=" << state.t
          << "\n";
}

void run_compress(const CompressConfig& cfg, Context& ctx) {
  require_overlap(cfg.p, cfg.overlap);
  const OnlineDictionaryState state = io::read_dictionary(cfg.dict);
  require_patch_rows(state.W, cfg.p, "dictionary " + cfg.dict);
  const ColorImage image = io::read_png_rgb(cfg.input);
  const ColorImage out = compress_image(image, state.W, cfg.p, cfg.overlap, cfg.lambda);
  write_png_output(cfg.out, out);
  ctx.out << "img-compress: " << out.height() << "x" << out.width()
          << " psnr=" << io::format_double(psnr(image, out)) << "\n";
}

void run_restore(const RestoreConfig& cfg, Context& ctx) {
  require_overlap(cfg.p, cfg.overlap);
  std::map<int, Matrix> dictionaries;
  for (const std::string& spec : cfg.dicts) {
    const std::size_t eq = spec.find('=');
    require(eq != std::string::npos && eq > 0, "--dict expects CLASS=PATH, got '" + spec + "'");
    int label = 0;
    try {
      std::size_t used = 0;
      label = std::stoi(spec.substr(0, eq), &used);
      require(used == eq, "");
    } catch (const std::exception&) {
      throw InvalidArgumentError("--dict class must be an integer, got '" + spec + "'");
    }
    require(!dictionaries.contains(label), "class " + std::to_string(label) + " given twice");
    const Matrix W = io::read_dictionary(spec.substr(eq + 1)).W;
    require_patch_rows(W, cfg.p, "dictionary for class " + std::to_string(label));
    dictionaries.emplace(label, W);
  }

  const GrayImage gray = io::read_png_gray(cfg.input);
  const ClassLabelMap labels = io::read_labels_csv(cfg.labels);
  const ColorImage out = restore_color(gray, labels, dictionaries, cfg.p, cfg.overlap, cfg.lambda);
  write_png_output(cfg.out, out);
  ctx.out << "img-restore: " << out.height() << "x" << out.width()
          << " classes=" << dictionaries.size();
  if (!cfg.reference.empty()) {
    const ColorImage reference = io::read_png_rgb(cfg.reference);
    ctx.out << " psnr=" << io::format_double(psnr(reference, out));
  }
  ctx.out << "\n";
}

}  // namespace

void add_image_commands(CLI::App& app, Context& ctx) {
  {
    auto cfg = std::make_shared<TrainConfig>();
    CLI::App* cmd =
        app.add_subcommand("img-train", "Learn a color patch dictionary from PNG images");
    cmd->add_option("images", cfg->images, "Training PNGs")
        ->required()
        ->check(CLI::ExistingFile);
    cmd->add_option("--p", cfg->p, "Patch side")->check(CLI::PositiveNumber);
    cmd->add_option("--r", cfg->r, "Number of atoms")->check(CLI::PositiveNumber);
    cmd->add_option("--batches", cfg->batches, "Learner steps")->check(CLI::PositiveNumber);
    cmd->add_option("--batch-size", cfg->batch_size, "Patches per step")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--lambda", cfg->lambda, "L1 penalty")->check(CLI::NonNegativeNumber);
    cmd->add_option("--seed", cfg->seed, "Random seed");
    cmd->add_option("--out", cfg->out, "Dictionary file")->required();
    cmd->add_option("--render", cfg->render, "Optional PNG grid of atoms");
    cmd->add_option("--render-count", cfg->render_count, "Atoms shown in the grid")
        ->check(CLI::PositiveNumber);
    cmd->callback([cfg, &ctx] { run_train(*cfg, ctx); });
  }
  {
    auto cfg = std::make_shared<CompressConfig>();
    CLI::App* cmd = app.add_subcommand(
        "img-compress", "Reconstruct an image from its patch codes over a dictionary");
    cmd->add_option("input", cfg->input, "Input PNG")->required()->check(CLI::ExistingFile);
    cmd->add_option("--dict", cfg->dict, "Dictionary file")
        ->required()
        ->check(CLI::ExistingFile);
    cmd->add_option("--p", cfg->p, "Patch side")->check(CLI::PositiveNumber);
    cmd->add_option("--overlap", cfg->overlap, "Patch overlap in pixels");
    cmd->add_option("--lambda", cfg->lambda, "L1 penalty")->check(CLI::NonNegativeNumber);
    cmd->add_option("--out", cfg->out, "Output PNG")->required();
    cmd->callback([cfg, &ctx] { run_compress(*cfg, ctx); });
  }
  {
    auto cfg = std::make_shared<RestoreConfig>();
    CLI::App* cmd = app.add_subcommand(
        "img-restore", "Restore color to a grayscale image with per-class dictionaries");
    cmd->add_option("input", cfg->input, "Grayscale PNG")
        ->required()
        ->check(CLI::ExistingFile);
    cmd->add_option("--labels", cfg->labels, "Anchor label CSV (row,col,class)")
        ->required()
        ->check(CLI::ExistingFile);
    cmd->add_option("--dict", cfg->dicts, "CLASS=PATH, repeatable")->required();
    cmd->add_option("--p", cfg->p, "Patch side")->check(CLI::PositiveNumber);
    cmd->add_option("--overlap", cfg->overlap, "Patch overlap in pixels");
    cmd->add_option("--lambda", cfg->lambda, "L1 penalty")->check(CLI::NonNegativeNumber);
    cmd->add_option("--reference", cfg->reference, "Color PNG for a PSNR report")
        ->check(CLI::ExistingFile);
    cmd->add_option("--out", cfg->out, "Output PNG")->required();
    cmd->callback([cfg, &ctx] { run_restore(*cfg, ctx); });
  }
  {
    auto cfg = std::make_shared<GrayConfig>();
    CLI::App* cmd = app.add_subcommand("img-gray", "Convert a PNG to grayscale");
    cmd->add_option("input", cfg->input, "Input PNG")->required()->check(CLI::ExistingFile);
    cmd->add_option("--out", cfg->out, "Output PNG")->required();
    cmd->callback([cfg, &ctx] {
      const GrayImage gray = to_grayscale(io::read_png_rgb(cfg->input));
      write_png_output(cfg->out, gray);
      ctx.out << "img-gray: " << gray.height() << "x" << gray.width() << "\n";
    });
  }
}

}  // namespace dictlearn::cli
