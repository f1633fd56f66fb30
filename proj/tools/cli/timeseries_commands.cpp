#include <memory>
#include <optional>
#include <ostream>
#include <string>

#include <CLI11.hpp>

#include "cli/cli.hpp"
#include "cli/common.hpp"
#include "dictlearn/errors.hpp"
#include "dictlearn/io/dictionary_file.hpp"
#include "dictlearn/io/files.hpp"
#include "dictlearn/io/series_csv.hpp"
#include "dictlearn/render.hpp"
#include "dictlearn/timeseries.hpp"

namespace dictlearn::cli {
namespace {

struct LearnConfig {
  std::string input;
  int k = 6;
  int N = 50;
  int r = 16;
  double lambda = 0.1;
  std::uint64_t seed = 0;
  int stride = 1;
  double sentinel = io::kDefaultSentinel;
  std::optional<double> offset;
  std::string out_dir = ".";
  std::string prefix = "ts";
  bool render = false;
};

struct InpaintConfig {
  std::string input;
  std::string dict;
  std::string meta;
  std::optional<int> k;
  std::optional<double> offset;
  std::optional<double> lambda;
  double sentinel = io::kDefaultSentinel;
  std::string out;
  std::string recon_out;
};

std::string join(const std::vector<std::string>& items) {
  std::string out;
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (i > 0) out += ',';
    out += items[i];
  }
  return out;
}

Mask either(const Mask& a, const Mask& b) { return a || b; }

int count_true(const std::vector<bool>& flags) {
  int n = 0;
  for (bool f : flags) n += f ? 1 : 0;
  return n;
}

void run_learn(const LearnConfig& cfg, Context& ctx) {
  const HankelSpec spec{cfg.k, cfg.N, cfg.r};
  spec.validate();

  const io::SeriesTable table = io::read_series_csv(cfg.input, cfg.sentinel);
  const SeriesEnsemble ensemble = SeriesEnsemble::make(table.values, table.observed, cfg.offset);

  TemporalFitOptions fit_opts;
  fit_opts.stride = cfg.stride;
  const TemporalFit fit = online_temporal_fit(ensemble, spec, cfg.lambda, cfg.seed, fit_opts);
  const RollingReconstruction rolled =
      rolling_reconstruct(ensemble, fit.snapshots, spec, cfg.lambda, fit_opts.online);

  const fs::path base = fs::path(cfg.out_dir) / cfg.prefix;
  const fs::path dict_path = base.string() + ".onmf";
  prepare_output(dict_path);
  io::write_dictionary(dict_path, fit.state);
  write_text_output(base.string() + ".recon.csv",
                    io::format_series_csv(table.times, table.names, rolled.reconstruction,
                                          rolled.available));
  write_text_output(base.string() + ".filled.csv",
                    io::format_series_csv(table.times, table.names, rolled.filled,
                                          either(ensemble.observed, rolled.available)));

  io::Metadata meta;
  meta["kind"] = "timeseries";
  meta["k"] = std::to_string(spec.k);
  meta["N"] = std::to_string(spec.N);
  meta["r"] = std::to_string(spec.r);
  meta["m"] = std::to_string(ensemble.series_count());
  meta["T"] = std::to_string(ensemble.length());
  meta["lambda"] = io::format_double(cfg.lambda);
  meta["seed"] = std::to_string(cfg.seed);
  meta["stride"] = std::to_string(cfg.stride);
  meta["offset"] = io::format_double(ensemble.offset);
  meta["sentinel"] = io::format_double(cfg.sentinel);
  meta["series"] = join(table.names);
  meta["snapshots"] = std::to_string(fit.snapshots.size());
  meta["no_data_ticks"] = std::to_string(count_true(rolled.no_data));
  io::write_metadata(base.string() + ".meta", meta);

  if (cfg.render) {
    RenderOptions render;
    render.layout = AtomLayout::kTemporal;
    render.k = spec.k;
    write_png_output(base.string() + ".atoms.png", render_dictionary_grid(fit.state.W, render));
  }

  ctx.out << "ts-learn: m=" << ensemble.series_count() << " T=" << ensemble.length()
          << " d=" << fit.state.dim() << " r=" << fit.state.rank() << " steps=" << fit.state.t
          << " offset=" << io::format_double(ensemble.offset) << "\n";
}

void run_inpaint(const InpaintConfig& cfg, Context& ctx) {
  const OnlineDictionaryState state = io::read_dictionary(cfg.dict);
  io::Metadata meta;
  if (!cfg.meta.empty()) meta = io::read_metadata(cfg.meta);

  auto meta_number = [&](const char* key) -> std::optional<double> {
    const auto it = meta.find(key);
    if (it == meta.end()) return std::nullopt;
    try {
      return std::stod(it->second);
    } catch (const std::exception&) {
      throw ParseError(0, std::string("metadata key '") + key + "' is not a number");
    }
  };

  std::optional<int> k = cfg.k;
  if (!k) {
    if (const auto v = meta_number("k")) k = static_cast<int>(*v);
  }
  require(k.has_value(), "window length unknown: pass --k or --meta");
  require(*k >= 1, "--k must be >= 1");

  std::optional<double> offset = cfg.offset;
  if (!offset) offset = meta_number("offset");
  const double lambda = cfg.lambda.value_or(state.lambda);
  require(lambda >= 0.0, "--lambda must be >= 0");

  const io::SeriesTable table = io::read_series_csv(cfg.input, cfg.sentinel);
  const SeriesEnsemble ensemble = SeriesEnsemble::make(table.values, table.observed, offset);
  if (state.dim() != ensemble.series_count() * *k) {
    throw ShapeError("dictionary has " + std::to_string(state.dim()) + " rows but " +
                     std::to_string(ensemble.series_count()) + " series x k=" +
                     std::to_string(*k) + " need " +
                     std::to_string(ensemble.series_count() * *k));
  }
  if (ensemble.length() < *k) {
    throw InsufficientDataError("series length " + std::to_string(ensemble.length()) +
                                " is shorter than the window k=" + std::to_string(*k));
  }

  // The fixed dictionary serves every window, starting with the first full one.
  const HankelSpec spec{*k, *k, static_cast<int>(state.rank())};
  const std::vector<DictionarySnapshot> snapshots{{*k - 1, state.W}};
  const RollingReconstruction rolled = rolling_reconstruct(ensemble, snapshots, spec, lambda);

  write_text_output(cfg.out, io::format_series_csv(table.times, table.names, rolled.filled,
                                                   either(ensemble.observed, rolled.available)));
  if (!cfg.recon_out.empty()) {
    write_text_output(cfg.recon_out,
                      io::format_series_csv(table.times, table.names, rolled.reconstruction,
                                            rolled.available));
  }

  int filled = 0;
  for (Eigen::Index s = 0; s < ensemble.series_count(); ++s)
    for (Eigen::Index t = 0; t < ensemble.length(); ++t)
      filled += (!ensemble.observed(s, t) && rolled.available(s, t)) ? 1 : 0;
  ctx.out << "ts-inpaint: filled=" << filled
          << " missing=" << (ensemble.observed.size() - ensemble.observed.count())
          << " no_data_ticks=" << count_true(rolled.no_data) << "\n";
}

}  // namespace

void add_timeseries_commands(CLI::App& app, Context& ctx) {
  {
    auto cfg = std::make_shared<LearnConfig>();
    CLI::App* cmd = app.add_subcommand(
        "ts-learn", "Learn a joint temporal dictionary from a multi-series CSV");
    cmd->add_option("input", cfg->input, "Input CSV (time,series_1,...,series_m)")
        ->required()
        ->check(CLI::ExistingFile);
    cmd->add_option("--k", cfg->k, "Window length")->check(CLI::PositiveNumber);
    cmd->add_option("--N", cfg->N, "Buffer length")->check(CLI::PositiveNumber);
    cmd->add_option("--r", cfg->r, "Number of atoms")->check(CLI::PositiveNumber);
    cmd->add_option("--lambda", cfg->lambda, "L1 penalty")->check(CLI::NonNegativeNumber);
    cmd->add_option("--seed", cfg->seed, "Random seed");
    cmd->add_option("--stride", cfg->stride, "Ticks between learner steps")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--sentinel", cfg->sentinel, "Value marking a missing entry");
    cmd->add_option("--offset", cfg->offset,
                    "Nonnegativity offset (default: max(0, -min observed))")
        ->check(CLI::NonNegativeNumber);
    cmd->add_option("--out-dir", cfg->out_dir, "Output directory");
    cmd->add_option("--prefix", cfg->prefix, "Output file prefix");
    cmd->add_flag("--render", cfg->render, "Also write <prefix>.atoms.png");
    cmd->callback([cfg, &ctx] {
      require(cfg->k <= cfg->N, "--k must not exceed --N");
      run_learn(*cfg, ctx);
    });
  }
  {
    auto cfg = std::make_shared<InpaintConfig>();
    CLI::App* cmd = app.add_subcommand(
        "ts-inpaint", "Fill missing entries of a CSV with a stored temporal dictionary");
    cmd->add_option("input", cfg->input, "Input CSV")->required()->check(CLI::ExistingFile);
    cmd->add_option("--dict", cfg->dict, "Dictionary file")
        ->required()
        ->check(CLI::ExistingFile);
    cmd->add_option("--meta", cfg->meta, "Metadata sidecar written by ts-learn")
        ->check(CLI::ExistingFile);
    cmd->add_option("--k", cfg->k, "Window length (overrides --meta)");
    cmd->add_option("--offset", cfg->offset, "Nonnegativity offset (overrides --meta)")
        ->check(CLI::NonNegativeNumber);
    cmd->add_option("--lambda", cfg->lambda, "L1 penalty (default: stored lambda)");
    cmd->add_option("--sentinel", cfg->sentinel, "Value marking a missing entry");
    cmd->add_option("--out", cfg->out, "Filled CSV")->required();
    cmd->add_option("--recon-out", cfg->recon_out, "Optional reconstruction CSV");
    cmd->callback([cfg, &ctx] { run_inpaint(*cfg, ctx); });
  }
}

}  // namespace dictlearn::cli
