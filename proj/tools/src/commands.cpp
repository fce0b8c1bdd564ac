#include "zsk_cli/commands.hpp"

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <thread>

#include "CLI11.hpp"
#include "zsk/dataset.hpp"
#include "zsk/error.hpp"
#include "zsk/model_io.hpp"
#include "zsk/report.hpp"
#include "zsk/splits.hpp"
#include "zsk_cli/config.hpp"

namespace zsk::cli {
namespace {

namespace fs = std::filesystem;

std::uint64_t effective_seed(std::uint64_t flag_value) {
  const char* env = std::getenv("ZSK_SEED");
  return env ? parse_seed(env) : flag_value;
}

ExperimentConfig config_from(const std::string& path) {
  auto cfg = load_config(path);
  apply_seed_override(cfg, std::getenv("ZSK_SEED"));
  return cfg;
}

struct GenerateArgs {
  std::string config;
  std::string family = "R";
  std::size_t targets = 10;
  std::size_t side_dim = 5;
  std::size_t instances = 500;
  std::size_t features = 50;
  std::size_t prototypes = 10;
  std::uint64_t seed = 0;
  std::string out;
};

int cmd_generate(const GenerateArgs& a, std::ostream& out) {
  if (!a.config.empty()) {
    const auto cfg = config_from(a.config);
    const fs::path root = a.out.empty() ? cfg.output_dir / "datasets" : fs::path(a.out);
    std::size_t written = 0;
    for (const auto& d : cfg.datasets) {
      if (!d.synthetic) continue;
      const fs::path dir = root / d.name;
      save_dataset(generate(*d.synthetic), *d.synthetic, dir);
      out << dir.string() << '\n';
      ++written;
    }
    if (written == 0) throw ValidationError("config has no synthetic datasets to generate");
    return kOk;
  }
  if (a.out.empty()) throw ValidationError("generate: --out is required");
  SynthSpec spec;
  spec.family = family_from_string(a.family);
  spec.targets = a.targets;
  spec.side_dim = a.side_dim;
  spec.instances_per_target = a.instances;
  spec.feature_dim = a.features;
  spec.prototypes = a.prototypes;
  spec.seed = effective_seed(a.seed);
  spec.validate();
  save_dataset(generate(spec), spec, a.out);
  out << fs::path(a.out).string() << '\n';
  return kOk;
}

struct BenchmarkArgs {
  std::string config;
  std::string out;
  std::size_t max_parallel = 0;
  bool verbose = false;
};

int cmd_benchmark(const BenchmarkArgs& a, std::ostream& out, std::ostream& err) {
  auto cfg = config_from(a.config);
  cfg.validate_for_benchmark();
  if (!a.out.empty()) cfg.output_dir = a.out;
  if (a.max_parallel > 0) cfg.max_parallel_cells = a.max_parallel;

  BenchmarkOptions opt;
  opt.folds = cfg.folds;
  opt.seed = cfg.seed;
  opt.c_grid = cfg.c_grid;
  opt.svr = cfg.svr;
  opt.max_parallel_cells =
      cfg.max_parallel_cells > 0 ? cfg.max_parallel_cells : std::max(1u, std::thread::hardware_concurrency());
  opt.verbose = a.verbose;

  const auto datasets = materialise(cfg);
  const auto report = run_benchmark(datasets, cfg.methods, opt);

  std::size_t failed = 0;
  for (std::size_t d = 0; d < report.datasets.size(); ++d) {
    for (std::size_t m = 0; m < report.methods.size(); ++m) {
      const auto& cell = report.cells[d][m];
      if (!cell.rel_mse) {
        ++failed;
        err << "cell failed: " << report.datasets[d] << " / " << report.methods[m] << ": " << cell.error << '\n';
      }
    }
  }
  fs::create_directories(cfg.output_dir);
  write_scores_csv(report, cfg.output_dir / "scores.csv");
  write_stats_json(report, cfg.output_dir / "stats.json");
  write_report_md(report, cfg.output_dir / "report.md");
  for (const char* f : {"scores.csv", "stats.json", "report.md"}) out << (cfg.output_dir / f).string() << '\n';
  if (failed == report.datasets.size() * report.methods.size()) {
    err << "every benchmark cell failed\n";
    return kRuntime;
  }
  return kOk;
}

struct TimingArgs {
  std::string config;
  std::string out;
  std::size_t repeats = 3;
  std::size_t sample_pairs = 0;
  bool kernel_only = false;
  std::uint64_t seed = 0;
};

int cmd_timing(const TimingArgs& a, std::ostream& out) {
  ExperimentConfig cfg;
  if (!a.config.empty()) {
    cfg = config_from(a.config);
  } else {
    cfg.seed = effective_seed(a.seed);
    cfg.timing.grid.seed = cfg.seed;
  }
  auto& t = cfg.timing;
  t.options.repeats = a.repeats;
  if (a.sample_pairs > 0) t.options.kernel_sample_pairs = a.sample_pairs;
  if (a.kernel_only) t.options.include_fit = false;
  const fs::path dir = !a.out.empty() ? fs::path(a.out) : (a.config.empty() ? fs::path("results") : cfg.output_dir);

  const auto grid = generate_timing_grid(t.grid);
  const auto records = run_timing(grid, t.methods, t.options);
  write_timing_csv(records, dir / "timing.csv");
  out << (dir / "timing.csv").string() << '\n';
  for (const auto& p : write_timing_curves(records, dir)) out << p.string() << '\n';
  return kOk;
}

struct FitArgs {
  std::string data;
  std::string instances;
  std::string sideinfo;
  std::string method = "DSIL";
  double c = 1.0;
  double epsilon = 0.1;
  double tol = 1e-3;
  std::size_t max_passes = 10'000'000;
  std::string model;
};

int cmd_fit(const FitArgs& a, std::ostream& out) {
  fs::path inst = a.instances;
  fs::path side = a.sideinfo;
  if (!a.data.empty()) {
    if (inst.empty()) inst = fs::path(a.data) / "instances.csv";
    if (side.empty()) side = fs::path(a.data) / "sideinfo.csv";
  }
  if (inst.empty() || side.empty()) throw ValidationError("fit: give --data or both --instances and --sideinfo");
  SvrConfig svr{a.c, a.epsilon, a.tol, a.max_passes};
  svr.validate();
  const auto ds = load_dataset(inst, side);
  const auto model = ZeroShotRegressor::fit(ds, MethodVariant::from_name(a.method), svr);
  save_model(model, a.model);
  out << "fitted " << model.variant().name() << " on " << ds.rows() << " rows (a_x=" << ds.feature_dim()
      << ", a_s=" << ds.side_dim() << ") -> " << a.model << '\n';
  return kOk;
}

struct PredictArgs {
  std::string model;
  std::string instances;
  std::string sideinfo;
  std::string out;
};

int cmd_predict(const PredictArgs& a, std::ostream& out, std::ostream& err) {
  const auto model = load_model(a.model);
  const auto inst = load_instances(a.instances);
  const auto side = load_side_info(a.sideinfo);
  const auto pred = model.predict(inst.features, inst.targets, side);

  std::ofstream file;
  if (!a.out.empty()) {
    if (fs::path(a.out).has_parent_path()) fs::create_directories(fs::path(a.out).parent_path());
    file.open(a.out, std::ios::binary | std::ios::trunc);
    if (!file) throw DataError("cannot write " + a.out);
  }
  std::ostream& dst = a.out.empty() ? out : file;
  dst << "target,prediction\n";
  for (std::size_t i = 0; i < pred.size(); ++i) dst << inst.targets[i] << ',' << format_double(pred[i]) << '\n';
  if (!inst.labels.empty()) err << "mse=" << format_double(mean_squared_error(inst.labels, pred)) << '\n';
  return kOk;
}

struct StatsArgs {
  std::string scores;
  std::string out;
};

int cmd_stats(const StatsArgs& a, std::ostream& out) {
  const auto report = read_scores_csv(a.scores);
  if (!a.out.empty()) {
    fs::create_directories(a.out);
    write_stats_json(report, fs::path(a.out) / "stats.json");
    write_report_md(report, fs::path(a.out) / "report.md");
  }
  out << stats_json(report) << '\n';
  return kOk;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"zsk: zero-shot regression with side information"};
  app.require_subcommand(1);

  GenerateArgs gen;
  auto* g = app.add_subcommand("generate", "Generate a synthetic dataset (instances.csv, sideinfo.csv, meta.json)");
  g->add_option("--config", gen.config, "Generate every synthetic dataset of a config");
  g->add_option("--family", gen.family, "R or S")->capture_default_str();
  g->add_option("--targets", gen.targets, "Number of targets m_o")->capture_default_str();
  g->add_option("--sideinfo", gen.side_dim, "Side information size a_s")->capture_default_str();
  g->add_option("--instances", gen.instances, "Instances per target n_o")->capture_default_str();
  g->add_option("--features", gen.features, "Feature count a_x")->capture_default_str();
  g->add_option("--prototypes", gen.prototypes, "Prototype count (S family)")->capture_default_str();
  g->add_option("--seed", gen.seed, "Random seed (ZSK_SEED overrides)")->capture_default_str();
  g->add_option("--out", gen.out, "Output directory");

  BenchmarkArgs bench;
  auto* b = app.add_subcommand("benchmark", "Zero-shot CV benchmark; writes scores.csv, stats.json, report.md");
  b->add_option("--config", bench.config, "Experiment config (JSON)")->required();
  b->add_option("--out", bench.out, "Output directory (overrides the config)");
  b->add_option("--max-parallel", bench.max_parallel, "Concurrent cells (overrides the config)");
  b->add_flag("--verbose,-v", bench.verbose, "Log every finished cell");

  TimingArgs tim;
  auto* t = app.add_subcommand("timing", "Timing study over the feature/instance grid");
  t->add_option("--config", tim.config, "Experiment config with a timing section");
  t->add_option("--out", tim.out, "Output directory");
  t->add_option("--repeats", tim.repeats, "Measured repeats per cell")->capture_default_str()->check(CLI::PositiveNumber);
  t->add_option("--kernel-sample-pairs", tim.sample_pairs, "Estimate Gram cost from this many sampled pairs");
  t->add_flag("--kernel-only", tim.kernel_only, "Skip the fit+predict timing");
  t->add_option("--seed", tim.seed, "Random seed when no config is given")->capture_default_str();

  FitArgs fit;
  auto* f = app.add_subcommand("fit", "Fit one method and save the model");
  f->add_option("--data", fit.data, "Directory with instances.csv and sideinfo.csv");
  f->add_option("--instances", fit.instances, "Instance CSV");
  f->add_option("--sideinfo", fit.sideinfo, "Side-info CSV");
  f->add_option("--method", fit.method, "BL_L, BL_Q, SR_E, SR_M, MPLC, DSIL, DSIL_Phi, DSIL_KPhi, DSIL_KQ")
      ->capture_default_str();
  f->add_option("--c", fit.c, "SVR box bound C")->capture_default_str();
  f->add_option("--epsilon", fit.epsilon, "SVR tube half-width")->capture_default_str();
  f->add_option("--tol", fit.tol, "SMO stopping tolerance")->capture_default_str();
  f->add_option("--max-passes", fit.max_passes, "SMO iteration cap")->capture_default_str();
  f->add_option("--model", fit.model, "Output model file")->required();

  PredictArgs pred;
  auto* p = app.add_subcommand("predict", "Predict with a saved model; writes target,prediction");
  p->add_option("--model", pred.model, "Model file")->required();
  p->add_option("--instances", pred.instances, "Instance CSV (label column optional)")->required();
  p->add_option("--sideinfo", pred.sideinfo, "Side-info CSV covering every target")->required();
  p->add_option("--out", pred.out, "Output CSV (default: stdout)");

  StatsArgs st;
  auto* s = app.add_subcommand("stats", "Friedman ranks and Nemenyi test from an existing scores.csv");
  s->add_option("--scores", st.scores, "scores.csv")->required();
  s->add_option("--out", st.out, "Also write stats.json and report.md here");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kValidation;
  }

  try {
    if (*g) return cmd_generate(gen, out);
    if (*b) return cmd_benchmark(bench, out, err);
    if (*t) return cmd_timing(tim, out);
    if (*f) return cmd_fit(fit, out);
    if (*p) return cmd_predict(pred, out, err);
    if (*s) return cmd_stats(st, out);
  } catch (const ValidationError& e) {
    err << "error: " << e.what() << '\n';
    return kValidation;
  } catch (const DataError& e) {
    err << "error: " << e.what() << '\n';
    return kData;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kRuntime;
  }
  return kValidation;
}

}  // namespace zsk::cli
