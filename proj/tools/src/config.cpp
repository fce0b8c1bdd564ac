#include "zsk_cli/config.hpp"

#include <charconv>
#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"
#include "zsk/error.hpp"

namespace zsk::cli {
namespace {

using nlohmann::json;

void reject_unknown(const json& obj, const std::set<std::string>& allowed, const std::string& where) {
  if (!obj.is_object()) throw ValidationError(where + ": expected a JSON object");
  for (const auto& [key, _] : obj.items()) {
    if (!allowed.count(key)) throw ValidationError(where + ": unknown key '" + key + "'");
  }
}

template <typename T>
T get(const json& obj, const std::string& key, const std::string& where) {
  try {
    return obj.at(key).get<T>();
  } catch (const json::exception& e) {
    throw ValidationError(where + "." + key + ": " + e.what());
  }
}

template <typename T>
void get_opt(const json& obj, const std::string& key, T& target, const std::string& where) {
  if (obj.contains(key)) target = get<T>(obj, key, where);
}

std::vector<MethodVariant> parse_methods(const json& arr, const std::string& where) {
  if (!arr.is_array()) throw ValidationError(where + ": expected an array of method names");
  std::vector<MethodVariant> methods;
  for (const auto& m : arr) {
    if (!m.is_string()) throw ValidationError(where + ": method names must be strings");
    methods.push_back(MethodVariant::from_name(m.get<std::string>()));
  }
  return methods;
}

SynthSpec parse_synth(const json& obj, const std::string& where, bool& explicit_seed) {
  reject_unknown(obj, {"family", "targets", "side_dim", "instances_per_target", "feature_dim", "prototypes", "seed"},
                 where);
  SynthSpec spec;
  spec.family = family_from_string(get<std::string>(obj, "family", where));
  spec.targets = get<std::size_t>(obj, "targets", where);
  spec.side_dim = get<std::size_t>(obj, "side_dim", where);
  get_opt(obj, "instances_per_target", spec.instances_per_target, where);
  get_opt(obj, "feature_dim", spec.feature_dim, where);
  get_opt(obj, "prototypes", spec.prototypes, where);
  explicit_seed = obj.contains("seed");
  get_opt(obj, "seed", spec.seed, where);
  spec.validate();
  return spec;
}

void parse_datasets(const json& arr, ExperimentConfig& cfg, const std::filesystem::path& base_dir) {
  if (!arr.is_array()) throw ValidationError("datasets: expected an array");
  for (std::size_t i = 0; i < arr.size(); ++i) {
    const auto& entry = arr[i];
    const std::string where = "datasets[" + std::to_string(i) + "]";
    if (entry.contains("suite")) {
      reject_unknown(entry, {"suite", "families", "instances_per_target", "feature_dim", "targets", "side_dims"}, where);
      if (get<std::string>(entry, "suite", where) != "synthetic") {
        throw ValidationError(where + ".suite: only \"synthetic\" is supported");
      }
      std::vector<Family> families{Family::R, Family::S};
      if (entry.contains("families")) {
        families.clear();
        for (const auto& f : get<std::vector<std::string>>(entry, "families", where)) {
          families.push_back(family_from_string(f));
        }
      }
      std::size_t n_o = 500;
      std::size_t a_x = 50;
      std::vector<std::size_t> targets{5, 10, 50, 100};
      std::vector<std::size_t> side_dims{5, 15, 25};
      get_opt(entry, "instances_per_target", n_o, where);
      get_opt(entry, "feature_dim", a_x, where);
      get_opt(entry, "targets", targets, where);
      get_opt(entry, "side_dims", side_dims, where);
      for (auto& spec : paper_suite(families, n_o, a_x, targets, side_dims)) {
        DatasetEntry d;
        d.name = spec.name();
        d.group = to_string(spec.family);
        d.synthetic = spec;
        cfg.datasets.push_back(std::move(d));
      }
      continue;
    }
    reject_unknown(entry, {"name", "group", "path", "synthetic"}, where);
    DatasetEntry d;
    if (entry.contains("synthetic") == entry.contains("path")) {
      throw ValidationError(where + ": give exactly one of \"path\" or \"synthetic\"");
    }
    if (entry.contains("synthetic")) {
      d.synthetic = parse_synth(entry.at("synthetic"), where + ".synthetic", d.explicit_seed);
      d.name = d.synthetic->name();
      d.group = to_string(d.synthetic->family);
    } else {
      d.path = get<std::string>(entry, "path", where);
      if (d.path.is_relative()) d.path = base_dir / d.path;
      d.name = d.path.filename().string();
      if (d.name.empty()) d.name = d.path.parent_path().filename().string();
    }
    get_opt(entry, "name", d.name, where);
    get_opt(entry, "group", d.group, where);
    cfg.datasets.push_back(std::move(d));
  }
}

void parse_timing(const json& obj, ExperimentConfig& cfg) {
  const std::string where = "timing";
  reject_unknown(obj,
                 {"repeats", "warmup", "include_fit", "kernel_sample_pairs", "c", "methods", "feature_dims",
                  "side_dims", "instances_per_target", "targets"},
                 where);
  auto& t = cfg.timing;
  get_opt(obj, "repeats", t.options.repeats, where);
  get_opt(obj, "warmup", t.options.warmup, where);
  get_opt(obj, "include_fit", t.options.include_fit, where);
  get_opt(obj, "kernel_sample_pairs", t.options.kernel_sample_pairs, where);
  get_opt(obj, "c", t.options.svr.c, where);
  if (obj.contains("methods")) t.methods = parse_methods(obj.at("methods"), where + ".methods");
  get_opt(obj, "feature_dims", t.grid.feature_dims, where);
  get_opt(obj, "side_dims", t.grid.side_dims, where);
  get_opt(obj, "instances_per_target", t.grid.instances_per_target, where);
  get_opt(obj, "targets", t.grid.targets, where);
}

}  // namespace

void ExperimentConfig::validate_for_benchmark() const {
  if (datasets.empty()) throw ValidationError("config: at least one dataset is required");
  if (methods.empty()) throw ValidationError("config: at least one method is required");
  if (folds < 2) throw ValidationError("config: folds must be >= 2");
  if (c_grid.empty()) throw ValidationError("config: c_grid must not be empty");
  for (double c : c_grid) {
    if (!(c > 0.0)) throw ValidationError("config: every C in c_grid must be positive");
  }
  svr.validate();
}

ExperimentConfig parse_config(const std::string& json_text, const std::filesystem::path& base_dir) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::exception& e) {
    throw ValidationError(std::string("config is not valid JSON: ") + e.what());
  }
  reject_unknown(doc,
                 {"datasets", "methods", "folds", "seed", "svr", "c_grid", "output_dir", "max_parallel_cells",
                  "timing"},
                 "config");
  if (!doc.contains("seed")) throw ValidationError("config: \"seed\" is mandatory");
  ExperimentConfig cfg;
  cfg.seed = get<std::uint64_t>(doc, "seed", "config");
  get_opt(doc, "folds", cfg.folds, "config");
  get_opt(doc, "c_grid", cfg.c_grid, "config");
  get_opt(doc, "max_parallel_cells", cfg.max_parallel_cells, "config");
  if (doc.contains("output_dir")) {
    cfg.output_dir = get<std::string>(doc, "output_dir", "config");
    if (cfg.output_dir.is_relative()) cfg.output_dir = base_dir / cfg.output_dir;
  } else {
    cfg.output_dir = base_dir / cfg.output_dir;
  }
  if (doc.contains("svr")) {
    const auto& s = doc.at("svr");
    reject_unknown(s, {"epsilon", "tol", "max_passes"}, "svr");
    get_opt(s, "epsilon", cfg.svr.epsilon, "svr");
    get_opt(s, "tol", cfg.svr.tol, "svr");
    get_opt(s, "max_passes", cfg.svr.max_passes, "svr");
    cfg.svr.validate();
  }
  if (doc.contains("methods")) cfg.methods = parse_methods(doc.at("methods"), "methods");
  if (doc.contains("datasets")) parse_datasets(doc.at("datasets"), cfg, base_dir);
  if (doc.contains("timing")) parse_timing(doc.at("timing"), cfg);
  cfg.timing.options.svr.epsilon = cfg.svr.epsilon;
  cfg.timing.options.svr.tol = cfg.svr.tol;
  cfg.timing.options.svr.max_passes = cfg.svr.max_passes;
  assign_dataset_seeds(cfg);
  return cfg;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open config " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str(), path.has_parent_path() ? path.parent_path() : std::filesystem::path("."));
}

std::uint64_t parse_seed(const std::string& text) {
  std::uint64_t v = 0;
  const auto* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, v);
  if (text.empty() || ec != std::errc() || ptr != end) {
    throw ValidationError("ZSK_SEED must be an unsigned integer, got '" + text + "'");
  }
  return v;
}

void apply_seed_override(ExperimentConfig& cfg, const char* env_value) {
  if (env_value == nullptr) return;
  cfg.seed = parse_seed(env_value);
  assign_dataset_seeds(cfg);
}

void assign_dataset_seeds(ExperimentConfig& cfg) {
  for (std::size_t i = 0; i < cfg.datasets.size(); ++i) {
    auto& d = cfg.datasets[i];
    if (d.synthetic && !d.explicit_seed) d.synthetic->seed = cfg.seed + i;
  }
  cfg.timing.grid.seed = cfg.seed;
}

std::vector<SynthSpec> paper_suite(const std::vector<Family>& families, std::size_t instances_per_target,
                                   std::size_t feature_dim, const std::vector<std::size_t>& targets,
                                   const std::vector<std::size_t>& side_dims) {
  std::vector<SynthSpec> specs;
  for (Family f : families) {
    for (std::size_t a_s : side_dims) {
      for (std::size_t m_o : targets) {
        SynthSpec s;
        s.family = f;
        s.targets = m_o;
        s.side_dim = a_s;
        s.instances_per_target = instances_per_target;
        s.feature_dim = feature_dim;
        s.validate();
        specs.push_back(s);
      }
    }
  }
  return specs;
}

std::vector<NamedDataset> materialise(const ExperimentConfig& cfg) {
  std::vector<NamedDataset> out;
  out.reserve(cfg.datasets.size());
  for (const auto& d : cfg.datasets) {
    if (d.synthetic) {
      out.push_back({d.name, generate(*d.synthetic), d.group});
    } else {
      out.push_back({d.name, load_dataset(d.path / "instances.csv", d.path / "sideinfo.csv"), d.group});
    }
  }
  return out;
}

}  // namespace zsk::cli
