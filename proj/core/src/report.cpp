#include "zsk/report.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <map>
#include <set>
#include <sstream>
#include <tuple>

#include "json.hpp"
#include "zsk/dataset.hpp"
#include "zsk/error.hpp"

namespace zsk {
namespace {

std::ofstream open_out(const std::filesystem::path& path) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw DataError("cannot write " + path.string());
  return out;
}

std::string fmt_number(double v) { return std::isnan(v) ? "nan" : format_double(v); }

std::string fmt_score(double v) {
  std::ostringstream os;
  if (v != 0.0 && (std::abs(v) < 0.01 || std::abs(v) >= 1e6)) {
    os << std::uppercase << std::scientific << std::setprecision(2) << v;
  } else {
    os << std::fixed << std::setprecision(2) << v;
  }
  return os.str();
}

std::string fmt_rank(double r) {
  std::ostringstream os;
  if (r == std::floor(r)) {
    os << static_cast<long long>(r);
  } else {
    os << std::setprecision(3) << r;
  }
  return os.str();
}

std::string fmt_avg(double r) {
  std::ostringstream os;
  os << std::fixed << std::setprecision(2) << r;
  return os.str();
}

const char* alpha_label(Alpha a) {
  switch (a) {
    case Alpha::P01: return "0.01";
    case Alpha::P05: return "0.05";
    case Alpha::P10: return "0.10";
  }
  return "?";
}

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> cells;
  std::string cell;
  std::istringstream in(line);
  while (std::getline(in, cell, ',')) cells.push_back(cell);
  return cells;
}

}  // namespace

std::string infer_group(const std::string& dataset_name) {
  const auto dash = dataset_name.find('-');
  if (dash != std::string::npos && dash > 0) return dataset_name.substr(0, dash);
  return "all";
}

void write_scores_csv(const BenchmarkReport& report, const std::filesystem::path& path) {
  auto out = open_out(path);
  out << "dataset,method,rel_mse,rank\n";
  for (std::size_t d = 0; d < report.datasets.size(); ++d) {
    for (std::size_t m = 0; m < report.methods.size(); ++m) {
      const auto& cell = report.cells[d][m];
      out << report.datasets[d] << ',' << report.methods[m] << ','
          << (cell.rel_mse ? format_double(*cell.rel_mse) : std::string("nan")) << ','
          << fmt_number(report.ranks(d, m)) << '\n';
    }
  }
}

BenchmarkReport read_scores_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open " + path.string());
  std::string line;
  if (!std::getline(in, line) || split(line) != std::vector<std::string>{"dataset", "method", "rel_mse", "rank"}) {
    throw DataError(path.string() + ": expected header dataset,method,rel_mse,rank");
  }
  BenchmarkReport report;
  std::map<std::pair<std::size_t, std::size_t>, std::optional<double>> values;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto cells = split(line);
    if (cells.size() < 3) throw DataError(path.string() + ":" + std::to_string(line_no) + ": too few columns");
    auto index_of = [](std::vector<std::string>& v, const std::string& s) {
      auto it = std::find(v.begin(), v.end(), s);
      if (it != v.end()) return static_cast<std::size_t>(it - v.begin());
      v.push_back(s);
      return v.size() - 1;
    };
    const std::size_t d = index_of(report.datasets, cells[0]);
    const std::size_t m = index_of(report.methods, cells[1]);
    std::optional<double> v;
    if (cells[2] != "nan" && !cells[2].empty()) {
      try {
        std::size_t used = 0;
        v = std::stod(cells[2], &used);
        if (used != cells[2].size()) throw std::invalid_argument("trailing");
      } catch (const std::exception&) {
        throw DataError(path.string() + ":" + std::to_string(line_no) + ": bad rel_mse '" + cells[2] + "'");
      }
    }
    values[{d, m}] = v;
  }
  if (report.datasets.empty()) throw DataError(path.string() + ": no scores");
  report.cells.assign(report.datasets.size(), std::vector<BenchmarkCell>(report.methods.size()));
  for (const auto& [key, v] : values) report.cells[key.first][key.second].rel_mse = v;
  for (const auto& d : report.datasets) report.groups.push_back(infer_group(d));
  compute_statistics(report);
  return report;
}

std::string stats_json(const BenchmarkReport& report) {
  using nlohmann::ordered_json;
  auto ranks_obj = [&](const GroupStatistics& g) {
    ordered_json o = ordered_json::object();
    for (std::size_t m = 0; m < report.methods.size(); ++m) {
      o[report.methods[m]] = std::isnan(g.average_ranks[m]) ? ordered_json(nullptr) : ordered_json(g.average_ranks[m]);
    }
    return o;
  };
  ordered_json doc;
  doc["methods"] = report.methods;
  doc["datasets"] = report.datasets;
  doc["rel_mse_definition"] = kRelativeMseDefinition;
  doc["average_ranks"] = ranks_obj(report.overall);
  doc["datasets_ranked"] = report.overall.dataset_indices.size();
  ordered_json groups = ordered_json::object();
  for (const auto& g : report.group_stats) {
    groups[g.group] = {{"average_ranks", ranks_obj(g)}, {"datasets_ranked", g.dataset_indices.size()}};
  }
  doc["groups"] = groups;
  ordered_json cds = ordered_json::object();
  for (const auto& cd : report.critical_differences) cds[alpha_label(cd.alpha)] = cd.value;
  doc["nemenyi_critical_difference"] = cds;
  ordered_json pairs = ordered_json::array();
  for (std::size_t a = 0; a < report.significant_at_05.size(); ++a) {
    for (std::size_t b = a + 1; b < report.significant_at_05.size(); ++b) {
      pairs.push_back({{"a", report.methods[a]},
                       {"b", report.methods[b]},
                       {"rank_difference", std::abs(report.overall.average_ranks[a] - report.overall.average_ranks[b])},
                       {"significant_at_0.05", static_cast<bool>(report.significant_at_05[a][b])}});
    }
  }
  doc["pairwise"] = pairs;
  ordered_json failures = ordered_json::array();
  for (std::size_t d = 0; d < report.datasets.size(); ++d) {
    for (std::size_t m = 0; m < report.methods.size(); ++m) {
      const auto& cell = report.cells[d][m];
      if (!cell.rel_mse) {
        failures.push_back({{"dataset", report.datasets[d]}, {"method", report.methods[m]}, {"error", cell.error}});
      }
    }
  }
  doc["failed_cells"] = failures;
  if (!report.note.empty()) doc["note"] = report.note;
  return doc.dump(2);
}

void write_stats_json(const BenchmarkReport& report, const std::filesystem::path& path) {
  auto out = open_out(path);
  out << stats_json(report) << '\n';
}

std::string report_markdown(const BenchmarkReport& report) {
  std::ostringstream md;
  md << "# Zero-shot regression benchmark\n\n";
  md << "Mean relative squared error and Friedman ranks (in parentheses, 1 = best).\n\n";
  auto header = [&] {
    md << "| Dataset |";
    for (const auto& m : report.methods) md << ' ' << m << " |";
    md << "\n|---|";
    for (std::size_t m = 0; m < report.methods.size(); ++m) md << "---:|";
    md << '\n';
  };
  auto avg_row = [&](const char* label, const GroupStatistics& g) {
    md << "| " << label << " |";
    for (double r : g.average_ranks) md << " (" << (std::isnan(r) ? std::string("n/a") : fmt_avg(r)) << ") |";
    md << '\n';
  };
  for (const auto& g : report.group_stats) {
    md << "## " << (g.group == "all" ? std::string("Datasets") : g.group + " datasets") << "\n\n";
    header();
    for (std::size_t d = 0; d < report.datasets.size(); ++d) {
      if (report.groups[d] != g.group) continue;
      md << "| " << report.datasets[d] << " |";
      for (std::size_t m = 0; m < report.methods.size(); ++m) {
        const auto& cell = report.cells[d][m];
        if (!cell.rel_mse) {
          md << " failed |";
          continue;
        }
        const bool best = !std::isnan(report.ranks(d, m)) && report.ranks(d, m) <= 1.5 &&
                          report.ranks(d, m) == *std::min_element(report.ranks.row(d).begin(), report.ranks.row(d).end());
        md << ' ' << (best ? "**" : "") << fmt_score(*cell.rel_mse) << (best ? "**" : "");
        if (!std::isnan(report.ranks(d, m))) md << '(' << fmt_rank(report.ranks(d, m)) << ')';
        md << " |";
      }
      md << '\n';
    }
    avg_row("Avg. Rank", g);
    md << '\n';
  }
  if (report.group_stats.size() > 1) {
    md << "## Overall\n\n";
    header();
    avg_row("Mean Rank", report.overall);
    md << '\n';
  }
  md << "## Statistics\n\n";
  if (!report.note.empty()) md << "Note: " << report.note << ".\n\n";
  if (!report.critical_differences.empty()) {
    md << "Nemenyi critical differences over " << report.overall.dataset_indices.size() << " datasets and "
       << report.methods.size() << " methods:";
    for (const auto& cd : report.critical_differences) md << " alpha=" << alpha_label(cd.alpha) << ": " << fmt_avg(cd.value) << ';';
    md << "\n\n";
    bool any = false;
    for (std::size_t a = 0; a < report.significant_at_05.size(); ++a) {
      for (std::size_t b = a + 1; b < report.significant_at_05.size(); ++b) {
        if (report.significant_at_05[a][b]) {
          if (!any) md << "Significantly different at alpha=0.05:\n\n";
          any = true;
          md << "- " << report.methods[a] << " vs " << report.methods[b] << '\n';
        }
      }
    }
    if (!any) md << "No pair differs significantly at alpha=0.05.\n";
    md << '\n';
  }
  md << "Score definition: " << kRelativeMseDefinition << ".\n";
  return md.str();
}

void write_report_md(const BenchmarkReport& report, const std::filesystem::path& path) {
  auto out = open_out(path);
  out << report_markdown(report);
}

void write_timing_csv(const std::vector<TimingRecord>& records, const std::filesystem::path& path) {
  auto out = open_out(path);
  out << "method,ax_plus_as,no_times_mo,seconds_median,kernel_seconds_median\n";
  for (const auto& r : records) {
    out << r.method << ',' << r.joint_features << ',' << r.instances << ','
        << (r.seconds.empty() ? std::string("nan") : format_double(r.seconds_median)) << ','
        << format_double(r.kernel_seconds_median) << '\n';
  }
}

std::vector<std::filesystem::path> write_timing_curves(const std::vector<TimingRecord>& records,
                                                       const std::filesystem::path& dir) {
  std::vector<std::string> methods;
  std::set<std::size_t> features;
  std::set<std::size_t> instances;
  std::map<std::tuple<std::string, std::size_t, std::size_t>, double> value;
  for (const auto& r : records) {
    if (std::find(methods.begin(), methods.end(), r.method) == methods.end()) methods.push_back(r.method);
    features.insert(r.joint_features);
    instances.insert(r.instances);
    value[{r.method, r.joint_features, r.instances}] = r.seconds.empty() ? r.kernel_seconds_median : r.seconds_median;
  }
  std::filesystem::create_directories(dir);
  std::vector<std::filesystem::path> written;
  auto emit = [&](const std::filesystem::path& path, const char* axis, const std::set<std::size_t>& xs, auto key) {
    auto out = open_out(path);
    out << axis;
    for (const auto& m : methods) out << ',' << m;
    out << '\n';
    for (std::size_t x : xs) {
      out << x;
      for (const auto& m : methods) {
        auto it = value.find(key(m, x));
        out << ',' << (it == value.end() ? std::string("nan") : format_double(it->second));
      }
      out << '\n';
    }
    written.push_back(path);
  };
  for (std::size_t f : features) {
    emit(dir / ("time_vs_instances_f" + std::to_string(f) + ".csv"), "no_times_mo", instances,
         [f](const std::string& m, std::size_t n) { return std::make_tuple(m, f, n); });
  }
  for (std::size_t n : instances) {
    emit(dir / ("time_vs_features_n" + std::to_string(n) + ".csv"), "ax_plus_as", features,
         [n](const std::string& m, std::size_t f) { return std::make_tuple(m, f, n); });
  }
  return written;
}

}  // namespace zsk
