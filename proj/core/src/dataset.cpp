#include "zsk/dataset.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <unordered_set>

#include "zsk/error.hpp"

namespace zsk {
namespace {

std::vector<std::string> split_csv_line(std::string line) {
  if (!line.empty() && line.back() == '\r') line.pop_back();
  std::vector<std::string> cells;
  std::string cell;
  std::istringstream in(line);
  while (std::getline(in, cell, ',')) cells.push_back(cell);
  if (!line.empty() && line.back() == ',') cells.emplace_back();
  return cells;
}

double parse_cell(const std::string& cell, const std::filesystem::path& path, std::size_t line_no) {
  double value = 0.0;
  const char* begin = cell.data();
  const char* end = cell.data() + cell.size();
  while (begin != end && *begin == ' ') ++begin;
  if (begin != end && *begin == '+') ++begin;
  auto [ptr, ec] = std::from_chars(begin, end, value);
  if (ec != std::errc() || ptr != end) {
    throw DataError(path.string() + ":" + std::to_string(line_no) + ": non-numeric cell '" + cell + "'");
  }
  if (!std::isfinite(value)) {
    throw DataError(path.string() + ":" + std::to_string(line_no) + ": non-finite value '" + cell + "'");
  }
  return value;
}

std::ifstream open_for_read(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open file: " + path.string());
  return in;
}

std::vector<std::string> read_header(std::ifstream& in, const std::filesystem::path& path) {
  std::string line;
  if (!std::getline(in, line)) throw DataError(path.string() + ": empty file");
  auto header = split_csv_line(line);
  if (header.size() < 2 || header.front() != "target") {
    throw DataError(path.string() + ": header must start with 'target' followed by value columns");
  }
  return header;
}

void expect_numbered_columns(const std::vector<std::string>& header, std::size_t first, std::size_t count,
                             char prefix, const std::filesystem::path& path) {
  for (std::size_t i = 0; i < count; ++i) {
    const std::string expected = std::string(1, prefix) + std::to_string(i + 1);
    if (header[first + i] != expected) {
      throw DataError(path.string() + ": schema mismatch, column " + std::to_string(first + i + 1) + " is '" +
                      header[first + i] + "', expected '" + expected + "'");
    }
  }
}

std::ofstream open_for_write(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw DataError("cannot write file: " + path.string());
  return out;
}

}  // namespace

std::string format_double(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, ptr);
}

// SideInfoTable

void SideInfoTable::add(std::string target_id, std::span<const double> values) {
  if (values.empty()) throw DataError("side information of target '" + target_id + "' is empty");
  if (index_.contains(target_id)) throw DataError("duplicate target id '" + target_id + "'");
  if (!ids_.empty() && values.size() != values_.cols()) {
    throw DataError("side information of target '" + target_id + "' has width " + std::to_string(values.size()) +
                    ", expected " + std::to_string(values_.cols()));
  }
  for (double v : values) {
    if (!std::isfinite(v)) throw DataError("non-finite side information for target '" + target_id + "'");
  }
  values_.append_row(values);
  index_.emplace(target_id, ids_.size());
  ids_.push_back(std::move(target_id));
}

bool SideInfoTable::contains(const std::string& target_id) const { return index_.contains(target_id); }

std::span<const double> SideInfoTable::at(const std::string& target_id) const {
  auto it = index_.find(target_id);
  if (it == index_.end()) throw DataError("unknown target id '" + target_id + "'");
  return values_.row(it->second);
}

// ZeroShotDataset

ZeroShotDataset::ZeroShotDataset(Matrix features, std::vector<std::string> targets, std::vector<double> labels,
                                 SideInfoTable side_info)
    : features_(std::move(features)),
      targets_(std::move(targets)),
      labels_(std::move(labels)),
      side_info_(std::move(side_info)) {
  if (features_.rows() == 0) throw DataError("dataset has no rows");
  if (features_.cols() == 0) throw DataError("dataset has no feature columns");
  if (targets_.size() != features_.rows() || labels_.size() != features_.rows()) {
    throw DataError("row count mismatch between features, targets and labels");
  }
  if (side_info_.size() == 0) throw DataError("side information table is empty");
  for (double v : features_.data()) {
    if (!std::isfinite(v)) throw DataError("non-finite feature value");
  }
  for (double v : labels_) {
    if (!std::isfinite(v)) throw DataError("non-finite label");
  }
  for (const auto& t : targets_) {
    if (!side_info_.contains(t)) throw DataError("unknown target id '" + t + "'");
  }
}

std::vector<std::string> ZeroShotDataset::target_order() const {
  std::vector<std::string> order;
  std::unordered_set<std::string> seen;
  for (const auto& t : targets_) {
    if (seen.insert(t).second) order.push_back(t);
  }
  return order;
}

ZeroShotDataset ZeroShotDataset::subset(std::span<const std::size_t> row_indices) const {
  std::vector<std::string> targets;
  std::vector<double> labels;
  targets.reserve(row_indices.size());
  labels.reserve(row_indices.size());
  SideInfoTable table;
  for (std::size_t r : row_indices) {
    if (r >= rows()) throw DataError("row index out of range: " + std::to_string(r));
    targets.push_back(targets_[r]);
    labels.push_back(labels_[r]);
    if (!table.contains(targets_[r])) table.add(targets_[r], side_info_.at(targets_[r]));
  }
  return ZeroShotDataset(features_.select_rows(row_indices), std::move(targets), std::move(labels),
                         std::move(table));
}

std::vector<TargetSlice> slice_by_target(const ZeroShotDataset& ds) {
  std::vector<TargetSlice> slices;
  std::unordered_map<std::string, std::size_t> position;
  for (std::size_t r = 0; r < ds.rows(); ++r) {
    const auto& t = ds.targets()[r];
    auto [it, inserted] = position.emplace(t, slices.size());
    if (inserted) slices.push_back({t, {}});
    slices[it->second].rows.push_back(r);
  }
  return slices;
}

// CSV I/O

SideInfoTable load_side_info(const std::filesystem::path& sideinfo_path) {
  auto in = open_for_read(sideinfo_path);
  const auto header = read_header(in, sideinfo_path);
  const std::size_t width = header.size() - 1;
  expect_numbered_columns(header, 1, width, 's', sideinfo_path);

  SideInfoTable table;
  std::string line;
  std::size_t line_no = 1;
  std::vector<double> values(width);
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line == "\r") continue;
    const auto cells = split_csv_line(line);
    if (cells.size() != header.size()) {
      throw DataError(sideinfo_path.string() + ":" + std::to_string(line_no) + ": expected " +
                      std::to_string(header.size()) + " cells, got " + std::to_string(cells.size()));
    }
    for (std::size_t j = 0; j < width; ++j) values[j] = parse_cell(cells[j + 1], sideinfo_path, line_no);
    table.add(cells[0], values);
  }
  if (table.size() == 0) throw DataError(sideinfo_path.string() + ": no side information rows");
  return table;
}

UnlabelledInstances load_instances(const std::filesystem::path& instances_path) {
  auto in = open_for_read(instances_path);
  const auto header = read_header(in, instances_path);
  const bool has_label = header.back() == "y";
  const std::size_t width = header.size() - 1 - (has_label ? 1 : 0);
  if (width == 0) throw DataError(instances_path.string() + ": no feature columns");
  expect_numbered_columns(header, 1, width, 'x', instances_path);

  UnlabelledInstances out;
  std::string line;
  std::size_t line_no = 1;
  std::vector<double> values(width);
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line == "\r") continue;
    const auto cells = split_csv_line(line);
    if (cells.size() != header.size()) {
      throw DataError(instances_path.string() + ":" + std::to_string(line_no) + ": expected " +
                      std::to_string(header.size()) + " cells, got " + std::to_string(cells.size()));
    }
    for (std::size_t j = 0; j < width; ++j) values[j] = parse_cell(cells[j + 1], instances_path, line_no);
    out.features.append_row(values);
    out.targets.push_back(cells[0]);
    if (has_label) out.labels.push_back(parse_cell(cells.back(), instances_path, line_no));
  }
  if (out.targets.empty()) throw DataError(instances_path.string() + ": no instance rows");
  return out;
}

ZeroShotDataset load_dataset(const std::filesystem::path& instances_path,
                             const std::filesystem::path& sideinfo_path) {
  auto instances = load_instances(instances_path);
  if (instances.labels.empty()) {
    throw DataError(instances_path.string() + ": schema mismatch, last column must be 'y'");
  }
  auto side_info = load_side_info(sideinfo_path);
  return ZeroShotDataset(std::move(instances.features), std::move(instances.targets),
                         std::move(instances.labels), std::move(side_info));
}

void write_instances_csv(const ZeroShotDataset& ds, const std::filesystem::path& path) {
  auto out = open_for_write(path);
  out << "target";
  for (std::size_t j = 0; j < ds.feature_dim(); ++j) out << ",x" << (j + 1);
  out << ",y\n";
  for (std::size_t r = 0; r < ds.rows(); ++r) {
    out << ds.targets()[r];
    for (double v : ds.x(r)) out << ',' << format_double(v);
    out << ',' << format_double(ds.labels()[r]) << '\n';
  }
  if (!out) throw DataError("failed writing " + path.string());
}

void write_side_info_csv(const SideInfoTable& table, const std::filesystem::path& path) {
  auto out = open_for_write(path);
  out << "target";
  for (std::size_t j = 0; j < table.dim(); ++j) out << ",s" << (j + 1);
  out << '\n';
  for (std::size_t i = 0; i < table.size(); ++i) {
    out << table.ids()[i];
    for (double v : table.values().row(i)) out << ',' << format_double(v);
    out << '\n';
  }
  if (!out) throw DataError("failed writing " + path.string());
}

void write_dataset(const ZeroShotDataset& ds, const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  write_instances_csv(ds, dir / "instances.csv");
  write_side_info_csv(ds.side_info(), dir / "sideinfo.csv");
}

}  // namespace zsk
