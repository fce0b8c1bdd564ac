#pragma once

#include <cstddef>
#include <filesystem>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "zsk/matrix.hpp"

namespace zsk {

/// Per-target side information. Target ids are opaque strings; all vectors
/// share one width and insertion order is preserved.
class SideInfoTable {
 public:
  SideInfoTable() = default;

  /// Throws DataError on a duplicate id, a width mismatch, an empty vector or a non-finite value.
  void add(std::string target_id, std::span<const double> values);

  [[nodiscard]] bool contains(const std::string& target_id) const;
  /// Throws DataError("unknown target id ...") when absent.
  [[nodiscard]] std::span<const double> at(const std::string& target_id) const;

  [[nodiscard]] std::size_t size() const noexcept { return ids_.size(); }
  [[nodiscard]] std::size_t dim() const noexcept { return values_.cols(); }
  [[nodiscard]] const std::vector<std::string>& ids() const noexcept { return ids_; }
  [[nodiscard]] const Matrix& values() const noexcept { return values_; }

  friend bool operator==(const SideInfoTable& a, const SideInfoTable& b) {
    return a.ids_ == b.ids_ && a.values_ == b.values_;
  }

 private:
  std::vector<std::string> ids_;
  Matrix values_;
  std::unordered_map<std::string, std::size_t> index_;
};

/// Rows of observed instances, each tagged with its target, plus the side
/// information of every referenced target. Validated on construction and
/// immutable afterwards.
class ZeroShotDataset {
 public:
  ZeroShotDataset(Matrix features, std::vector<std::string> targets, std::vector<double> labels,
                  SideInfoTable side_info);

  [[nodiscard]] std::size_t rows() const noexcept { return features_.rows(); }
  [[nodiscard]] std::size_t feature_dim() const noexcept { return features_.cols(); }
  [[nodiscard]] std::size_t side_dim() const noexcept { return side_info_.dim(); }

  [[nodiscard]] const Matrix& features() const noexcept { return features_; }
  [[nodiscard]] const std::vector<std::string>& targets() const noexcept { return targets_; }
  [[nodiscard]] const std::vector<double>& labels() const noexcept { return labels_; }
  [[nodiscard]] const SideInfoTable& side_info() const noexcept { return side_info_; }

  [[nodiscard]] std::span<const double> x(std::size_t row) const { return features_.row(row); }
  [[nodiscard]] std::span<const double> s(std::size_t row) const { return side_info_.at(targets_[row]); }

  /// Target ids in order of first appearance among the rows.
  [[nodiscard]] std::vector<std::string> target_order() const;

  /// Dataset restricted to the given rows (kept in the given order). The side
  /// information table keeps only the targets those rows reference.
  [[nodiscard]] ZeroShotDataset subset(std::span<const std::size_t> row_indices) const;

  friend bool operator==(const ZeroShotDataset&, const ZeroShotDataset&) = default;

 private:
  Matrix features_;
  std::vector<std::string> targets_;
  std::vector<double> labels_;
  SideInfoTable side_info_;
};

struct TargetSlice {
  std::string target_id;
  std::vector<std::size_t> rows;
};

/// Partitions the rows by target, targets in first-appearance order.
std::vector<TargetSlice> slice_by_target(const ZeroShotDataset& ds);

/// Reads an instance CSV (`target,x1..xN,y`) and a side-info CSV (`target,s1..sM`).
ZeroShotDataset load_dataset(const std::filesystem::path& instances_path,
                             const std::filesystem::path& sideinfo_path);

/// Side-info CSV only; used when predicting for targets without labelled rows.
SideInfoTable load_side_info(const std::filesystem::path& sideinfo_path);

/// Instance rows for prediction. The label column is optional here; when
/// absent the returned labels are empty.
struct UnlabelledInstances {
  Matrix features;
  std::vector<std::string> targets;
  std::vector<double> labels;
};
UnlabelledInstances load_instances(const std::filesystem::path& instances_path);

void write_instances_csv(const ZeroShotDataset& ds, const std::filesystem::path& path);
void write_side_info_csv(const SideInfoTable& table, const std::filesystem::path& path);

/// Writes `instances.csv` and `sideinfo.csv` into `dir` (created if missing).
void write_dataset(const ZeroShotDataset& ds, const std::filesystem::path& dir);

/// Shortest round-trip decimal form of a double; used by every CSV writer.
std::string format_double(double v);

}  // namespace zsk
