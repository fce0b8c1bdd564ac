#pragma once

#include <unistd.h>

#include <filesystem>
#include <fstream>
#include <iterator>
#include <random>
#include <string>
#include <vector>

#include "zsk/dataset.hpp"
#include "zsk/matrix.hpp"

namespace zsk::test {

// Two targets s=0 and s=2, instances x=0 and x=2, y = (s+1)x + (s+1).
inline ZeroShotDataset toy_dataset() {
  SideInfoTable side;
  const double s1[] = {0.0};
  const double s2[] = {2.0};
  side.add("t1", s1);
  side.add("t2", s2);
  return ZeroShotDataset(Matrix::from_rows({{0.0}, {2.0}, {0.0}, {2.0}}), {"t1", "t1", "t2", "t2"},
                         {1.0, 3.0, 3.0, 9.0}, side);
}

inline std::vector<double> uniform_vector(std::mt19937_64& rng, std::size_t n, double lo, double hi) {
  std::uniform_real_distribution<double> u(lo, hi);
  std::vector<double> v(n);
  for (double& x : v) x = u(rng);
  return v;
}

inline Matrix uniform_matrix(std::mt19937_64& rng, std::size_t rows, std::size_t cols, double lo, double hi) {
  Matrix m(rows, cols);
  std::uniform_real_distribution<double> u(lo, hi);
  for (double& x : m.data()) x = u(rng);
  return m;
}

// Random dataset: `targets` targets with `per_target` rows each, labels
// from a random DSIL-representable function.
inline ZeroShotDataset random_dataset(std::mt19937_64& rng, std::size_t targets, std::size_t per_target,
                                      std::size_t a_x, std::size_t a_s) {
  SideInfoTable side;
  std::vector<std::string> ids;
  for (std::size_t t = 0; t < targets; ++t) {
    ids.push_back("T" + std::to_string(t));
    side.add(ids.back(), uniform_vector(rng, a_s, -2.0, 2.0));
  }
  Matrix x = uniform_matrix(rng, targets * per_target, a_x, -2.0, 2.0);
  const auto w = uniform_vector(rng, (a_x + 1) * (a_s + 1), -1.0, 1.0);
  std::vector<std::string> row_targets;
  std::vector<double> y;
  for (std::size_t r = 0; r < x.rows(); ++r) {
    const std::string& id = ids[r / per_target];
    row_targets.push_back(id);
    const auto s = side.at(id);
    double acc = 0.0;
    for (std::size_t j = 0; j <= a_s; ++j) {
      const double sj = j == 0 ? 1.0 : s[j - 1];
      for (std::size_t i = 0; i <= a_x; ++i) acc += w[j * (a_x + 1) + i] * sj * (i == 0 ? 1.0 : x(r, i - 1));
    }
    y.push_back(acc);
  }
  return ZeroShotDataset(std::move(x), std::move(row_targets), std::move(y), std::move(side));
}

struct TempDir {
  std::filesystem::path path;
  explicit TempDir(const std::string& tag) {
    static int counter = 0;
    path = std::filesystem::temp_directory_path() /
           ("zsk_test_" + tag + "_" + std::to_string(::getpid()) + "_" + std::to_string(counter++));
    std::filesystem::remove_all(path);
    std::filesystem::create_directories(path);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;
};

inline std::string read_file(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

}  // namespace zsk::test
