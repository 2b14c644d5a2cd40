#pragma once

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>

#include "biped5/types.hpp"

namespace test {

inline biped5::Vec5 random_vec(std::mt19937_64& rng, double lo, double hi) {
  std::uniform_real_distribution<double> d(lo, hi);
  biped5::Vec5 v;
  for (int i = 0; i < 5; ++i) v[i] = d(rng);
  return v;
}

inline biped5::Vec5 unit(int i) {
  biped5::Vec5 v = biped5::Vec5::Zero();
  v[i] = 1.0;
  return v;
}

inline double max_abs(const Eigen::MatrixXd& m) { return m.cwiseAbs().maxCoeff(); }

// Per-test scratch directory, wiped on creation.
inline std::filesystem::path scratch_dir(const std::string& name) {
  const char* base = std::getenv("BIPED5_TEST_TMP");
  std::filesystem::path dir =
      base ? std::filesystem::path(base) : std::filesystem::temp_directory_path() / "biped5_tests";
  dir /= name;
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

inline std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace test
