#pragma once

// Wall-clock scaling runs over generated instances.

#include <cstdint>
#include <string>
#include <vector>

#include "growelim/generate.hpp"
#include "growelim/verify.hpp"

namespace growelim {

struct BenchConfig {
  std::vector<Algorithm> algorithms;
  std::vector<std::size_t> sizes;
  std::size_t repeats = 3;
  GeneratorParams instance;  ///< n is taken from `sizes`
  int threads = 0;           ///< OpenMP threads for the run; 0 keeps the default
};

struct BenchRun {
  Algorithm algorithm = Algorithm::naive;
  std::size_t n = 0;
  double median_seconds = 0.0;
  std::vector<double> seconds;
  std::size_t nodes = 0;            ///< tree solvers only
  std::size_t candidate_pairs = 0;  ///< unordered, tree solvers only
  int depth = 0;
  double delta = 1.0;
  double phi_approx = 1.0;
  double alpha = 0.0;
};

struct BenchRatio {
  Algorithm algorithm = Algorithm::naive;
  std::size_t n = 0;  ///< ratio is time(2n) / time(n)
  double ratio = 0.0;
};

struct BenchReport {
  std::vector<BenchRun> runs;
  std::vector<BenchRatio> ratios;

  std::string json() const;
  std::string table() const;
};

/// Cells run one after another so that timings do not compete for cores.
BenchReport run_bench(const BenchConfig& config);

}  // namespace growelim
