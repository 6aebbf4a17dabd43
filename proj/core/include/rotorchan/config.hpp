#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <rotorchan/types.hpp>

namespace rotorchan {

// Run configuration, one struct per file section. Defaults reproduce the
// headline operating point (quantum N=60, alpha=2, b=0.1).
struct SystemConfig {
  std::string kind = "quantum";  // quantum | classical
  int n = 60;                    // quantum Hilbert dimension, even, >= 2
  int cutoff = 45;               // classical Fourier truncation, >= 1
  double alpha1 = 2.0;
  double alpha2 = 2.0;
  double b = 0.1;
};

struct SolverConfig {
  std::string backend = "auto";  // auto | dense | iterative
  int k = 10;                    // converged eigenvalues for the iterative path
  double tol = 1e-10;
  int max_restarts = 600;
  int subspace = 0;      // 0 picks the subspace size automatically
  int dense_limit = 4096;  // largest vectorized dimension auto may densify
};

struct GridConfig {
  int size = 200;
  std::string colormap = "gray";  // gray | viridis
};

struct ModesConfig {
  std::vector<int> indices = {1};  // spectrum positions to render, 0 = trivial
  bool overlay_ftse = false;
  bool left = false;  // render left modes instead of right
};

struct FtseConfig {
  int t = 8;
  double floor = 1e-15;
};

struct RangeConfig {
  double alpha_min = 0.0;
  double alpha_max = 10.0;
  int steps = 41;
};

struct CorrelationConfig {
  int t_max = 16;
  int m = 1;  // classical observable wave numbers
  int n = 0;
  int mp = 1;
  int np = 0;
};

struct MonteCarloConfig {
  int samples = 200;
  int grid = 64;
};

struct RadiiConfig {
  std::vector<int> n_list = {60, 75, 100};
};

struct RunSection {
  std::uint64_t seed = 1;
  int jobs = 1;
  std::string out = "out";
};

struct Config {
  SystemConfig system;
  SolverConfig solver;
  GridConfig grid;
  ModesConfig modes;
  FtseConfig ftse;
  RangeConfig sweep;
  RangeConfig submatrix{.steps = 21};
  CorrelationConfig correlations;
  MonteCarloConfig monte_carlo;
  RadiiConfig radii;
  RunSection run;
};

// Parses "[section]" / "key = value" text. Unknown keys are rejected with
// their full path; values are checked syntactically here and for range by
// validate_config.
Config parse_config_text(const std::string& text);
Config load_config(const std::string& path);

// Applies one "section.key=value" override.
void apply_override(Config& config, const std::string& assignment);

// Range validation; throws ConfigError naming the offending field.
void validate_config(const Config& config);

// Canonical dump: fixed section and key order, %.17g numbers. Parsing the
// dump reproduces the struct exactly (round-trip identity).
std::string serialize_config(const Config& config);

// Flattened (path, value) pairs of the canonical dump, for manifests.
std::vector<std::pair<std::string, std::string>> flatten_config(const Config& config);

}  // namespace rotorchan
