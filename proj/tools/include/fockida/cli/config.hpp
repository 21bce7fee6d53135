#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "fockida/space.hpp"

namespace fockida::cli {

enum class Experiment { Equivalence, BergerCoburn, HsIdentity, Compactness, Beurling, Toeplitz };

std::string to_string(Experiment e);
Experiment parse_experiment(const std::string& id);

// Polar center grid used to integrate fields over |z| <= grid_radius.
struct CenterGridSpec {
  int angular = 64;
  double panel_width = 1.0;
  int panel_order = 8;
};

struct ExperimentConfig {
  Experiment experiment = Experiment::Equivalence;
  double alpha = 1.0;
  double psi_amplitude = 0.0;  // phi = (alpha/2)|z|^2 + a cos|z|
  int n = 60;
  double grid_radius = 8.0;
  std::vector<double> r = {0.5, 1.0};
  int d = 10;
  std::vector<double> p;
  std::vector<std::string> symbols;
  std::string output = "fockida-out";  // writes <output>.csv and <output>.json
  std::uint64_t seed = 7;
  double delta_tolerance = 0.05;
  double tail_tolerance = 1e-2;  // divergence: outer-annulus max above this fraction of the field max
  bool export_fields = false;    // E1: also write each field as <output>.<name>.csv
  CenterGridSpec centers;
  int beurling_points = 512;
  double beurling_half_width = 8.0;

  Weight weight() const;
  // Throws InvalidInput when a field is outside its documented range.
  void validate() const;
  nlohmann::json to_json() const;
};

// Experiment-specific defaults for p and the symbol list.
ExperimentConfig default_config(Experiment e);

// Unknown keys and out-of-range values raise InvalidInput.
ExperimentConfig config_from_json(const nlohmann::json& j);
ExperimentConfig load_config(const std::string& path);

}  // namespace fockida::cli
