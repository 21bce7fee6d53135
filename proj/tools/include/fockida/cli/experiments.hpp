#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "fockida/cli/config.hpp"
#include "fockida/cli/table.hpp"
#include "fockida/ida.hpp"

namespace fockida::cli {

struct Check {
  std::string name;
  bool pass = false;
  std::string detail;
};

struct RunResult {
  ExperimentConfig config;
  Table table;
  std::vector<Check> checks;
  // Finite rows whose N-convergence delta exceeds config.delta_tolerance.
  std::vector<std::string> rejected;
  // Fields kept when config.export_fields is set, keyed by a file-name-safe label.
  std::vector<std::pair<std::string, OscillationField>> fields;

  bool pass() const;
  nlohmann::json summary() const;
};

// Columns of the CSV written for an experiment, in order.
std::vector<std::string> csv_columns(Experiment e);

// Computes every row and acceptance check; writes nothing.
RunResult run_experiment(const ExperimentConfig& config);

// run_experiment, then <output>.csv and <output>.json. Returns 0 when every check passes, 1 otherwise.
int run_and_write(const ExperimentConfig& config, std::ostream& log);

}  // namespace fockida::cli
