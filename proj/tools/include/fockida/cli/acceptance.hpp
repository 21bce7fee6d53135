#pragma once

#include <string>
#include <vector>

namespace fockida::cli {

struct CriterionResult {
  int id = 0;
  std::string title;
  bool pass = false;
  std::string detail;
  double seconds = 0.0;
};

int criterion_count();
std::string criterion_title(int id);

// Runs one acceptance criterion (1-based); numerical errors are reported as failures.
CriterionResult run_criterion(int id);

}  // namespace fockida::cli
