#include <cstdio>
#include <iostream>
#include <optional>

#include <CLI11.hpp>

#include "fockida/cli/acceptance.hpp"
#include "fockida/cli/catalog.hpp"
#include "fockida/cli/config.hpp"
#include "fockida/cli/experiments.hpp"
#include "fockida/error.hpp"
#include "fockida/parallel.hpp"

namespace {

constexpr int kExitFail = 1;
constexpr int kExitUsage = 2;

struct Overrides {
  std::optional<std::string> experiment;
  std::optional<int> n;
  std::optional<double> grid_radius;
  std::optional<std::vector<double>> r;
  std::optional<int> d;
  std::optional<std::vector<double>> p;
  std::optional<std::vector<std::string>> symbols;
  std::optional<std::string> output;
  std::optional<std::uint64_t> seed;
  std::optional<double> alpha;
  std::optional<double> psi_amplitude;
  std::optional<double> delta_tolerance;
  std::optional<double> tail_tolerance;
  bool export_fields = false;
};

fockida::cli::ExperimentConfig make_config(const std::string& path, const Overrides& o) {
  using namespace fockida::cli;
  if (path.empty() && !o.experiment) throw fockida::InvalidInput("run: give a config file or --experiment");
  ExperimentConfig c = path.empty() ? default_config(parse_experiment(*o.experiment)) : load_config(path);
  if (o.experiment && !path.empty()) c.experiment = parse_experiment(*o.experiment);
  if (o.n) c.n = *o.n;
  if (o.grid_radius) c.grid_radius = *o.grid_radius;
  if (o.r) c.r = *o.r;
  if (o.d) c.d = *o.d;
  if (o.p) c.p = *o.p;
  if (o.symbols) c.symbols = *o.symbols;
  if (o.output) c.output = *o.output;
  if (o.seed) c.seed = *o.seed;
  if (o.alpha) c.alpha = *o.alpha;
  if (o.psi_amplitude) c.psi_amplitude = *o.psi_amplitude;
  if (o.delta_tolerance) c.delta_tolerance = *o.delta_tolerance;
  if (o.tail_tolerance) c.tail_tolerance = *o.tail_tolerance;
  if (o.export_fields) c.export_fields = true;
  c.validate();
  return c;
}

int print_catalog(std::uint64_t seed) {
  std::printf("%-28s %-20s %s\n", "symbol", "growth", "expected Hankel behaviour");
  for (const auto& s : fockida::cli::catalog(seed))
    std::printf("%-28s %-20s %s\n", s.name.c_str(), fockida::to_string(s.growth).c_str(), s.expectation.c_str());
  return 0;
}

int run_checks(const std::vector<int>& ids) {
  bool all = true;
  for (int id : ids) {
    const auto r = fockida::cli::run_criterion(id);
    std::printf("criterion %2d %s  %s (%.1f s): %s\n", r.id, r.pass ? "PASS" : "FAIL", r.title.c_str(), r.seconds,
                r.detail.c_str());
    std::fflush(stdout);
    all = all && r.pass;
  }
  return all ? 0 : kExitFail;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"fockida: Hankel and Toeplitz operators on weighted Fock spaces"};
  app.require_subcommand(1);

  std::string config_path;
  Overrides o;
  auto* run = app.add_subcommand("run", "run an experiment and write <output>.csv and <output>.json");
  run->add_option("config", config_path, "JSON experiment configuration");
  run->add_option("--experiment", o.experiment, "E1-equivalence ... E6-toeplitz (or E1 ... E6)");
  run->add_option("--N", o.n, "truncation order");
  run->add_option("--grid-radius", o.grid_radius, "radius of the integration disk");
  run->add_option("--r", o.r, "IDA radii");
  run->add_option("--d", o.d, "local polynomial degree");
  run->add_option("--p", o.p, "exponents");
  run->add_option("--symbols", o.symbols, "symbol specifications");
  run->add_option("--output", o.output, "output prefix");
  run->add_option("--seed", o.seed, "seed for symbols written as plain 'random'");
  run->add_option("--alpha", o.alpha, "weight parameter alpha");
  run->add_option("--psi-amplitude", o.psi_amplitude, "radial perturbation a cos|z| of the weight");
  run->add_option("--delta-tolerance", o.delta_tolerance, "N-convergence tolerance for row rejection");
  run->add_option("--tail-tolerance", o.tail_tolerance, "divergence threshold of the annulus tail test");
  run->add_flag("--export-fields", o.export_fields, "E1: write every field as <output>.<name>.csv");

  std::uint64_t catalog_seed = 7;
  auto* cat = app.add_subcommand("catalog", "list the symbol catalog");
  cat->add_option("--seed", catalog_seed, "seed of the random field");

  std::vector<int> criteria;
  auto* check = app.add_subcommand("check", "run the acceptance suite");
  check->add_option("--criterion", criteria, "run only these criteria")
      ->check(CLI::Range(1, fockida::cli::criterion_count()));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    if (*cat) return print_catalog(catalog_seed);
    if (*check) {
      if (criteria.empty())
        for (int i = 1; i <= fockida::cli::criterion_count(); ++i) criteria.push_back(i);
      std::printf("workers: %d\n", fockida::worker_count());
      return run_checks(criteria);
    }
    fockida::cli::ExperimentConfig config;
    try {
      config = make_config(config_path, o);
    } catch (const fockida::InvalidInput& e) {
      std::cerr << "usage error: " << e.what() << '\n';
      return kExitUsage;
    }
    try {
      return fockida::cli::run_and_write(config, std::cout);
    } catch (const fockida::InvalidInput& e) {
      std::cerr << "usage error: " << e.what() << '\n';
      return kExitUsage;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitFail;
  }
}
