#include "fockida/cli/config.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <set>

#include "fockida/error.hpp"

namespace fockida::cli {
namespace {

const std::vector<std::pair<Experiment, std::string>>& experiment_ids() {
  static const std::vector<std::pair<Experiment, std::string>> ids = {
      {Experiment::Equivalence, "E1-equivalence"}, {Experiment::BergerCoburn, "E2-berger-coburn"},
      {Experiment::HsIdentity, "E3-hs-identity"},  {Experiment::Compactness, "E4-compactness"},
      {Experiment::Beurling, "E5-beurling"},       {Experiment::Toeplitz, "E6-toeplitz"},
  };
  return ids;
}

void require(bool ok, const std::string& what) {
  if (!ok) throw InvalidInput("config: " + what);
}

double p_from_json(const nlohmann::json& v) {
  if (v.is_string()) {
    const std::string s = v.get<std::string>();
    if (s == "inf" || s == "infinity") return std::numeric_limits<double>::infinity();
    throw InvalidInput("config: p must be a number or \"inf\"");
  }
  if (!v.is_number()) throw InvalidInput("config: p must be a number or \"inf\"");
  return v.get<double>();
}

nlohmann::json p_to_json(double p) {
  if (std::isinf(p)) return "inf";
  return p;
}

}  // namespace

std::string to_string(Experiment e) {
  for (const auto& [k, id] : experiment_ids())
    if (k == e) return id;
  return "unknown";
}

Experiment parse_experiment(const std::string& id) {
  for (const auto& [k, name] : experiment_ids())
    if (name == id || name.substr(0, 2) == id) return k;
  throw InvalidInput("config: unknown experiment '" + id + "'");
}

Weight ExperimentConfig::weight() const {
  if (psi_amplitude == 0.0) return Weight::standard(alpha);
  const double a = psi_amplitude;
  // Laplacian of a cos(rho) stays within [-2|a|, 2|a|].
  return Weight::radial_perturbed(
      alpha, [a](double rho) { return a * std::cos(rho); }, 2.0 * alpha - 2.0 * std::abs(a),
      2.0 * alpha + 2.0 * std::abs(a));
}

void ExperimentConfig::validate() const {
  require(alpha > 0.0 && alpha <= 10.0, "weight.alpha must lie in (0, 10]");
  require(std::abs(psi_amplitude) < alpha, "weight.psi_amplitude must satisfy |a| < alpha");
  require(n >= 20 && n <= 200, "N must lie in [20, 200]");
  require(grid_radius > 0.0 && grid_radius <= 12.0, "grid_radius must lie in (0, 12]");
  require(!r.empty(), "r must not be empty");
  for (double v : r) require(v > 0.0 && v <= 4.0, "r values must lie in (0, 4]");
  require(d >= 0 && d <= 30, "d must lie in [0, 30]");
  require(!p.empty(), "p must not be empty");
  for (double v : p) require(v > 0.0, "p values must be positive");
  require(!symbols.empty(), "symbol list is empty");
  require(!output.empty(), "output must not be empty");
  require(delta_tolerance > 0.0 && delta_tolerance <= 1.0, "delta_tolerance must lie in (0, 1]");
  require(tail_tolerance > 0.0 && tail_tolerance < 1.0, "tail_tolerance must lie in (0, 1)");
  require(centers.angular >= 8 && centers.angular <= 512, "centers.angular must lie in [8, 512]");
  require(centers.panel_width > 0.0 && centers.panel_width <= 2.0, "centers.panel_width must lie in (0, 2]");
  require(centers.panel_order >= 2 && centers.panel_order <= 32, "centers.panel_order must lie in [2, 32]");
  const int bp = beurling_points;
  require(bp >= 64 && bp <= 2048 && (bp & (bp - 1)) == 0, "beurling.points must be a power of two in [64, 2048]");
  require(beurling_half_width > 0.0 && beurling_half_width <= 64.0, "beurling.half_width must lie in (0, 64]");
  const bool needs_standard = experiment == Experiment::HsIdentity || experiment == Experiment::Compactness;
  require(!needs_standard || psi_amplitude == 0.0, to_string(experiment) + " needs the standard weight");
}

nlohmann::json ExperimentConfig::to_json() const {
  nlohmann::json j;
  j["experiment"] = to_string(experiment);
  j["weight"] = {{"alpha", alpha}, {"psi_amplitude", psi_amplitude}};
  j["N"] = n;
  j["grid_radius"] = grid_radius;
  j["r"] = r;
  j["d"] = d;
  nlohmann::json ps = nlohmann::json::array();
  for (double v : p) ps.push_back(p_to_json(v));
  j["p"] = ps;
  j["symbols"] = symbols;
  j["output"] = output;
  j["seed"] = seed;
  j["delta_tolerance"] = delta_tolerance;
  j["tail_tolerance"] = tail_tolerance;
  j["export_fields"] = export_fields;
  j["centers"] = {{"angular", centers.angular},
                  {"panel_width", centers.panel_width},
                  {"panel_order", centers.panel_order}};
  j["beurling"] = {{"points", beurling_points}, {"half_width", beurling_half_width}};
  return j;
}

ExperimentConfig default_config(Experiment e) {
  ExperimentConfig c;
  c.experiment = e;
  switch (e) {
    case Experiment::Equivalence:
      c.p = {1.0, 2.0, 4.0};
      c.symbols = {"z",         "zbar", "bump(0,0,1)", "cbump(0,0,1,2)", "conj(cbump(0,0,1,2))", "radstep(1,2)",
                   "random", "conj(random)"};
      break;
    case Experiment::BergerCoburn:
      c.p = {1.5, 2.0, 4.0};
      c.symbols = {"bump(0,0,1)",  "cbump(0,0,1,2)", "conj(cbump(0,0,1,2))", "radstep(1,2)",
                   "random", "conj(random)", "z"};
      break;
    case Experiment::HsIdentity:
      c.p = {2.0};
      c.symbols = {"bump(0,0,1)", "cbump(0,0,1,2)"};
      break;
    case Experiment::Compactness:
      c.p = {2.0};
      c.symbols = {"bump(0,0,1)", "zbar"};
      break;
    case Experiment::Beurling:
      c.p = {1.5, 2.0, 3.0};
      c.symbols = {"cbump(0,0,1,2)", "conj(cbump(0,0,1,2))", "zbar_gauss", "random", "conj(random)"};
      break;
    case Experiment::Toeplitz:
      c.p = {1.0, 2.0};
      c.symbols = {"bump(0,0,1,1)", "bump(0.5,0.3,0.8,2)"};
      break;
  }
  return c;
}

ExperimentConfig config_from_json(const nlohmann::json& j) {
  require(j.is_object(), "top level must be an object");
  static const std::set<std::string> known = {"experiment", "weight",  "N",      "grid_radius",     "r",
                                              "d",          "p",       "symbols", "output",         "seed",
                                              "delta_tolerance", "tail_tolerance", "export_fields", "centers", "beurling"};
  for (const auto& [key, value] : j.items()) require(known.count(key) > 0, "unknown key '" + key + "'");
  require(j.contains("experiment") && j["experiment"].is_string(), "missing experiment id");
  ExperimentConfig c = default_config(parse_experiment(j["experiment"].get<std::string>()));
  try {
    if (j.contains("weight")) {
      const auto& w = j["weight"];
      require(w.is_object(), "weight must be an object");
      for (const auto& [key, value] : w.items())
        require(key == "alpha" || key == "psi_amplitude", "unknown key 'weight." + key + "'");
      c.alpha = w.value("alpha", c.alpha);
      c.psi_amplitude = w.value("psi_amplitude", c.psi_amplitude);
    }
    c.n = j.value("N", c.n);
    c.grid_radius = j.value("grid_radius", c.grid_radius);
    if (j.contains("r")) c.r = j["r"].is_array() ? j["r"].get<std::vector<double>>() : std::vector<double>{j["r"].get<double>()};
    c.d = j.value("d", c.d);
    if (j.contains("p")) {
      require(j["p"].is_array(), "p must be an array");
      c.p.clear();
      for (const auto& v : j["p"]) c.p.push_back(p_from_json(v));
    }
    if (j.contains("symbols")) c.symbols = j["symbols"].get<std::vector<std::string>>();
    c.output = j.value("output", c.output);
    if (j.contains("seed")) {
      require(j["seed"].is_number_unsigned(), "seed must be a non-negative integer");
      c.seed = j["seed"].get<std::uint64_t>();
    }
    c.delta_tolerance = j.value("delta_tolerance", c.delta_tolerance);
    c.tail_tolerance = j.value("tail_tolerance", c.tail_tolerance);
    c.export_fields = j.value("export_fields", c.export_fields);
    if (j.contains("centers")) {
      const auto& g = j["centers"];
      for (const auto& [key, value] : g.items())
        require(key == "angular" || key == "panel_width" || key == "panel_order", "unknown key 'centers." + key + "'");
      c.centers.angular = g.value("angular", c.centers.angular);
      c.centers.panel_width = g.value("panel_width", c.centers.panel_width);
      c.centers.panel_order = g.value("panel_order", c.centers.panel_order);
    }
    if (j.contains("beurling")) {
      const auto& b = j["beurling"];
      for (const auto& [key, value] : b.items())
        require(key == "points" || key == "half_width", "unknown key 'beurling." + key + "'");
      c.beurling_points = b.value("points", c.beurling_points);
      c.beurling_half_width = b.value("half_width", c.beurling_half_width);
    }
  } catch (const nlohmann::json::exception& e) {
    throw InvalidInput(std::string("config: ") + e.what());
  }
  c.validate();
  return c;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidInput("config: cannot open '" + path + "'");
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw InvalidInput("config: " + path + ": " + e.what());
  }
  return config_from_json(j);
}

}  // namespace fockida::cli
