#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <iterator>
#include <sstream>

#include <nlohmann/json.hpp>

#include "fockida/cli/catalog.hpp"
#include "fockida/cli/config.hpp"
#include "fockida/cli/experiments.hpp"
#include "fockida/cli/table.hpp"
#include "fockida/error.hpp"

using namespace fockida;
using namespace fockida::cli;

TEST_CASE("symbol grammar") {
  CHECK(parse_symbol("z").growth == Growth::PolynomialGrowth);
  CHECK(parse_symbol(" bump( 0, 0 , 1 ) ").name == "bump(0,0,1)");
  CHECK(parse_symbol("bump(0,1,1)").growth == Growth::CompactlySupported);
  CHECK(parse_symbol("bump(0.5,0.3,0.8,2)").params.size() == 4);
  const SymbolSpec r = parse_symbol("random", 42);
  CHECK(r.name == "random(42,16,2)");
  CHECK(parse_symbol("conj(cbump(0,0,1,2))").conjugated);
  CHECK(parse_symbol("conj(conj(radstep(1,2)))").name == "radstep(1,2)");
  CHECK(parse_symbol("conj(z)").name == "zbar");
  CHECK(parse_symbol("conj(zbar)").kind == "z");
  for (const char* bad : {"", "bump", "bump(1,2)", "bump(0,0,1", "foo", "conj(z", "z(1)", "bump(a,0,1)", "zbar)"})
    CHECK_THROWS_AS(parse_symbol(bad), InvalidInput);
  CHECK_THROWS_AS(parse_symbol("bump(0,0,-1)").build(), InvalidInput);
}

TEST_CASE("built symbols") {
  const Symbol f = parse_symbol("cbump(0,0,1,2)").build();
  const Symbol g = parse_symbol("conj(cbump(0,0,1,2))").build();
  for (cplx z : {cplx{0.1, 0.2}, cplx{-0.5, 0.3}}) CHECK(std::abs(g(z) - std::conj(f(z))) < 1e-15);
  CHECK(g.name() == "conj(cbump(0,0,1,2))");
}

TEST_CASE("catalog") {
  const auto cat = catalog();
  auto has = [&](const std::string& name) {
    for (const auto& s : cat)
      if (s.name == name) return true;
    return false;
  };
  for (const char* name : {"z", "zbar", "bump(0,0,1)", "cbump(0,0,1,2)", "radstep(1,2)", "random(7,16,2)",
                           "conj(bump(0,0,1))", "conj(cbump(0,0,1,2))", "conj(radstep(1,2))", "conj(random(7,16,2))"})
    CHECK_MESSAGE(has(name), name);
  for (const auto& s : cat) CHECK_MESSAGE(verify_growth(s).consistent, s.name);
  CHECK(parse_symbol("z").expectation.find("H_f = 0") != std::string::npos);
}

TEST_CASE("configuration") {
  CHECK(parse_experiment("E3") == Experiment::HsIdentity);
  CHECK(parse_experiment("E6-toeplitz") == Experiment::Toeplitz);
  CHECK_THROWS_AS(parse_experiment("E7"), InvalidInput);
  for (int i = 0; i < 6; ++i) CHECK_NOTHROW(default_config(static_cast<Experiment>(i)).validate());

  const nlohmann::json j = {{"experiment", "E2-berger-coburn"}, {"N", 40}, {"p", {2, "inf"}}, {"symbols", {"z"}},
                            {"weight", {{"alpha", 0.5}}}};
  const ExperimentConfig c = config_from_json(j);
  CHECK(c.n == 40);
  CHECK(c.alpha == 0.5);
  CHECK(std::isinf(c.p[1]));
  CHECK(c.r == std::vector<double>{0.5, 1.0});
  const ExperimentConfig back = config_from_json(c.to_json());
  CHECK(back.to_json() == c.to_json());

  auto rejects = [](nlohmann::json k) { CHECK_THROWS_AS(config_from_json(k), InvalidInput); };
  rejects({{"experiment", "E1"}, {"bogus", 1}});
  rejects({{"experiment", "E1"}, {"weight", {{"beta", 1}}}});
  rejects({{"experiment", "E1"}, {"symbols", nlohmann::json::array()}});
  rejects({{"experiment", "E1"}, {"N", 5}});
  rejects({{"experiment", "E1"}, {"N", "sixty"}});
  rejects({{"experiment", "E1"}, {"p", {-1}}});
  rejects({{"experiment", "E3"}, {"weight", {{"psi_amplitude", 0.1}}}});
  rejects({{"N", 60}});
  rejects(nlohmann::json::array());
}

TEST_CASE("CSV formatting") {
  CHECK(format_real(0.1) == "0.10000000000000001");
  CHECK(format_real(1.0) == "1");
  CHECK(format_real(std::nan("")) == "nan");
  CHECK(format_real(-INFINITY) == "-inf");
  Table t;
  t.columns = {"name", "x", "n", "ok"};
  t.add({std::string("a,b"), 0.25, std::int64_t{3}, true});
  t.add({std::string("q\"x"), 1.0 / 3.0, std::int64_t{-1}, false});
  std::ostringstream os;
  t.write_csv(os);
  CHECK(os.str() == "name,x,n,ok\n\"a,b\",0.25,3,1\n\"q\"\"x\",0.33333333333333331,-1,0\n");
  CHECK(t.number(0, "n") == 3.0);
  CHECK(t.flag(1, "ok") == false);
  CHECK_THROWS_AS(t.add({1.0}), InvalidInput);
  CHECK_THROWS_AS(t.index("missing"), InvalidInput);
}

TEST_CASE("every experiment reports convergence deltas") {
  for (int i = 0; i < 6; ++i) {
    bool delta = false;
    for (const auto& col : csv_columns(static_cast<Experiment>(i))) delta = delta || col.find("delta") != std::string::npos;
    CHECK(delta);
  }
}

TEST_CASE("E2 with z records the failure mode") {
  ExperimentConfig c = default_config(Experiment::BergerCoburn);
  c.symbols = {"z"};
  const RunResult r = run_experiment(c);
  REQUIRE(r.table.rows.size() == c.p.size());
  for (std::size_t i = 0; i < r.table.rows.size(); ++i) CHECK(r.table.flag(i, "failure_mode"));
  CHECK(r.pass());
  const nlohmann::json s = r.summary();
  CHECK(s.at("pass") == true);
}

TEST_CASE("run_and_write is deterministic") {
  namespace fs = std::filesystem;
  const fs::path dir = fs::temp_directory_path() / "fockida-unit-cli";
  fs::create_directories(dir);
  ExperimentConfig c = default_config(Experiment::BergerCoburn);
  c.symbols = {"bump(0,0,1)", "cbump(0,0,1,2)"};
  std::string csv[2];
  for (int i = 0; i < 2; ++i) {
    c.output = (dir / ("run" + std::to_string(i))).string();
    std::ostringstream log;
    CHECK(run_and_write(c, log) == 0);
    std::ifstream in(c.output + ".csv", std::ios::binary);
    csv[i].assign(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
    std::ifstream js(c.output + ".json");
    const nlohmann::json summary = nlohmann::json::parse(js);
    CHECK(summary.at("pass") == true);
  }
  CHECK_FALSE(csv[0].empty());
  CHECK(csv[0] == csv[1]);
  fs::remove_all(dir);
}

TEST_CASE("shipped configs load and match the defaults") {
  namespace fs = std::filesystem;
  int seen = 0;
  for (const auto& entry : fs::directory_iterator(FOCKIDA_CONFIG_DIR)) {
    if (entry.path().extension() != ".json") continue;
    ++seen;
    const ExperimentConfig c = load_config(entry.path().string());
    ExperimentConfig d = default_config(c.experiment);
    d.output = c.output;
    CHECK_MESSAGE(c.to_json() == d.to_json(), entry.path().string());
  }
  CHECK(seen == 6);
}
