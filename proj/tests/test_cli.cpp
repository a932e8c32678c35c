#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "json.hpp"
#include "parastat/cli.hpp"
#include "parastat/config.hpp"

namespace fs = std::filesystem;
using parastat::run_cli;

namespace {

struct Run {
  int code;
  std::string out, err;
};

Run run(std::vector<std::string> args) {
  args.insert(args.begin(), "parastat");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

fs::path scratch(const std::string& name) {
  const auto d = fs::temp_directory_path() / ("parastat_cli_" + name);
  fs::remove_all(d);
  fs::create_directories(d);
  return d;
}

std::string slurp(const fs::path& p) {
  std::ifstream f(p, std::ios::binary);
  REQUIRE(f.good());
  return {std::istreambuf_iterator<char>(f), {}};
}

nlohmann::json load(const fs::path& p) { return nlohmann::json::parse(slurp(p)); }

}  // namespace

TEST_CASE("classify") {
  const std::vector<std::tuple<std::string, int, int>> cases{
      {"Z2", 2, 2}, {"Z3", 3, 1}, {"Z4", 4, 2}, {"Z6", 6, 2}, {"Z2xZ2", 16, 8}};
  for (const auto& [g, total, factors] : cases) {
    CAPTURE(g);
    const auto d = scratch("classify");
    const auto r = run({"classify", "--group", g, "--out", d.string()});
    CHECK(r.code == 0);
    const auto j = load(d / "classification.json");
    CHECK(j["bicharacter_count"] == total);
    CHECK(j["commutation_factor_count"] == factors);
  }
  const auto d = scratch("classify_csv");
  CHECK(run({"classify", "--group", "Z3", "--format", "csv", "--out", d.string()}).code == 0);
  CHECK(fs::exists(d / "classification.csv"));
  CHECK(run({"classify", "--group", "Z0"}).code == 2);
  CHECK(run({"classify", "--group", "Z2y"}).code == 2);
  CHECK(run({"frobnicate"}).code == 2);
  CHECK(run({}).code == 2);
}

TEST_CASE("verify") {
  const auto d = scratch("verify");
  auto r = run({"verify", "--kind", "PB", "--p", "2", "--out", d.string()});
  CHECK(r.code == 0);
  auto j = load(d / "residuals.json");
  CHECK(j["passed"] == true);
  CHECK(j["max_residual"].get<double>() <= 1e-10);
  CHECK(j["homogeneity"]["homogeneous"] == true);

  r = run({"verify", "--kind", "PBF", "--p", "2", "--theta", "trivial", "--out", d.string()});
  CHECK(r.code == 1);
  j = load(d / "residuals.json");
  CHECK(j["passed"] == false);
  CHECK_FALSE(j["worst_relation"].get<std::string>().empty());

  CHECK(run({"verify", "--kind", "PF", "--p", "3", "--modes-f", "2", "--out", d.string()}).code == 0);
  CHECK(run({"verify", "--kind", "PBF", "--p", "2", "--out", d.string()}).code == 0);
  CHECK(run({"verify", "--kind", "PFB", "--p", "2", "--out", d.string()}).code == 0);
  CHECK(run({"verify", "--kind", "SAR", "--p", "2", "--out", d.string()}).code == 0);
  CHECK(run({"verify", "--kind", "Ws", "--out", d.string()}).code == 0);
  CHECK(run({"verify", "--kind", "nonsense", "--out", d.string()}).code == 2);
  CHECK(run({"verify", "--p", "0"}).code == 2);
}

TEST_CASE("fock") {
  const auto d = scratch("fock");
  CHECK(run({"fock", "--kind", "PB", "--p", "2", "--out", d.string()}).code == 0);
  const auto csv = slurp(d / "matrix_elements.csv");
  CHECK(csv.find("ref") != std::string::npos);
  CHECK(load(d / "basis.json").is_object());
  CHECK(run({"fock", "--kind", "PBF", "--p", "2", "--out", d.string()}).code == 0);
  const auto j = load(d / "ladder.json");
  CHECK(j["dimension_rule_ok"] == true);
  CHECK(run({"fock", "--kind", "SCR", "--p", "2", "--out", d.string()}).code == 0);
}

TEST_CASE("jc") {
  const auto d = scratch("jc");
  for (std::string h : {"dyn", "dynstar", "free"}) {
    CAPTURE(h);
    const auto r = run({"jc", "--p", "2", "--hamiltonian", h, "--t-steps", "200", "--out", d.string()});
    CHECK(r.code == 0);
    const auto m = load(d / "manifest.json");
    CHECK(m["checks"]["selection_rule_ok"] == true);
    CHECK(m["checks"]["conservation_ok"] == true);
    CHECK(m["checks"]["hermitian_ok"] == true);
    CHECK(m["config"]["kind"] == "PBF");
  }
  const auto dyn = slurp(d / "dynamics.csv");
  CHECK(dyn.rfind("t,", 0) == 0);
  CHECK(run({"jc", "--lambda", "0.1+0.2j", "--out", d.string()}).code == 2);
  CHECK(run({"jc", "--hamiltonian", "dynstar", "--lambda1", "x", "--out", d.string()}).code == 2);
  CHECK(run({"jc", "--init", "9,9,9", "--out", d.string()}).code == 2);
  CHECK(run({"jc", "--kind", "PB", "--out", d.string()}).code == 2);
}

TEST_CASE("repeated runs are byte identical") {
  const auto a = scratch("rep_a"), b = scratch("rep_b");
  for (const auto& d : {a, b}) {
    REQUIRE(run({"jc", "--p", "2", "--t-steps", "100", "--out", d.string()}).code == 0);
  }
  for (const char* f : {"spectrum.csv", "dynamics.csv"}) CHECK(slurp(a / f) == slurp(b / f));
  CHECK(slurp(a / "manifest.json") == slurp(b / "manifest.json"));
}

TEST_CASE("config file and precedence") {
  const auto d = scratch("config");
  const auto cfg = d / "run.cfg";
  {
    std::ofstream f(cfg);
    f << "# comment\ngroup = Z3\nout = " << d.string() << "\n";
  }
  CHECK(run({"classify", "--config", cfg.string()}).code == 0);
  CHECK(load(d / "classification.json")["group"] == "Z3");
  CHECK(run({"classify", "--config", cfg.string(), "--group", "Z4"}).code == 0);
  CHECK(load(d / "classification.json")["group"] == "Z4");
  {
    std::ofstream f(cfg);
    f << "no equals sign\n";
  }
  CHECK(run({"classify", "--config", cfg.string()}).code == 2);
  CHECK(run({"classify", "--config", (d / "missing.cfg").string()}).code == 2);
}

TEST_CASE("sizing errors exit with 3") {
  const auto saved = parastat::max_dimension();
  parastat::set_max_dimension(50);
  const auto d = scratch("sizing");
  CHECK(run({"verify", "--kind", "PB", "--p", "3", "--cutoff", "8", "--out", d.string()}).code == 3);
  CHECK(run({"jc", "--p", "3", "--cutoff", "8", "--out", d.string()}).code == 3);
  parastat::set_max_dimension(saved);
}
