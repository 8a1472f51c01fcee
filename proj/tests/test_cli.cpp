// End-to-end checks of the command-line tool: exit codes, report schema,
// determinism across worker counts, and the corrupted-star negative control.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sys/wait.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

using nlohmann::json;

namespace {

const char* binary() { return GBCURV_BIN; }

int run(const std::string& args, const std::string& stdout_path = "cli_out.txt") {
  const std::string cmd = std::string(binary()) + " " + args + " > " + stdout_path + " 2> cli_err.txt";
  const int status = std::system(cmd.c_str());
  return WEXITSTATUS(status);
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  out << text;
}

}  // namespace

TEST_CASE("list-identities") {
  REQUIRE(run("list-identities") == 0);
  const std::string out = slurp("cli_out.txt");
  CHECK(out.find("curv.avez") != std::string::npos);
  CHECK(out.find("int.bochner") != std::string::npos);
  CHECK(out.find("conf.k_law") != std::string::npos);
}

TEST_CASE("invariants: sphere, torus, sign-pattern product") {
  write_file("cfg_sphere.json", R"json({"manifold": {"model": "space_form", "n": 4, "kappa": 1.0}})json");
  REQUIRE(run("invariants --config cfg_sphere.json") == 0);
  json rep = json::parse(slurp("cli_out.txt"));
  REQUIRE(rep.contains("invariants"));
  CHECK(rep["invariants"][0]["h"]["4"].get<double>() == doctest::Approx(6.0));
  CHECK(rep["invariants"][0]["sigma"]["2"].get<double>() == doctest::Approx(1.5));

  write_file("cfg_torus.json", R"json({"manifold": {"model": "flat_torus", "n": 4}})json");
  REQUIRE(run("invariants --config cfg_torus.json") == 0);
  rep = json::parse(slurp("cli_out.txt"));
  CHECK(rep["invariants"][0]["h"]["2"].get<double>() == 0.0);
  CHECK(rep["invariants"][0]["h"]["4"].get<double>() == 0.0);

  write_file("cfg_prod.json",
             R"json({"manifold": {"model": "product", "factors": [
                  {"model": "space_form", "n": 3, "kappa": 100.0},
                  {"model": "space_form", "n": 2, "kappa": 1.0}]}})json");
  REQUIRE(run("invariants --config cfg_prod.json") == 0);
  rep = json::parse(slurp("cli_out.txt"));
  CHECK(rep["invariants"][0]["flags"]["h4_positive"].get<bool>());
  CHECK(rep["invariants"][0]["flags"]["sigma2_negative"].get<bool>());
}

TEST_CASE("verify: pass, config error, negative control") {
  REQUIRE(run("verify --suite newton --n 4..5 --trials 4 --seed 3 --out rep_newton.json") == 0);
  const json rep = json::parse(slurp("rep_newton.json"));
  CHECK(rep["schema_version"].get<int>() == 1);
  CHECK(rep["summary"]["fail"].get<int>() == 0);
  CHECK(rep["rows"].size() > 0);
  for (const auto& row : rep["rows"]) {
    CHECK(row.contains("anchor"));
    const bool consistent = (row["status"] == "fail") ==
                            (row["residual"].get<double>() > row["tolerance"].get<double>() &&
                             row["status"] != "not-applicable");
    CHECK(consistent);
  }

  write_file("cfg_bad.json", R"json({"suite": "algebra", "bogus_key": 1})json");
  CHECK(run("verify --config cfg_bad.json") == 2);
  CHECK(run("verify --suite no-such-suite") == 2);

  CHECK(run("verify --suite algebra --n 3..4 --trials 3 --debug-corrupt-star --out rep_bad.json") ==
        1);
  const json bad = json::parse(slurp("rep_bad.json"));
  CHECK(bad["summary"]["fail"].get<int>() > 0);
}

TEST_CASE("verify: byte-identical reports across runs and worker counts") {
  REQUIRE(run("verify --suite curvature-identities --n 4..5 --trials 5 --seed 9 --jobs 1 "
              "--out rep_a.json") == 0);
  REQUIRE(run("verify --suite curvature-identities --n 4..5 --trials 5 --seed 9 --jobs 4 "
              "--out rep_b.json") == 0);
  REQUIRE(run("verify --suite curvature-identities --n 4..5 --trials 5 --seed 9 --jobs 2 "
              "--out rep_c.json") == 0);
  const std::string a = slurp("rep_a.json");
  CHECK(a == slurp("rep_b.json"));
  CHECK(a == slurp("rep_c.json"));
  CHECK(a.find("wall") == std::string::npos);  // deterministic by default
}

TEST_CASE("conformal command") {
  write_file("cfg_conf4.json",
             R"json({"manifold": {"model": "flat_torus", "n": 4},
                 "fields": {"f": "0.1*sin(x1)*cos(x2)", "phi": "0.05*sin(x2)"},
                 "samples": 4, "resolution": [12, 12, 2, 2]})json");
  REQUIRE(run("conformal --config cfg_conf4.json --out rep_conf4.json") == 0);
  const json rep = json::parse(slurp("rep_conf4.json"));
  bool has_h4 = false, has_bochner = false;
  for (const auto& row : rep["rows"]) {
    if (row["id"] == "conf.h4_law") has_h4 = true;
    if (row["id"] == "int.bochner") has_bochner = true;
  }
  CHECK(has_h4);
  CHECK(has_bochner);

  write_file("cfg_conf5.json",
             R"json({"manifold": {"model": "flat_torus", "n": 5},
                 "fields": {"v": "1.2 + 0.1*sin(x1)", "a": "1 + 0.04*cos(x1)", "phi": "1.1 + 0.1*cos(x2)"},
                 "samples": 3, "resolution": [16, 2, 2, 2, 2]})json");
  REQUIRE(run("conformal --config cfg_conf5.json --out rep_conf5.json") == 0);
  const json rep5 = json::parse(slurp("rep_conf5.json"));
  bool has_k = false, has_ricci = false, has_bidegree = false;
  for (const auto& row : rep5["rows"]) {
    if (row["id"] == "conf.k_law") has_k = true;
    if (row["id"] == "int.ricci_change") has_ricci = true;
    if (row["id"] == "conf.bidegree") has_bidegree = true;
  }
  CHECK(has_k);
  CHECK(has_ricci);
  CHECK(has_bidegree);

  // Nonpositive conformal factor: runtime error, exit 3.
  write_file("cfg_conf_bad.json",
             R"json({"manifold": {"model": "flat_torus", "n": 5},
                 "fields": {"v": "-1.0 + 0.0*x1"}, "samples": 2})json");
  CHECK(run("conformal --config cfg_conf_bad.json") == 3);
}

TEST_CASE("explicit metric config") {
  write_file("cfg_metric.json",
             R"json({"manifold": {"metric": {
                   "entries": [["1 + 0.1*sin(x1)*cos(x2)", "0", "0", "0"],
                               ["0", "1", "0", "0"],
                               ["0", "0", "1", "0"],
                               ["0", "0", "0", "1"]],
                   "domain": {"lo": [0, 0, 0, 0],
                              "hi": [6.283185307179586, 6.283185307179586, 6.283185307179586, 6.283185307179586],
                              "periodic": [true, true, true, true]}}},
                 "points": [[1.0, 2.0, 3.0, 4.0]]})json");
  REQUIRE(run("invariants --config cfg_metric.json") == 0);
  const json rep = json::parse(slurp("cli_out.txt"));
  CHECK(rep["invariants"].size() == 1);
  CHECK(rep["invariants"][0].contains("h"));
}
