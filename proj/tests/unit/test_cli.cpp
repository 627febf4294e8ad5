#include <catch_amalgamated.hpp>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <sstream>
#include <string>
#include <unistd.h>
#include <vector>

#include "cli.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct Result {
  int code = 0;
  std::string out;
  std::string err;
};

Result invoke(std::vector<std::string> args) {
  args.insert(args.begin(), "aplab");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  Result r;
  r.code = aplab::cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

fs::path scratch(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("aplab_cli_" + std::to_string(::getpid())) / name;
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

std::string data(const std::string& rel) { return std::string(APLAB_DATA_DIR) + "/" + rel; }

}  // namespace

TEST_CASE("usage errors exit with 2") {
  const auto dir = scratch("usage").string();
  CHECK(invoke({}).code == aplab::cli::kExitUsage);
  CHECK(invoke({"bogus"}).code == aplab::cli::kExitUsage);
  CHECK(invoke({"simulate", "--property", "min-degree:1", "--strategy", "nope", "--n", "10", "--out", dir}).code == 2);
  CHECK(invoke({"simulate", "--property", "nope", "--strategy", "min-degree:1", "--n", "10", "--out", dir}).code == 2);
  CHECK(invoke({"simulate", "--property", "min-degree:1", "--strategy", "min-degree:1", "--out", dir}).code == 2);
  CHECK(invoke({"threshold", "--property", "min-degree:1", "--strategy", "min-degree:1", "--n", "10", "--trials",
                "5", "--out", dir})
            .code == 2);
  CHECK(invoke({"threshold", "--property", "min-degree:1", "--strategy", "min-degree:1", "--n", "10", "--theta",
                "1.5", "--out", dir})
            .code == 2);
  CHECK(invoke({"simulate", "--property", "min-degree:1", "--strategy", "min-degree:1", "--n", "10", "--max-steps",
                "0", "--out", dir})
            .code == 2);
  CHECK(invoke({"schedule", "--theta", "0.5", "--theta2", "0.4", "--m-star", "10"}).code == 2);
}

TEST_CASE("config file keys") {
  const auto dir = scratch("config");
  {
    std::ofstream(dir / "bad.json") << R"({"property": "min-degree:1", "colour": "red"})";
    std::ofstream(dir / "ok.json") << R"({"property": "min-degree:1", "strategy": "min-degree:1", "n": [50],
      "trials": 4, "seed": 3})";
  }
  const auto bad = invoke({"simulate", "--config", (dir / "bad.json").string(), "--out", dir.string()});
  CHECK(bad.code == 2);
  CHECK(bad.err.find("colour") != std::string::npos);
  // Flags override the file.
  const auto ok = invoke({"simulate", "--config", (dir / "ok.json").string(), "--trials", "6", "--out", dir.string()});
  REQUIRE(ok.code == 0);
  const auto csv = slurp(dir / "min-degree_1" / "min-degree_1" / "50" / "trials.csv");
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 2 + 6);
}

TEST_CASE("unwritable output directory exits with 2") {
  CHECK(invoke({"simulate", "--property", "min-degree:1", "--strategy", "min-degree:1", "--n", "10", "--trials", "2",
                "--out", "/proc/aplab-denied"})
            .code == 2);
}

TEST_CASE("instances: data errors and reports") {
  const auto dir = scratch("instances");
  { std::ofstream(dir / "broken.json") << R"({"kind": "doob", "n": 3, )"; }
  CHECK(invoke({"verify-martingale", "--instance", (dir / "broken.json").string()}).code == aplab::cli::kExitData);
  CHECK(invoke({"verify-martingale", "--instance", (dir / "missing.json").string()}).code == 3);

  const auto k1 = invoke({"verify-martingale", "--instance", data("instances/coupling_k1.json"), "--out",
                          (dir / "k1").string()});
  REQUIRE(k1.code == 0);
  const auto j = json::parse(k1.out);
  CHECK(j["coupling"]["records"][0]["gamma"] == "1/4");
  CHECK(slurp(dir / "k1" / "report.json") == k1.out);

  const auto two = invoke({"verify-martingale", "--instance", data("instances/two_subset.json")});
  REQUIRE(two.code == 0);
  CHECK(json::parse(two.out)["boost"]["bound"] == "9/16");
}

TEST_CASE("simulate output is deterministic and worker independent") {
  const auto a = scratch("sim_a");
  const auto b = scratch("sim_b");
  const std::vector<std::string> base{"simulate", "--property", "min-degree:1", "--strategy", "min-degree:1",
                                      "--n", "1000", "--trials", "100", "--seed", "7"};
  auto args = base;
  args.insert(args.end(), {"--workers", "1", "--out", a.string()});
  REQUIRE(invoke(args).code == 0);
  const auto path = fs::path("min-degree_1") / "min-degree_1" / "1000";
  const auto first = slurp(a / path / "trials.csv");
  CHECK(std::count(first.begin(), first.end(), '\n') == 2 + 100);
  REQUIRE(invoke(args).code == 0);
  CHECK(slurp(a / path / "trials.csv") == first);

  args = base;
  args.insert(args.end(), {"--workers", "8", "--out", b.string()});
  REQUIRE(invoke(args).code == 0);
  CHECK(slurp(b / path / "trials.csv") == first);
  CHECK(slurp(b / path / "manifest.json") == slurp(a / path / "manifest.json"));
}

TEST_CASE("threshold writes summaries with non-decreasing t_hat") {
  const auto dir = scratch("threshold");
  const auto r = invoke({"threshold", "--property", "min-degree:1", "--strategy", "min-degree:1", "--n", "4000",
                         "--trials", "100", "--theta", "0.9,0.1,0.5", "--seed", "5", "--out", dir.string()});
  REQUIRE(r.code == 0);
  const auto cell = dir / "min-degree_1" / "min-degree_1";
  std::istringstream summary(slurp(cell / "4000" / "summary.csv"));
  std::string line;
  std::getline(summary, line);
  CHECK(line.rfind("# config_hash=", 0) == 0);
  std::getline(summary, line);
  CHECK(line.rfind("# ", 0) == 0);
  std::getline(summary, line);
  CHECK(line == "property,strategy,n,theta,t_hat,ci_lo,ci_hi,trials");
  std::vector<long> t_hat;
  while (std::getline(summary, line)) {
    std::vector<std::string> cols;
    std::stringstream ss(line);
    for (std::string c; std::getline(ss, c, ',');) cols.push_back(c);
    REQUIRE(cols.size() == 8);
    t_hat.push_back(std::stol(cols[4]));
  }
  REQUIRE(t_hat.size() == 3);
  CHECK(t_hat[0] <= t_hat[1]);
  CHECK(t_hat[1] <= t_hat[2]);
  CHECK(fs::exists(cell / "width.csv"));
  CHECK(fs::exists(cell / "means.csv"));
  CHECK(fs::exists(cell / "summary.csv"));
}

TEST_CASE("schedule and trace") {
  const auto s = invoke({"schedule", "--theta", "0.5", "--theta2", "0.9", "--m-star", "10000"});
  REQUIRE(s.code == 0);
  const auto j = json::parse(s.out);
  CHECK(j["iterations"] == 100);
  CHECK(j["holds"] == true);

  const auto dir = scratch("trace");
  const auto t = invoke({"trace", "--property", "min-degree:1", "--strategy", "min-degree:1", "--n", "2", "--out",
                         (dir / "t.txt").string()});
  REQUIRE(t.code == 0);
  const auto text = slurp(dir / "t.txt");
  CHECK((text == "1 1 1 2\n" || text == "1 2 1 2\n"));
  CHECK(t.out.find("stopping_time=1") != std::string::npos);
}
