#include "cli.hpp"

#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

namespace fs = std::filesystem;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  args.insert(args.begin(), "mpfbm");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = mpfbm::cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

fs::path scratch() {
  const fs::path dir = fs::temp_directory_path() / "mpfbm_cli_tests";
  fs::create_directories(dir);
  return dir;
}

std::string write(const std::string& name, const std::string& text) {
  const fs::path p = scratch() / name;
  std::ofstream(p) << text;
  return p.string();
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), {}};
}

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("covariance rows and errors") {
  const auto cfg = write("cov.json",
                         R"({"kernel":{"variant":"mpfbm","H":0.5},"pairs":[[[1,1],[2,2]]]})");
  const Run r = run({"covariance", "--config", cfg});
  CHECK(r.code == 0);
  CHECK(r.out == "s,t,cov\n1;1,2;2,1\n");

  const Run empty = run({"covariance", "--config",
                         write("empty.json", R"({"kernel":{"variant":"levy","H":0.3},"pairs":[]})")});
  CHECK(empty.code == 0);
  CHECK(empty.out == "s,t,cov\n");

  const Run range = run({"covariance", "--config",
                         write("h07.json", R"({"kernel":{"variant":"mpfbm","H":0.7},"pairs":[]})")});
  CHECK(range.code == 3);
  CHECK(range.err.find("(0,1/2]") != std::string::npos);

  CHECK(run({"covariance", "--config", write("bad.json", "{\"kernel\":")}).code == 2);
  CHECK(run({"covariance", "--config", "/nonexistent/cfg.json"}).code == 2);
  CHECK(run({"covariance", "--config",
             write("dim.json",
                   R"({"kernel":{"variant":"sheet","H":[0.3,0.4]},"pairs":[[[1,1,1],[2,2,2]]]})")})
            .code == 3);
  CHECK(run({"no-such-command"}).code == 2);
}

TEST_CASE("simulate is reproducible and thread independent") {
  const auto cfg = write("sim.json", R"({"kernel":{"variant":"mpfbm","H":0.3},
      "grid":{"axes":[{"min":0.125,"max":1,"count":8},{"min":0.125,"max":1,"count":8}]},
      "n_samples":200,"seed":42})");
  const auto a = (scratch() / "a.csv").string();
  const auto b = (scratch() / "b.csv").string();
  REQUIRE(run({"simulate", "--config", cfg, "--out", a}).code == 0);
  REQUIRE(run({"simulate", "--config", cfg, "--out", b, "--threads", "3"}).code == 0);
  CHECK(slurp(a) == slurp(b));
  CHECK(slurp(a + ".json") == slurp(b + ".json"));
  CHECK(slurp(a + ".json").find("min_eigenvalue") != std::string::npos);

  const Run other = run({"simulate", "--config", cfg, "--seed", "43"});
  CHECK(other.out != slurp(a));

  const Run bad = run({"simulate", "--config", write("indef.json", R"({"matrix":[[1,2],[2,1]]})")});
  CHECK(bad.code == 4);
  const Run axis = run({"simulate", "--config",
                        write("axis.json", R"({"kernel":{"variant":"mpfbm","H":0.3},
                              "grid":{"axes":[[0,1],[0,1]]},"n_samples":4})")});
  CHECK(axis.code == 0);
}

TEST_CASE("stationarity reports") {
  const Run mp = run({"stationarity", "--config",
                      write("st_mp.json", R"({"kernel":{"variant":"mpfbm","H":0.25}})")});
  CHECK(mp.code == 0);
  CHECK(mp.out.find("battery-v1") != std::string::npos);
  const Run missing = run({"stationarity", "--config", write("st_levy.json",
                           R"({"kernel":{"variant":"levy","H":0.4}})"), "--battery", "/nope.json"});
  CHECK(missing.code == 2);
}

TEST_CASE("flow projection") {
  const auto cfg = write("flow.json", R"({"kernel":{"variant":"mpfbm","H":0.25},
      "flow":{"variant":"linear","direction":[1,1],"domain":[0,4]},"pairs":[[1,2]]})");
  const Run r = run({"flow-project", "--config", cfg});
  CHECK(r.code == 0);
  CHECK(r.out == "u,v,C\n1,2,0.6339745962155614\n");

  const auto nonmono = write("flow_bad.json", R"({"kernel":{"variant":"mpfbm","H":0.25},
      "flow":{"variant":"tabulated","knots":[0,1,2],"points":[[0,0],[1,1],[0.5,2]]}})");
  CHECK(run({"flow-project", "--config", nonmono}).code == 3);

  const auto levy = write("flow_levy.json", R"({"kernel":{"variant":"levy","H":0.3},
      "flow":{"variant":"linear","direction":[1,2],"domain":[0,3]}})");
  const Run check = run({"flow-project", "--config", levy, "--check-mode"});
  CHECK(check.code == 0);
  CHECK(check.out.find("\"verdict\": \"holds\"") != std::string::npos);
  CHECK(run({"flow-project", "--config", levy}).code == 3);
}

TEST_CASE("estimate-hurst") {
  std::string line = "y\n";
  for (int i = 0; i <= 256; ++i) line += std::to_string(0.5 * i) + "\n";
  const Run r = run({"estimate-hurst", "--input", write("line.csv", line)});
  CHECK(r.code == 0);
  CHECK(r.out.find("ballistic") != std::string::npos);

  std::string flat;
  for (int i = 0; i <= 256; ++i) flat += "1.0\n";
  CHECK(run({"estimate-hurst", "--input", write("flat.csv", flat)}).code == 3);
  CHECK(run({"estimate-hurst", "--input", write("short.csv", "1\n2\n3\n")}).code == 3);
}

}  // TEST_SUITE
