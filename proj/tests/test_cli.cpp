#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sys/wait.h>
#include <unistd.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <nlohmann/json.hpp>

#include "bspir/report.hpp"

namespace fs = std::filesystem;

namespace {

struct Result {
  int code = -1;
  std::string out;
};

fs::path scratch() {
  static const fs::path dir = [] {
    fs::path d = fs::temp_directory_path() / ("bspir_cli_" + std::to_string(::getpid()));
    fs::create_directories(d);
    return d;
  }();
  return dir;
}

Result sim(const std::string& args) {
  const fs::path out = scratch() / "stdout.txt";
  const std::string cmd = std::string(BSPIR_SIM_PATH) + " " + args + " > " + out.string() + " 2>/dev/null";
  const int status = std::system(cmd.c_str());
  Result r;
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  std::ifstream in(out);
  std::stringstream ss;
  ss << in.rdbuf();
  r.out = ss.str();
  return r;
}

}  // namespace

TEST_CASE("run emits a CSV report") {
  const Result r = sim("run --n 3 --t 1 --b 1 --l 8 --alpha 2 --trials 50 --strategy hash_guess --seed 3");
  REQUIRE(r.code == 0);
  const auto rows = bspir::parse_csv(r.out);
  REQUIRE(rows.size() == 1);
  CHECK(rows[0].trials == 50);
  CHECK(rows[0].strategy == "hash_guess");
  CHECK(rows[0].q == 67);
}

TEST_CASE("the same seed gives the same report") {
  const std::string args = "run --n 3 --t 1 --b 1 --l 8 --alpha 1 --trials 200 --strategy root_stuffing --seed 8";
  auto a = bspir::parse_csv(sim(args).out);
  auto b = bspir::parse_csv(sim(args + " --threads 3").out);
  REQUIRE(a.size() == 1);
  REQUIRE(b.size() == 1);
  a[0].seconds = b[0].seconds = 0;
  CHECK(a == b);
}

TEST_CASE("sweep emits one row per l") {
  const Result r = sim("run --n 3 --t 1 --b 1 --alpha 2 --trials 20 --sweep-l 8,16,32");
  REQUIRE(r.code == 0);
  const auto rows = bspir::parse_csv(r.out);
  REQUIRE(rows.size() == 3);
  CHECK(rows[0].q == 67);
  CHECK(rows[1].q == 257);
  CHECK(rows[2].q == 1031);
}

TEST_CASE("json output and transcript") {
  const Result r = sim("run --model untouched --n 4 --t 1 --b 1 --e 2 --l 8 --beta 2 --alpha 4 --trials 10 --format json");
  REQUIRE(r.code == 0);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j.at("trials") == 10);
  const Result t = sim("run --n 3 --t 1 --b 1 --l 4 --alpha 1 --transcript 2 --seed 5");
  REQUIRE(t.code == 0);
  CHECK(nlohmann::json::parse(t.out).contains("classification"));
}

TEST_CASE("configuration errors exit with status 2") {
  CHECK(sim("run --n 2 --t 1 --b 1 --l 4 --alpha 1").code == 2);
  CHECK(sim("run --strategy telepathy").code == 2);
  CHECK(sim("run --frobnicate").code == 2);
  CHECK(sim("").code == 2);
  const fs::path cfg = scratch() / "bad.cfg";
  std::ofstream(cfg) << "colour = red\n";
  CHECK(sim("run --config " + cfg.string()).code == 2);
  CHECK(sim("run --config " + (scratch() / "missing.cfg").string()).code == 2);
}

TEST_CASE("flags override the config file") {
  const fs::path cfg = scratch() / "run.cfg";
  std::ofstream(cfg) << "# small run\nn = 3\nt = 1\nb = 1\nl = 8\nalpha = 1\ntrials = 5\nstrategy = passive\n";
  const auto from_file = bspir::parse_csv(sim("run --config " + cfg.string()).out);
  REQUIRE(from_file.size() == 1);
  CHECK(from_file[0].trials == 5);
  const auto overridden = bspir::parse_csv(sim("run --config " + cfg.string() + " --trials 7").out);
  REQUIRE(overridden.size() == 1);
  CHECK(overridden[0].trials == 7);
  CHECK(overridden[0].strategy == "passive");
}

TEST_CASE("report file output") {
  const fs::path out = scratch() / "report.csv";
  REQUIRE(sim("run --n 3 --t 1 --b 1 --l 4 --alpha 1 --trials 5 --out " + out.string()).code == 0);
  std::ifstream in(out);
  std::stringstream ss;
  ss << in.rdbuf();
  CHECK(bspir::parse_csv(ss.str()).size() == 1);
}

TEST_CASE("golden check passes") {
  const Result r = sim("golden");
  CHECK(r.code == 0);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j.at("pass") == true);
  CHECK(j.at("assignments") == 3125);
}

TEST_CASE("audits pass faithfully and fail on the negative controls") {
  const std::string user = "audit --kind user --n 3 --t 1 --b 1 --l 2 --alpha 1";
  const Result ok = sim(user);
  CHECK(ok.code == 0);
  CHECK(nlohmann::json::parse(ok.out).at("pass") == true);
  const Result leaky = sim(user + " --variant leaky_queries");
  CHECK(leaky.code == 3);
  CHECK(nlohmann::json::parse(leaky.out).at("pass") == false);
  const std::string db = "audit --kind database --n 3 --t 1 --b 1 --l 1 --alpha 1 --q 3 --lambdas 1,2,0 --allow-zero-lambda true";
  CHECK(sim(db).code == 0);
  CHECK(sim(db + " --variant unmasked_s").code == 3);
  CHECK(sim(user + " --budget 10").code == 2);
}

TEST_CASE("bounds prints the capacity table") {
  const Result r = sim("bounds --n-max 4");
  REQUIRE(r.code == 0);
  CHECK(r.out.find("N,T,B") != std::string::npos);
}
