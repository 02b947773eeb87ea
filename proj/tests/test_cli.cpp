// Drives the qpure executable as a user would and checks exit codes and outputs.
#include <doctest.h>

#include <array>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>

#include <json.hpp>

#ifndef QPURE_CLI_PATH
#error "QPURE_CLI_PATH must name the qpure executable"
#endif

namespace fs = std::filesystem;

namespace {

struct Result {
  int code = -1;
  std::string out;
};

const fs::path& workdir() {
  static const fs::path dir = [] {
    auto d = fs::temp_directory_path() / "qpure_cli_tests";
    fs::remove_all(d);
    fs::create_directories(d);
    return d;
  }();
  return dir;
}

Result run(const std::string& args) {
  const std::string cmd = "cd \"" + workdir().string() + "\" && \"" QPURE_CLI_PATH "\" " + args + " 2>&1";
  Result r;
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::array<char, 4096> buf{};
  while (std::fgets(buf.data(), buf.size(), pipe)) r.out += buf.data();
  const int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

}  // namespace

TEST_CASE("criterion on a Bell state file") {
  REQUIRE(run("state bell --kind phi+ --out bell.json").code == 0);
  const auto r = run("criterion --state bell.json --partition \"0|1\" --out report.json");
  REQUIRE(r.code == 0);
  const auto doc = nlohmann::json::parse(slurp(workdir() / "report.json"));
  CHECK(doc["verdicts"]["ksep_norm"] == "violated");
  CHECK(doc["threshold"].get<double>() == 1.0);
  CHECK(std::abs(doc["tnorm2"]["direct"].get<double>() - 3.0) < 1e-12);
}

TEST_CASE("criterion on maximally mixed and GHZ3") {
  REQUIRE(run("state mm --n 2 --out mm.json").code == 0);
  auto r = run("criterion --state mm.json --partition \"0|1\"");
  REQUIRE(r.code == 0);
  auto doc = nlohmann::json::parse(r.out);
  CHECK(doc["verdicts"]["ksep_norm"] == "satisfied");
  CHECK(std::abs(doc["tnorm2"]["direct"].get<double>()) < 1e-14);

  REQUIRE(run("state ghz --n 3 --out ghz.json").code == 0);
  r = run("criterion --state ghz.json --partition \"0|1|2\"");
  REQUIRE(r.code == 0);
  doc = nlohmann::json::parse(r.out);
  CHECK(doc["gme"]["bound"].get<double>() == doctest::Approx(3.0));
  CHECK(doc["gme"]["verdict"] == "violated");
}

TEST_CASE("criterion rejects bad partitions and files") {
  REQUIRE(run("state bell --out b2.json").code == 0);
  auto r = run("criterion --state b2.json --partition \"0|0\"");
  CHECK(r.code == 1);
  CHECK(r.out.find("InvalidPartition") != std::string::npos);
  r = run("criterion --state missing.json --partition \"0|1\"");
  CHECK(r.code == 2);
  CHECK(r.out.find("IoError") != std::string::npos);
  std::ofstream(workdir() / "junk.json") << "{\n \"dims\": [2, 2],\n oops";
  r = run("criterion --state junk.json --partition \"0|1\"");
  CHECK(r.code == 2);
  CHECK(r.out.find("line 3") != std::string::npos);
}

TEST_CASE("state file round trip through the tool is bit identical") {
  REQUIRE(run("state random --ensemble bures --dims 2,3 --seed 4 --out r1.json").code == 0);
  REQUIRE(run("state random --ensemble bures --dims 2,3 --seed 4 --out r2.json").code == 0);
  CHECK(slurp(workdir() / "r1.json") == slurp(workdir() / "r2.json"));
  const auto doc = nlohmann::json::parse(slurp(workdir() / "r1.json"));
  CHECK(doc["dims"] == nlohmann::json::array({2, 3}));
}

TEST_CASE("sweep werner") {
  const auto r = run("sweep werner --grid 400");
  REQUIRE(r.code == 0);
  CHECK(r.out.find("criterion_threshold=0.57735") != std::string::npos);
  CHECK(r.out.find("chsh_threshold=0.70710") != std::string::npos);
  const auto side = nlohmann::json::parse(slurp(workdir() / "werner.json"));
  CHECK(side["run_config"]["seed"] == 20240601);
  CHECK(side["csv"] == "werner.csv");
}

TEST_CASE("sweep costs and ghz") {
  auto r = run("sweep costs --k 6 --qubits --out costs6");
  REQUIRE(r.code == 0);
  CHECK(slurp(workdir() / "costs6.csv").find(",6,729,63,") != std::string::npos);
  r = run("sweep ghz --n 4 --partitions all --grid 50");
  REQUIRE(r.code == 0);
  std::istringstream csv(slurp(workdir() / "ghz.csv"));
  std::string header;
  std::getline(csv, header);
  std::size_t partition_columns = 0;
  for (std::size_t pos = 0; (pos = header.find("delta_tilde[", pos)) != std::string::npos; ++pos) ++partition_columns;
  CHECK(partition_columns == 15);
}

TEST_CASE("sweep reruns are byte identical and record the config") {
  REQUIRE(run("sweep bd-geometry --samples 20000 --seed 3 --out bd_a").code == 0);
  REQUIRE(run("sweep bd-geometry --samples 20000 --seed 3 --workers 4 --out bd_b").code == 0);
  CHECK(slurp(workdir() / "bd_a.csv") == slurp(workdir() / "bd_b.csv"));
  REQUIRE(run("sweep bd-geometry --samples 20000 --seed 4 --out bd_c").code == 0);
  CHECK(slurp(workdir() / "bd_a.csv") != slurp(workdir() / "bd_c.csv"));
  const auto side = nlohmann::json::parse(slurp(workdir() / "bd_b.json"));
  CHECK(side["run_config"]["workers"] == 4);
  CHECK(side["run_config"]["seed"] == 3);
}

TEST_CASE("worker count from the environment, flag overrides") {
  REQUIRE(run("sweep costs --k 3 --out env_default").code == 0);
  const std::string env = "QPURE_WORKERS=2 ";
  const std::string cmd = "cd \"" + workdir().string() + "\" && " + env + "\"" QPURE_CLI_PATH "\" ";
  REQUIRE(std::system((cmd + "sweep costs --k 3 --out env_two > /dev/null 2>&1").c_str()) == 0);
  REQUIRE(std::system((cmd + "sweep costs --k 3 --workers 5 --out env_flag > /dev/null 2>&1").c_str()) == 0);
  CHECK(nlohmann::json::parse(slurp(workdir() / "env_default.json"))["run_config"]["workers"] == 1);
  CHECK(nlohmann::json::parse(slurp(workdir() / "env_two.json"))["run_config"]["workers"] == 2);
  CHECK(nlohmann::json::parse(slurp(workdir() / "env_flag.json"))["run_config"]["workers"] == 5);
}

TEST_CASE("sweep usage errors") {
  CHECK(run("sweep teapot").code == 1);
  CHECK(run("sweep werner --grid banana").code == 1);
  CHECK(run("sweep werner --grid 0").code == 1);
  CHECK(run("sweep ghz --n 3 --partitions \"0|1\"").code == 1);
  CHECK(run("").code == 1);
}

TEST_CASE("validate") {
  auto r = run("validate --samples 5");
  CHECK(r.code == 0);
  CHECK(r.out.find("all passed") != std::string::npos);
  r = run("validate --samples 0");
  CHECK(r.code == 1);

  REQUIRE(run("state bell --out good.json").code == 0);
  auto doc = nlohmann::json::parse(slurp(workdir() / "good.json"));
  for (auto& row : doc["matrix"])
    for (auto& z : row) {
      z[0] = z[0].get<double>() * 0.9;
      z[1] = z[1].get<double>() * 0.9;
    }
  std::ofstream(workdir() / "corrupt.json") << doc.dump();
  r = run("validate --samples 5 --state corrupt.json");
  CHECK(r.code == 2);
  CHECK(r.out.find("TraceNotOne") != std::string::npos);
}
