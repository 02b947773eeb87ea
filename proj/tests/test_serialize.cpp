#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>

#include <json.hpp>

#include "criteria.hpp"
#include "serialize.hpp"
#include "states.hpp"

using namespace qpure;

TEST_CASE("state JSON round trip is bit identical") {
  Rng rng({11, 0});
  for (const auto& dims : std::vector<std::vector<std::size_t>>{{2, 2}, {3, 2}, {2, 2, 2}}) {
    const auto rho = random_mixed(MixedEnsemble::Bures, dims, rng);
    const auto back = parse_state_json(state_to_json(rho));
    CHECK(back.dims() == rho.dims());
    CHECK((back.matrix().array() == rho.matrix().array()).all());
  }
  const auto path = (std::filesystem::temp_directory_path() / "qpure_roundtrip.json").string();
  const auto ghz = noisy_ghz(3, 0.3);
  save_state_file(ghz, path);
  CHECK((load_state_file(path).matrix().array() == ghz.matrix().array()).all());
  std::remove(path.c_str());
}

TEST_CASE("parse errors carry useful codes") {
  auto code = [](const std::string& text) {
    try {
      parse_state_json(text);
    } catch (const Error& e) {
      return e.code();
    }
    return ErrorCode::Inapplicable;
  };
  CHECK(code("{") == ErrorCode::ParseError);
  CHECK(code(R"({"dims":[2]})") == ErrorCode::ParseError);
  CHECK(code(R"({"dims":[2],"matrix":[[[1,0],[0,0]],[[0,0]]]})") == ErrorCode::ParseError);
  CHECK(code(R"({"dims":[2],"matrix":[[[0.5,0],[0,0]],[[0,0],[0.4,0]]]})") == ErrorCode::TraceNotOne);
  CHECK(code(R"({"dims":[2],"matrix":[[[1.5,0],[0,0]],[[0,0],[-0.5,0]]]})") == ErrorCode::NotPSD);
  CHECK(code(R"({"dims":[3],"matrix":[[[0.5,0],[0,0]],[[0,0],[0.5,0]]]})") == ErrorCode::InvalidDimension);
  try {
    parse_state_json("{\n\"dims\": [2],\n  oops");
    FAIL("expected ParseError");
  } catch (const Error& e) {
    CHECK(std::string(e.what()).find("line 3") != std::string::npos);
  }
  try {
    load_state_file("/nonexistent/state.json");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::IoError);
  }
}

TEST_CASE("number formatting round-trips") {
  for (double v : {0.1, 1.0 / 3, 1e-300, -2.5e17, 0.0, 123456789.0}) CHECK(std::stod(format_number(v)) == v);
  CHECK(format_number(0.5) == "0.5");
}

TEST_CASE("criterion report JSON") {
  const auto r = ksep_verdict(bell_state(BellKind::PhiPlus), PartitionScheme::finest(2));
  const auto doc = nlohmann::json::parse(report_to_json(r));
  CHECK(doc["partition"] == "0|1");
  CHECK(doc["verdicts"]["ksep_norm"] == "violated");
  CHECK(doc["threshold"].get<double>() == 1.0);
  CHECK(std::abs(doc["tnorm2"]["direct"].get<double>() - 3.0) < 1e-12);
  CHECK(std::abs(doc["purities"]["0,1"].get<double>() - 1.0) < 1e-12);
  CHECK(doc["chsh"]["verdict"] == "violated");
  CHECK(doc["gme"].is_null());

  const auto g = ksep_verdict(ghz_state(3), PartitionScheme::finest(3));
  const auto gd = nlohmann::json::parse(report_to_json(g));
  CHECK(gd["gme"]["bound"].get<double>() == doctest::Approx(3.0));
  CHECK(gd["gme"]["verdict"] == "violated");
  CHECK(gd["purities"].size() == 7);
}

TEST_CASE("CSV and sidecar embed the run configuration") {
  SweepResult r;
  r.family = "demo";
  r.columns = {"a", "b", "c"};
  r.rows = {{0.1, std::int64_t{3}, std::string("x")}};
  r.summary["s"] = 1.5;
  std::ostringstream csv;
  write_csv(r, csv);
  CHECK(csv.str() == "a,b,c\n0.1,3,x\n");
  RunConfig cfg;
  cfg.seed = 9;
  cfg.stream = 2;
  cfg.workers = 3;
  cfg.output = "out/demo";
  cfg.tolerances["route"] = 1e-9;
  const auto side = nlohmann::json::parse(sidecar_json(r, cfg, "demo.csv"));
  CHECK(side["run_config"]["seed"] == 9);
  CHECK(side["run_config"]["stream"] == 2);
  CHECK(side["run_config"]["workers"] == 3);
  CHECK(side["run_config"]["output"] == "out/demo");
  CHECK(side["run_config"]["tolerances"]["route"].get<double>() == 1e-9);
  CHECK(side["summary"]["s"].get<double>() == 1.5);
}
