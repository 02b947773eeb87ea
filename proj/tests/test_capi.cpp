// Exercises the shared library through its C header only.
#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <cstring>
#include <filesystem>
#include <string>
#include <thread>
#include <vector>

#include <json.hpp>

#include "qpure/qpure.h"

namespace {

struct Owned {
  qpure_state* s = nullptr;
  ~Owned() { qpure_state_free(s); }
};

struct Text {
  char* p = nullptr;
  ~Text() { qpure_string_free(p); }
};

std::string tmp(const char* name) { return (std::filesystem::temp_directory_path() / name).string(); }

}  // namespace

TEST_CASE("version and status names") {
  CHECK(std::string(qpure_version()) == "0.1.0");
  CHECK(std::string(qpure_status_name(QPURE_ERR_TRACE_NOT_ONE)) == "TraceNotOne");
  CHECK(std::string(qpure_status_name(QPURE_OK)) == "Ok");
}

TEST_CASE("create from raw entries and query") {
  const size_t dims[] = {2, 2};
  std::vector<double> m(32, 0.0);
  for (int i = 0; i < 4; ++i) m[2 * (i * 4 + i)] = 0.25;
  Owned st;
  REQUIRE(qpure_state_create(dims, 2, m.data(), &st.s) == QPURE_OK);
  size_t d = 0, f = 0;
  double p = 0;
  CHECK(qpure_state_dim(st.s, &d) == QPURE_OK);
  CHECK(qpure_state_factors(st.s, &f) == QPURE_OK);
  CHECK(qpure_state_purity(st.s, &p) == QPURE_OK);
  CHECK(d == 4);
  CHECK(f == 2);
  CHECK(p == doctest::Approx(0.25));

  m[0] = 0.15;
  Owned bad;
  CHECK(qpure_state_create(dims, 2, m.data(), &bad.s) == QPURE_ERR_TRACE_NOT_ONE);
  CHECK(bad.s == nullptr);
  CHECK(std::string(qpure_last_error()).find("TraceNotOne") != std::string::npos);
  CHECK(qpure_state_create(nullptr, 2, m.data(), &bad.s) == QPURE_ERR_INVALID_ARGUMENT);
}

TEST_CASE("named families and criterion report") {
  Owned bell;
  REQUIRE(qpure_state_named("bell", "phi+", 0, 0, 0, 0, &bell.s) == QPURE_OK);
  Text report;
  REQUIRE(qpure_criterion_report(bell.s, "0|1", &report.p) == QPURE_OK);
  const auto doc = nlohmann::json::parse(report.p);
  CHECK(doc["verdicts"]["ksep_norm"] == "violated");
  CHECK(doc["threshold"].get<double>() == 1.0);
  CHECK(std::abs(doc["tnorm2"]["purities"].get<double>() - 3.0) < 1e-12);

  double direct = 0, via = 0, neg = 0, ut = 0, ut_p = 0, n = 0;
  CHECK(qpure_tnorm2(bell.s, "0|1", &direct, &via) == QPURE_OK);
  CHECK(direct == doctest::Approx(3.0));
  CHECK(via == doctest::Approx(3.0));
  CHECK(qpure_state_negativity(bell.s, "1", &neg) == QPURE_ERR_INVALID_PARTITION);
  CHECK(qpure_total_uncertainty(bell.s, "0|1", &ut, &ut_p, &n) == QPURE_OK);
  CHECK(ut == doctest::Approx(6.0));
  CHECK(ut_p == doctest::Approx(6.0));
  CHECK(n == 9.0);

  Text bad_report;
  CHECK(qpure_criterion_report(bell.s, "0|0", &bad_report.p) == QPURE_ERR_INVALID_PARTITION);
  CHECK(bad_report.p == nullptr);

  Owned w, ghz, mm, bd;
  CHECK(qpure_state_named("werner", nullptr, 0, 0.5, 0, 0, &w.s) == QPURE_OK);
  CHECK(qpure_state_named("ghz", nullptr, 3, 1.0, 0, 0, &ghz.s) == QPURE_OK);
  CHECK(qpure_state_named("mm", nullptr, 2, 0, 0, 0, &mm.s) == QPURE_OK);
  CHECK(qpure_state_named("bd", nullptr, 0, 1, 1, 1, &bd.s) == QPURE_ERR_NOT_PSD);
  CHECK(qpure_state_named("nope", nullptr, 0, 0, 0, 0, &bd.s) == QPURE_ERR_INVALID_ARGUMENT);
  Text g;
  REQUIRE(qpure_criterion_report(ghz.s, "0|1|2", &g.p) == QPURE_OK);
  const auto gd = nlohmann::json::parse(g.p);
  CHECK(gd["gme"]["bound"].get<double>() == doctest::Approx(3.0));
  CHECK(gd["gme"]["verdict"] == "violated");
}

TEST_CASE("JSON and file round trip through the C API") {
  const size_t dims[] = {2, 3};
  Owned a;
  REQUIRE(qpure_state_random("bures", dims, 2, 0, 5, 1, &a.s) == QPURE_OK);
  Text js;
  REQUIRE(qpure_state_to_json(a.s, &js.p) == QPURE_OK);
  Owned b;
  REQUIRE(qpure_state_from_json(js.p, &b.s) == QPURE_OK);
  Text js2;
  REQUIRE(qpure_state_to_json(b.s, &js2.p) == QPURE_OK);
  CHECK(std::strcmp(js.p, js2.p) == 0);

  const auto path = tmp("qpure_capi_state.json");
  CHECK(qpure_state_save(a.s, path.c_str()) == QPURE_OK);
  Owned c;
  CHECK(qpure_state_load(path.c_str(), &c.s) == QPURE_OK);
  std::remove(path.c_str());
  Owned missing;
  CHECK(qpure_state_load("/nonexistent/x.json", &missing.s) == QPURE_ERR_IO);
  Owned broken;
  CHECK(qpure_state_from_json("{\"dims\":", &broken.s) == QPURE_ERR_PARSE);

  Owned fixed;
  CHECK(qpure_state_random("fixed", dims, 2, 0.4, 1, 0, &fixed.s) == QPURE_OK);
  double p = 0;
  qpure_state_purity(fixed.s, &p);
  CHECK(std::abs(p - 0.4) <= 1e-6);
  CHECK(qpure_state_random("fixed", dims, 2, 0.1, 1, 0, &broken.s) == QPURE_ERR_INVALID_PURITY);
}

TEST_CASE("sweeps and validation") {
  const auto prefix = tmp("qpure_capi_werner");
  Text summary;
  REQUIRE(qpure_sweep("werner", R"({"grid": 50})", prefix.c_str(), &summary.p) == QPURE_OK);
  CHECK(std::string(summary.p).rfind("werner ", 0) == 0);
  CHECK(std::filesystem::exists(prefix + ".csv"));
  CHECK(std::filesystem::exists(prefix + ".json"));
  std::remove((prefix + ".csv").c_str());
  std::remove((prefix + ".json").c_str());

  Text costs;
  REQUIRE(qpure_sweep("costs", R"({"k": 6, "qubits": true})", nullptr, &costs.p) == QPURE_OK);
  CHECK(std::string(costs.p).find("correlation_elements=729") != std::string::npos);
  CHECK(std::string(costs.p).find("purities=63") != std::string::npos);

  Text none;
  CHECK(qpure_sweep("tea", "{}", nullptr, &none.p) == QPURE_ERR_INVALID_ARGUMENT);
  CHECK(qpure_sweep("werner", "{", nullptr, &none.p) == QPURE_ERR_PARSE);
  CHECK(qpure_sweep("werner", R"({"grid": 0})", nullptr, &none.p) == QPURE_ERR_INVALID_ARGUMENT);

  int passed = 0;
  size_t assertions = 0;
  Text digest;
  REQUIRE(qpure_validate(3, 1, 1, &passed, &assertions, &digest.p) == QPURE_OK);
  CHECK(passed == 1);
  CHECK(assertions > 100);
  CHECK(qpure_validate(0, 1, 1, &passed, &assertions, nullptr) == QPURE_ERR_INVALID_ARGUMENT);
}

TEST_CASE("last error is per thread") {
  Owned s;
  qpure_state_named("nope", nullptr, 0, 0, 0, 0, &s.s);
  std::string other;
  std::thread t([&] { other = qpure_last_error(); });
  t.join();
  CHECK(other.empty());
  CHECK(std::string(qpure_last_error()).find("nope") != std::string::npos);
}
