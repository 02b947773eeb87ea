#include <doctest.h>

#include <cmath>
#include <numbers>
#include <sstream>

#include "criteria.hpp"
#include "experiments.hpp"
#include "oracles.hpp"
#include "puritylink.hpp"
#include "serialize.hpp"

using namespace qpure;

namespace {

std::string csv_of(const SweepResult& r) {
  std::ostringstream out;
  write_csv(r, out);
  return out.str();
}

}  // namespace

TEST_CASE("bisect finds a simple root") {
  CHECK(bisect([](double x) { return x * x - 2; }, 0.0, 2.0) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));
  CHECK_THROWS_AS(bisect([](double x) { return x * x + 1; }, 0.0, 1.0), Error);
}

TEST_CASE("Werner sweep thresholds") {
  const auto r = werner_sweep(41, {});
  CHECK(std::abs(r.summary.at("criterion_threshold") - 1 / std::sqrt(3.0)) <= 1e-9);
  CHECK(std::abs(r.summary.at("chsh_threshold") - 1 / std::sqrt(2.0)) <= 1e-9);
  CHECK(std::abs(r.summary.at("separability_threshold") - 1.0 / 3) <= 1e-9);
  CHECK(std::abs(r.summary.at("purity_separable_boundary") - 1.0 / 3) <= 1e-9);
  CHECK(std::abs(r.summary.at("purity_criterion_boundary") - 0.5) <= 1e-9);
  CHECK(std::abs(r.summary.at("purity_chsh_boundary") - 5.0 / 8) <= 1e-9);
  CHECK(r.rows.size() == 41);
  CHECK(r.summary.at("max_route_difference") < 1e-12);
}

TEST_CASE("Bell-diagonal closed form against a grid oracle") {
  const double exact = bd_detected_ratio_exact();
  // cap-volume expression evaluated independently
  const double pi = std::numbers::pi, s3 = std::sqrt(3.0);
  CHECK(exact == doctest::Approx((8.0 / 3 + 4 * pi / 3 - 32 * s3 * pi / 27) / (4.0 / 3)).epsilon(1e-14));
  CHECK(std::abs(exact - oracle::bd_ratio_by_grid(300)) < 2e-3);
  CHECK(bd_detected_ratio_printed_formula() == doctest::Approx(0.23766).epsilon(1e-4));
}

TEST_CASE("Bell-diagonal Monte Carlo") {
  RunConfig cfg;
  cfg.seed = 77;
  const auto g = bd_geometry(100000, cfg);
  CHECK(std::abs(g.entangled_fraction - 0.5) < 3 * g.stderr_entangled + 1e-12);
  CHECK(std::abs(g.ratio - bd_detected_ratio_exact()) < 3 * g.stderr_ratio);
  CHECK(g.audited > 0);
  CHECK(g.audit_max_error < 1e-12);
  CHECK(g.form_disagreements == 0);
}

TEST_CASE("first_exceeding") {
  const std::vector<double> sq{0.5, 0.4, 0.3, 0.0};
  CHECK(first_exceeding(sq, {0, 1, 2, 3}) == 3);
  CHECK(first_exceeding(sq, {3, 2, 0, 1}) == 4);
  CHECK(first_exceeding({0.1, 0.1}, {0, 1}) == 2);
}

TEST_CASE("small N_meas scan") {
  NmeasOptions o;
  o.qubits = 3;
  o.bins = 5;
  o.states_per_bin = 10;
  o.shuffles = 4;
  const auto r = nmeas_scan(o, {});
  CHECK(r.summary.at("correlation_elements") == 27);
  CHECK(r.summary.at("purity_route_count") == 7);
  CHECK(r.summary.at("max_route_difference") < 1e-10);
  if (r.summary.at("states_below_one") > 0) {
    CHECK(r.summary.at("nmeas_below_one_min") == 27);
    CHECK(r.summary.at("nmeas_below_one_max") == 27);
  }
}

TEST_CASE("negativity scan") {
  NegativityOptions o;
  o.samples = 2000;
  const auto r = negativity_scan(o, {});
  CHECK(r.summary.at("accepted") == 2000);
  CHECK(r.summary.at("failures") > 0);
  CHECK(r.summary.at("max_failure_negativity") <= 0.45);
  CHECK(r.summary.at("werner_detection_onset") == doctest::Approx((std::sqrt(3.0) - 1) / 2));
}

TEST_CASE("GHZ sweep") {
  const auto parts = PartitionScheme::enumerate_all(4);
  const auto r = ghz_sweep(4, 16, parts, {});
  CHECK(r.summary.at("gme_threshold") == doctest::Approx(7.0 / 15));
  REQUIRE(r.columns.size() == 2 + parts.size());
  // p = 0 is maximally mixed: |t|^2 = 0, so delta_tilde sits at the threshold prod(d_g - 1).
  // p = 1 row: the finest partition is detected.
  const auto& first = r.rows.front();
  const auto& last = r.rows.back();
  CHECK(std::get<double>(first[0]) == 0.0);
  CHECK(std::get<double>(last[0]) == 1.0);
  for (std::size_t j = 0; j < parts.size(); ++j) {
    double thr = 1.0;
    for (auto d : parts[j].block_dims({2, 2, 2, 2})) thr *= static_cast<double>(d - 1);
    CHECK(std::get<double>(first[2 + j]) == doctest::Approx(thr).epsilon(1e-12));
  }
  const auto finest = std::find(r.columns.begin(), r.columns.end(), "delta_tilde[0|1|2|3]");
  REQUIRE(finest != r.columns.end());
  CHECK(std::get<double>(last[static_cast<std::size_t>(finest - r.columns.begin())]) < 0);
  // pure GHZ, finest partition: 1 - ||t||^2 with ||t||^2 = 2^3 + 1 = 9
  CHECK(std::get<double>(last[static_cast<std::size_t>(finest - r.columns.begin())]) == doctest::Approx(-8.0));
}

TEST_CASE("cost table") {
  const auto q = cost_row("qubits", std::vector<std::size_t>(6, 2));
  CHECK(q.correlation_elements == 729);
  CHECK(q.purities == 63);
  const auto t = cost_row("qutrits", {3, 3, 3});
  CHECK(t.correlation_elements == 512);
  CHECK(t.purities == 7);
  const auto d4 = cost_row("d4", {4, 4, 4});
  CHECK(d4.correlation_elements == 3375);
  CHECK(d4.purities == 7);
  CHECK(d4.printed_scaling == 729);
  CHECK(t.printed_scaling == 64);
  CHECK(cost_table({q, t}).rows.size() == 2);
  CHECK_THROWS_AS(cost_row("bad", {1, 2}), Error);
}

TEST_CASE("maximally mixed reductions threshold") {
  Rng rng({1, 1});
  const auto two = mm_reduction_threshold(2, rng);
  CHECK(two.threshold == 0.5);
  CHECK(two.max_residual <= 1e-12);
  const auto four = mm_reduction_threshold(4, rng);
  CHECK(four.threshold == 0.125);
  CHECK(four.max_residual <= 1e-12);
}

TEST_CASE("bipartite qudit purity bound") {
  CHECK(qudit_bound_check(10, 10) == doctest::Approx(0.82));
  CHECK(qudit_bound_check(2, 2) == doctest::Approx(0.5));
  CHECK(qudit_bound_check(100, 2) == doctest::Approx(0.5));
}

TEST_CASE("sampler moments") {
  CHECK(hs_mean_purity(4) == doctest::Approx(8.0 / 17));
  CHECK(bures_mean_purity_printed(2) > 1.0);
  CHECK(bures_mean_purity(2) == doctest::Approx(0.875));
  RunConfig cfg;
  const auto m = purity_moment(MixedEnsemble::HilbertSchmidt, 3, 4000, cfg);
  CHECK(std::abs(m.mean - hs_mean_purity(3)) < 3 * m.stderr_mean);
  const auto b = purity_moment(MixedEnsemble::Bures, 2, 4000, cfg);
  CHECK(std::abs(b.mean - bures_mean_purity(2)) < 3.5 * b.stderr_mean);
}

TEST_CASE("results do not depend on the worker count") {
  RunConfig one, three;
  three.workers = 3;
  CHECK(csv_of(bd_geometry_sweep(20000, one)) == csv_of(bd_geometry_sweep(20000, three)));
  NegativityOptions o;
  o.samples = 500;
  o.min_negativity = 0.3;
  CHECK(csv_of(negativity_scan(o, one)) == csv_of(negativity_scan(o, three)));
  CHECK(csv_of(moments_sweep({2, 3}, 3000, one)) == csv_of(moments_sweep({2, 3}, 3000, three)));
  RunConfig other = one;
  other.seed = 1;
  CHECK(csv_of(bd_geometry_sweep(20000, one)) != csv_of(bd_geometry_sweep(20000, other)));
}

TEST_CASE("chunk streams differ") {
  RunConfig cfg;
  auto a = chunk_rng(cfg, 0), b = chunk_rng(cfg, 1);
  CHECK(a.next_u64() != b.next_u64());
}
