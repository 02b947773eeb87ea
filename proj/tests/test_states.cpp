#include <doctest.h>

#include <cmath>

#include "corrtensor.hpp"
#include "oracles.hpp"
#include "puritylink.hpp"
#include "states.hpp"

using namespace qpure;

namespace {

const PartitionScheme kAB = PartitionScheme::finest(2);

double max_diff(const DensityMatrix& a, const DensityMatrix& b) {
  return (a.matrix() - b.matrix()).cwiseAbs().maxCoeff();
}

}  // namespace

TEST_CASE("Bell states") {
  const auto phi = bell_state(BellKind::PhiPlus);
  CHECK((phi.matrix() - oracle::ket_projector(oracle::phi_plus())).norm() < 1e-15);
  const auto pm = reduced_purities(phi, kAB);
  CHECK(pm.at(1) == doctest::Approx(0.5));
  CHECK(pm.at(2) == doctest::Approx(0.5));
  const auto t = corr_tensor(bell_state(BellKind::PsiMinus), kAB);
  for (std::size_t i = 1; i <= 3; ++i)
    for (std::size_t j = 1; j <= 3; ++j) CHECK(t.at({i, j}) == doctest::Approx(i == j ? -1.0 : 0.0));
  for (auto k : {BellKind::PhiPlus, BellKind::PhiMinus, BellKind::PsiPlus, BellKind::PsiMinus}) {
    CHECK(subtensor_norm2(corr_tensor(bell_state(k), kAB), 0b11) == doctest::Approx(3.0));
    CHECK(parse_bell_kind(bell_kind_name(k)) == k);
  }
  CHECK_THROWS_AS(parse_bell_kind("chi"), Error);
}

TEST_CASE("Werner purities") {
  CHECK(purity(werner(0.25)) == doctest::Approx((1 + 3.0 / 16) / 4));
  CHECK(purity(werner(0.25)) == doctest::Approx(0.296875));
  CHECK(purity(werner(1 / std::sqrt(3.0))) == doctest::Approx(0.5));
  CHECK(purity(werner(1 / std::sqrt(2.0))) == doctest::Approx(5.0 / 8));
  CHECK(purity(werner(0.0)) == doctest::Approx(0.25));
  CHECK_THROWS_AS(werner(1.5), Error);
}

TEST_CASE("Bell-diagonal states") {
  for (double w : {0.0, 0.4, 1.0}) CHECK(max_diff(bd_state(-w, -w, -w), werner(w)) < 1e-15);
  CHECK(max_diff(bd_state(0, 0, 0), maximally_mixed({2, 2})) < 1e-15);
  CHECK(max_diff(bd_state(1, -1, 1), bell_state(BellKind::PhiPlus)) < 1e-15);
  try {
    bd_state(1, 1, 1);
    FAIL("expected NotPSD");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NotPSD);
  }
}

TEST_CASE("noisy GHZ") {
  CHECK(ghz_gme_threshold(4) == doctest::Approx(7.0 / 15));
  const auto mm = noisy_ghz(4, 0.0);
  const auto pm = reduced_purities(mm, PartitionScheme::finest(4));
  for (SubsetMask s = 1; s < 16; ++s) CHECK(pm.at(s) == doctest::Approx(1.0 / pm.subset_dim(s)));
  for (double w : {0.0, 0.3, 1.0}) CHECK(max_diff(noisy_ghz(2, w), werner(w, BellKind::PhiPlus)) < 1e-15);
  CHECK(purity(ghz_state(5)) == doctest::Approx(1.0));
  CHECK_THROWS_AS(noisy_ghz(1, 0.5), Error);
  CHECK_THROWS_AS(noisy_ghz(3, -0.1), Error);
}

TEST_CASE("Haar pure states") {
  Rng rng({42, 0});
  double sum = 0, sum2 = 0;
  const int n = 10000;
  for (int i = 0; i < n; ++i) {
    const auto rho = random_pure_haar({2, 2}, rng);
    if (i < 10) CHECK(purity(rho) == doctest::Approx(1.0));
    const double p = reduced_purities(rho, kAB).at(1);
    sum += p;
    sum2 += p * p;
  }
  const double mean = sum / n, se = std::sqrt((sum2 / n - mean * mean) / n);
  // Lubkin: <P_A> = (dA + dB)/(dA dB + 1) = 4/5 for two qubits.
  CHECK(std::abs(mean - 0.8) < 3 * se);
  // Same moment from an unrelated sampler (normalized complex Gaussian vectors).
  std::mt19937_64 gen(42);
  double osum = 0;
  for (int i = 0; i < n; ++i) {
    const auto m = oracle::random_state(4, gen, 1);
    const std::vector<bool> keep{true, false};
    osum += oracle::purity(oracle::partial_trace(m, {2, 2}, keep));
  }
  CHECK(std::abs(osum / n - mean) < 4 * se * std::sqrt(2.0));

  Rng a({7, 3}), b({7, 3}), c({7, 4});
  const auto sa = random_pure_haar({2, 3}, a), sb = random_pure_haar({2, 3}, b), sc = random_pure_haar({2, 3}, c);
  CHECK((sa.matrix() - sb.matrix()).norm() == 0.0);
  CHECK((sa.matrix() - sc.matrix()).norm() > 1e-3);

  Rng u({1, 1});
  const auto h = haar_unitary(5, u);
  CHECK((h.adjoint() * h - ComplexMatrix::Identity(5, 5)).norm() < 1e-13);
}

TEST_CASE("mixed ensembles") {
  for (std::size_t d : {2u, 4u}) {
    Rng rng({d, 9});
    double sum = 0, sum2 = 0;
    const int n = 10000;
    for (int i = 0; i < n; ++i) {
      const double p = purity(random_mixed(MixedEnsemble::HilbertSchmidt, {d}, rng));
      sum += p;
      sum2 += p * p;
    }
    const double mean = sum / n, se = std::sqrt((sum2 / n - mean * mean) / n);
    const double ref = 2.0 * d / (d * d + 1.0);
    CHECK(std::abs(mean - ref) < 3 * se);
  }
  Rng rng({5, 5});
  for (int i = 0; i < 20; ++i) {
    const auto rho = random_mixed(MixedEnsemble::Bures, {2, 2}, rng);
    CHECK(eigvalsh(rho.matrix())(0) > -1e-12);
    CHECK(std::abs(rho.matrix().trace() - Complex(1.0)) < 1e-12);
  }
}

TEST_CASE("fixed purity sampler") {
  Rng rng({3, 3});
  const auto mm = random_fixed_purity({4}, 0.25, rng);
  const auto ev = eigvalsh(mm.matrix());
  for (int i = 0; i < 4; ++i) CHECK(ev(i) == doctest::Approx(0.25));
  const auto pure = random_fixed_purity({4}, 1.0, rng);
  CHECK(eigvalsh(pure.matrix())(2) < 1e-9);
  for (int rep = 0; rep < 20; ++rep) CHECK(std::abs(purity(random_fixed_purity({4}, 0.5, rng)) - 0.5) <= 1e-6);
  for (double target : {0.05, 0.3, 0.9, 0.999}) {
    const auto rho = random_fixed_purity({2, 2, 2, 2, 2, 2}, target, rng);
    CHECK(std::abs(purity(rho) - target) <= 1e-6);
    CHECK(eigvalsh(rho.matrix())(0) > -1e-12);
  }
  CHECK_THROWS_AS(random_fixed_purity({4}, 0.2, rng), Error);
  CHECK_THROWS_AS(random_fixed_purity({4}, 1.2, rng), Error);
}

TEST_CASE("negativity") {
  Rng rng({1, 2});
  const auto prod = product_state(random_mixed(MixedEnsemble::HilbertSchmidt, {2}, rng),
                                  random_mixed(MixedEnsemble::HilbertSchmidt, {3}, rng));
  CHECK(negativity(prod, {1}) == doctest::Approx(0.0));
  CHECK(negativity(bell_state(BellKind::PhiPlus), {1}) == doctest::Approx(1.0));
  for (double w = 0.0; w <= 1.0; w += 0.05)
    CHECK(negativity(werner(w), {0}) == doctest::Approx(std::max(0.0, (3 * w - 1) / 2)));
}
