#include "validate.hpp"

#include <bit>
#include <cmath>
#include <sstream>

#include "corrtensor.hpp"
#include "criteria.hpp"
#include "experiments.hpp"
#include "puritylink.hpp"
#include "states.hpp"
#include "subasis.hpp"

namespace qpure {

namespace {

constexpr std::size_t kDigestLimit = 50;

class Checker {
 public:
  explicit Checker(ValidationReport& report) : report_(report) {}

  void expect(bool ok, const std::string& what) {
    ++report_.assertions;
    if (ok) return;
    ++report_.failures;
    if (report_.digest.size() < kDigestLimit) report_.digest.push_back(what);
  }

  void near(double actual, double expected, double tol, const std::string& what) {
    const bool ok = std::abs(actual - expected) <= tol;
    if (ok) {
      ++report_.assertions;
      return;
    }
    std::ostringstream msg;
    msg.precision(17);
    msg << what << ": got " << actual << ", expected " << expected << " within " << tol;
    expect(false, msg.str());
  }

 private:
  ValidationReport& report_;
};

std::string label(const std::vector<std::size_t>& dims, std::size_t sample) {
  std::string s = "dims [";
  for (std::size_t i = 0; i < dims.size(); ++i) s += (i ? "," : "") + std::to_string(dims[i]);
  return s + "] sample " + std::to_string(sample);
}

ComplexMatrix random_local_unitary(const std::vector<std::size_t>& dims, Rng& rng) {
  ComplexMatrix u = haar_unitary(dims[0], rng);
  for (std::size_t i = 1; i < dims.size(); ++i) u = kron(u, haar_unitary(dims[i], rng));
  return u;
}

void check_basis(Checker& c) {
  for (std::size_t d = 2; d <= 6; ++d) {
    const auto basis = generators(d);
    const std::string tag = "basis d=" + std::to_string(d);
    for (std::size_t a = 0; a < basis->size(); ++a)
      for (std::size_t b = 0; b < basis->size(); ++b) {
        const double g = ((*basis)[a] * (*basis)[b]).trace().real() / static_cast<double>(d);
        if (std::abs(g - (a == b ? 1.0 : 0.0)) > 1e-12) c.expect(false, tag + " Gram entry off");
      }
    c.expect(true, tag + " Gram matrix");
    c.near(casimir_check(d), 0.0, 1e-12, tag + " Casimir");
  }
}

void check_state(Checker& c, const DensityMatrix& rho, Rng& rng, const std::string& tag) {
  const auto& dims = rho.dims();
  const std::size_t n = dims.size();
  const double p = purity(rho);

  // matcore
  const auto es = eigh(rho.matrix());
  const ComplexMatrix recon = es.vectors * es.values.cast<Complex>().asDiagonal() * es.vectors.adjoint();
  c.near((recon - rho.matrix()).norm(), 0.0, 1e-9 * std::max(1.0, rho.matrix().norm()), tag + " eigh residual");
  c.near((es.vectors.adjoint() * es.vectors - ComplexMatrix::Identity(rho.matrix().rows(), rho.matrix().cols()))
             .cwiseAbs()
             .maxCoeff(),
         0.0, 1e-9, tag + " eigenvector orthonormality");
  for (std::size_t mask = 1; mask < (std::size_t{1} << n); ++mask) {
    std::vector<std::size_t> keep;
    for (std::size_t f = 0; f < n; ++f)
      if (mask >> f & 1u) keep.push_back(f);
    const auto reduced = partial_trace(rho, keep);
    c.near(reduced.matrix().trace().real(), 1.0, 1e-10, tag + " reduced trace");
    if (keep.size() > 1) {
      // Trace further down to the first kept factor both ways.
      const auto direct = partial_trace(rho, std::vector<std::size_t>{keep[0]});
      const auto nested = partial_trace(reduced, std::vector<std::size_t>{0});
      c.near((direct.matrix() - nested.matrix()).cwiseAbs().maxCoeff(), 0.0, 1e-12, tag + " partial trace composes");
    }
  }

  // corrtensor and puritylink for every partition of the factors
  for (const auto& part : PartitionScheme::enumerate_all(n)) {
    const std::string ptag = tag + " partition " + part.to_string();
    const auto t = corr_tensor(rho, part);
    const SubsetMask full = (SubsetMask{1} << part.k()) - 1;
    c.near(t.values()[0], 1.0, 1e-12, ptag + " t_0 = 1");
    c.near(t.norm2(), static_cast<double>(rho.dim()) * p, 1e-10, ptag + " ‖T‖² = d P");
    c.near(decomposition_check(t), 0.0, 1e-10, ptag + " subset decomposition");
    const auto pm = reduced_purities(rho, part);
    for (const auto& [mask, ps] : pm.entries)
      c.expect(ps >= 1.0 / static_cast<double>(pm.subset_dim(mask)) - 1e-12 && ps <= 1.0 + 1e-12,
               ptag + " purity range");
    const double direct = subtensor_norm2(t, full);
    const double via = tnorm2_from_purities(pm);
    c.near(via, direct, 1e-9, ptag + " main equality");
    const auto budget = total_uncertainty_from_purities(pm);
    c.near(total_uncertainty_direct(rho, part), budget.combinations - direct, 1e-9, ptag + " conservation law");
    const double dt = ksep_delta_tilde(pm);
    c.near(dt, ksep_threshold(pm.block_dims) - direct, 1e-9, ptag + " two forms");
    c.near(entropic_form(pm), dt, 1e-12, ptag + " entropic form");
  }

  // local unitary invariance of every subset norm on the finest partition
  {
    const auto finest = PartitionScheme::finest(n);
    const ComplexMatrix u = random_local_unitary(dims, rng);
    const auto rotated = DensityMatrix::unchecked(u * rho.matrix() * u.adjoint(), dims);
    const auto before = all_subset_norms2(corr_tensor(rho, finest));
    const auto after = all_subset_norms2(corr_tensor(rotated, finest));
    for (std::size_t s = 1; s < before.size(); ++s) c.near(after[s], before[s], 1e-9, tag + " LU invariance");
  }

  // qubit-specific identities
  for (std::size_t f = 0; f < n; ++f) {
    if (dims[f] != 2) continue;
    for (int i = 1; i <= 3; ++i)
      for (int j = 1; j <= 3; ++j)
        if (i != j) c.near(rs_check_single_qubit(rho, {f}, i, j), 0.0, 1e-10, tag + " RS saturation");
  }
  if (dims == std::vector<std::size_t>{2, 2}) {
    const auto ab = PartitionScheme::finest(2);
    const auto rep = ksep_verdict(rho, ab);
    if (rep.chsh->verdict == Verdict::Violated)
      c.expect(rep.verdicts.at("ksep_norm") == Verdict::Violated, tag + " CHSH implies k-sep violation");
    c.expect(rep.chsh->verdict == rep.chsh->purity_form, tag + " CHSH purity form");
    const auto td = ksep_verdict(t_diagonal_state(rho), ab);
    c.expect(td.verdicts.at("ksep_norm") == rep.verdicts.at("ksep_norm"), tag + " T-diagonal keeps verdict");
    c.near(td.tnorm2_direct, rep.tnorm2_direct, 1e-9, tag + " T-diagonal keeps ‖t‖²");
    const auto sums = uncertainty_sums_two_qubit(rho, {0}, {1});
    c.near(sums.sum_ij, 2.0 * (sums.purity_a + sums.purity_b - 2.0 * sums.purity_ab + 4.0), 1e-9,
           tag + " two-index uncertainty sum");
    c.near(sums.sum_single, 2.0 * (2.0 - sums.purity_a), 1e-9, tag + " single-qubit uncertainty sum");
  }
}

}  // namespace

ValidationReport run_validation(std::size_t samples, std::uint64_t seed, std::size_t workers) {
  if (samples == 0) throw Error(ErrorCode::InvalidArgument, "validation needs samples > 0");
  ValidationReport report;
  Checker c(report);

  check_basis(c);

  for (int i = 0; i <= 100; ++i) {
    const double w = i / 100.0;
    c.near(purity(werner(w)), (1.0 + 3.0 * w * w) / 4.0, 1e-12, "werner purity");
  }
  for (std::size_t n = 2; n <= 4; ++n)
    for (double p : {0.0, 0.3, 0.7, 1.0}) {
      const auto rho = noisy_ghz(n, p);
      for (std::size_t g = 1; g < n; ++g) {
        std::vector<std::size_t> keep;
        for (std::size_t f = 0; f < g; ++f) keep.push_back(f);
        const double expected = p * p / 2.0 + (2.0 * p * (1.0 - p) + (1.0 - p) * (1.0 - p)) / std::ldexp(1.0, static_cast<int>(g));
        c.near(purity(partial_trace(rho, keep)), expected, 1e-10, "noisy GHZ reduced purity");
      }
    }

  const std::vector<std::vector<std::size_t>> dim_sets{{2, 2}, {2, 3}, {3, 3}, {2, 2, 2}, {2, 2, 2, 2}};
  std::vector<ValidationReport> parts(dim_sets.size());
  RunConfig cfg;
  cfg.seed = seed;
  cfg.workers = workers;
  for_each_chunk(dim_sets.size(), workers, [&](std::size_t k) {
    Checker ck(parts[k]);
    Rng rng = chunk_rng(cfg, k);
    const auto& dims = dim_sets[k];
    const std::size_t count = dims.size() == 4 ? std::max<std::size_t>(1, samples / 4) : samples;
    for (std::size_t s = 0; s < count; ++s) {
      const auto rho = (s % 3 == 0) ? random_pure_haar(dims, rng)
                                    : random_mixed(s % 3 == 1 ? MixedEnsemble::HilbertSchmidt : MixedEnsemble::Bures,
                                                   dims, rng);
      check_state(ck, rho, rng, label(dims, s));
    }
  });
  for (const auto& p : parts) {
    report.assertions += p.assertions;
    report.failures += p.failures;
    for (const auto& line : p.digest)
      if (report.digest.size() < kDigestLimit) report.digest.push_back(line);
  }

  // convexity of the satisfying set for two and three qubits
  Rng rng({seed, 0xC0FFEE});
  for (std::vector<std::size_t> dims : {std::vector<std::size_t>{2, 2}, std::vector<std::size_t>{2, 2, 2}}) {
    const auto part = PartitionScheme::finest(dims.size());
    const SubsetMask full = (SubsetMask{1} << dims.size()) - 1;
    std::vector<DensityMatrix> pool;
    while (pool.size() < 2 * samples) {
      auto rho = random_mixed(MixedEnsemble::HilbertSchmidt, dims, rng);
      if (subtensor_norm2(corr_tensor(rho, part), full) <= 1.0) pool.push_back(std::move(rho));
    }
    for (std::size_t s = 0; s < samples; ++s) {
      const double p = rng.uniform();
      const auto mix = DensityMatrix::unchecked(p * pool[2 * s].matrix() + (1.0 - p) * pool[2 * s + 1].matrix(), dims);
      c.expect(subtensor_norm2(corr_tensor(mix, part), full) <= 1.0 + 1e-9, "convexity of satisfying set");
    }
  }
  return report;
}

}  // namespace qpure
