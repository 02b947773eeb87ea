#include "criteria.hpp"

#include <algorithm>
#include <bit>
#include <cmath>

#include "subasis.hpp"

namespace qpure {

const char* verdict_name(Verdict v) noexcept {
  switch (v) {
    case Verdict::Violated: return "violated";
    case Verdict::Satisfied: return "satisfied";
    case Verdict::Inapplicable: return "inapplicable";
  }
  return "inapplicable";
}

namespace {

Verdict exceeds(double value, double threshold) {
  return value > threshold + kVerdictTieBand ? Verdict::Violated : Verdict::Satisfied;
}

double alternating_sum(const PurityMap& pm, double (*weight)(double)) {
  const std::size_t k = pm.k();
  const SubsetMask full = (SubsetMask{1} << k) - 1;
  std::vector<double> terms;
  for (SubsetMask s = 1; s <= full; ++s) {
    const auto g = static_cast<std::size_t>(std::popcount(s));
    const double sign = ((k - g) % 2 == 0) ? 1.0 : -1.0;
    terms.push_back(sign * static_cast<double>(pm.subset_dim(s)) * weight(pm.at(s)));
  }
  return compensated_sum(terms);
}

bool is_qubit_pair(const std::vector<std::size_t>& block_dims) {
  return block_dims.size() == 2 && block_dims[0] == 2 && block_dims[1] == 2;
}

}  // namespace

double ksep_threshold(const std::vector<std::size_t>& block_dims) {
  double t = 1.0;
  for (std::size_t d : block_dims) t *= static_cast<double>(d - 1);
  return t;
}

double ksep_delta_tilde(const PurityMap& pm) {
  return alternating_sum(pm, [](double p) { return 1.0 - p; });
}

double entropic_form(const PurityMap& pm) {
  return alternating_sum(pm, [](double p) { return 1.0 - std::exp(-renyi2(p)); });
}

CriterionReport ksep_verdict(const DensityMatrix& rho, const PartitionScheme& partition) {
  const auto t = corr_tensor(rho, partition);
  CriterionReport r{partition, t.block_dims(), reduced_purities(rho, partition), 0, 0, 0, 0, 0, {}, {}, {}, {}};
  const SubsetMask full = (SubsetMask{1} << partition.k()) - 1;
  r.tnorm2_direct = subtensor_norm2(t, full);
  r.tnorm2_purities = tnorm2_from_purities(r.purities);
  r.threshold = ksep_threshold(r.block_dims);
  r.delta_tilde = ksep_delta_tilde(r.purities);
  r.entropic = entropic_form(r.purities);

  r.verdicts["ksep_purity"] = -r.delta_tilde > kVerdictTieBand ? Verdict::Violated : Verdict::Satisfied;
  r.verdicts["ksep_norm"] = exceeds(r.tnorm2_direct, r.threshold);
  r.verdicts["ksep_entropic"] = -r.entropic > kVerdictTieBand ? Verdict::Violated : Verdict::Satisfied;

  const auto budget = total_uncertainty_from_purities(r.purities);
  r.auxiliary["combinations"] = budget.combinations;
  r.auxiliary["total_uncertainty"] = budget.total_uncertainty;
  r.auxiliary["imag_residue"] = t.max_imag_residue();

  if (is_qubit_pair(r.block_dims)) {
    r.chsh = chsh_horodecki(rho, partition);
    r.verdicts["chsh"] = r.chsh->verdict;
  } else {
    r.verdicts["chsh"] = Verdict::Inapplicable;
  }
  if (r.block_dims.size() == 3 && r.block_dims[0] == r.block_dims[1] && r.block_dims[1] == r.block_dims[2]) {
    r.gme = gme_three_qudit_check(rho, partition);
    r.verdicts["gme3"] = r.gme->verdict;
  } else {
    r.verdicts["gme3"] = Verdict::Inapplicable;
  }
  return r;
}

double gme_three_qudit_bound(std::size_t d) {
  const auto x = static_cast<double>(d);
  return 8.0 * (x - 1.0) * (x * x - 1.0) / (x * x * x);
}

GmeResult gme_three_qudit_check(const DensityMatrix& rho, const PartitionScheme& partition) {
  const auto dims = partition.block_dims(rho.dims());
  if (dims.size() != 3 || dims[0] != dims[1] || dims[1] != dims[2])
    throw Error(ErrorCode::Inapplicable, "three-qudit GME bound needs exactly three blocks of equal dimension");
  const auto d = static_cast<double>(dims[0]);
  const auto pm = reduced_purities(rho, partition);
  const auto t = corr_tensor(rho, partition);

  GmeResult g;
  g.tnorm2 = subtensor_norm2(t, 0b111);
  g.bound = gme_three_qudit_bound(dims[0]);
  g.purity_form = compensated_sum({d * d * d * pm.at(0b111), d * pm.at(0b001), d * pm.at(0b010), d * pm.at(0b100),
                                   -d * d * pm.at(0b011), -d * d * pm.at(0b101), -d * d * pm.at(0b110), -1.0});
  g.verdict = exceeds(g.tnorm2, g.bound);
  return g;
}

Eigen::Matrix3d two_qubit_correlation_matrix(const CorrelationTensor& t) {
  if (!is_qubit_pair(t.block_dims()))
    throw Error(ErrorCode::Inapplicable, "correlation matrix needs a two-qubit partition");
  Eigen::Matrix3d m;
  for (std::size_t i = 1; i <= 3; ++i)
    for (std::size_t j = 1; j <= 3; ++j)
      m(static_cast<Eigen::Index>(i - 1), static_cast<Eigen::Index>(j - 1)) = t.at({i, j});
  return m;
}

ChshResult chsh_horodecki(const DensityMatrix& rho, const PartitionScheme& partition) {
  const auto dims = partition.block_dims(rho.dims());
  if (!is_qubit_pair(dims)) throw Error(ErrorCode::Inapplicable, "CHSH criterion needs a 2x2 qubit bipartition");
  const auto tm = two_qubit_correlation_matrix(corr_tensor(rho, partition));
  const Eigen::Matrix3d u = tm.transpose() * tm;
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> solver(u, Eigen::EigenvaluesOnly);
  const auto& ev = solver.eigenvalues();
  ChshResult c;
  c.u = {ev(2), ev(1), ev(0)};
  c.verdict = exceeds(c.u[0] + c.u[1], 1.0);
  const auto pm = reduced_purities(rho, partition);
  c.rest = rest_two_qubit_tdiag(pm.at(0b01), pm.at(0b10), pm.at(0b11));
  c.purity_form = exceeds(-c.rest, c.u[2]);
  return c;
}

double bell_partial_sum(const CorrelationTensor& t, const std::vector<QubitFrame>& frames) {
  const std::size_t n = t.k();
  for (std::size_t d : t.block_dims())
    if (d != 2) throw Error(ErrorCode::Inapplicable, "Bell partial sum needs qubit blocks");
  if (frames.size() != n) throw Error(ErrorCode::InvalidFrame, "one frame per qubit is required");
  for (std::size_t q = 0; q < n; ++q) {
    const auto& f = frames[q];
    if (std::abs(f[0].squaredNorm() - 1.0) > 1e-10 || std::abs(f[1].squaredNorm() - 1.0) > 1e-10 ||
        std::abs(f[0].dot(f[1])) > 1e-10)
      throw Error(ErrorCode::InvalidFrame, "frame of qubit " + std::to_string(q) + " is not orthonormal");
  }
  const SubsetMask full = (SubsetMask{1} << n) - 1;
  std::vector<double> current = subset_view(t, full).values;  // 3^n entries, qubit 0 slowest

  // Mode-by-mode contraction with the 2x3 frame matrix; after step q the
  // leading q+1 modes have extent 2.
  std::size_t outer = 1;
  for (std::size_t q = 0; q < n; ++q) {
    std::size_t inner = 1;
    for (std::size_t r = q + 1; r < n; ++r) inner *= 3;
    std::vector<double> next(outer * 2 * inner, 0.0);
    for (std::size_t o = 0; o < outer; ++o)
      for (std::size_t a = 0; a < 2; ++a)
        for (std::size_t j = 0; j < 3; ++j) {
          const double w = frames[q][a](static_cast<Eigen::Index>(j));
          for (std::size_t in = 0; in < inner; ++in)
            next[(o * 2 + a) * inner + in] += w * current[(o * 3 + j) * inner + in];
        }
    current = std::move(next);
    outer *= 2;
  }
  double s = 0.0;
  for (double v : current) s += v * v;
  return s;
}

TDiagonalForm t_diagonalize(const Eigen::Matrix3d& t) {
  Eigen::JacobiSVD<Eigen::Matrix3d> svd(t, Eigen::ComputeFullU | Eigen::ComputeFullV);
  TDiagonalForm f{svd.matrixU(), svd.matrixV(), svd.singularValues()};
  // Singular values come sorted descending, so column 2 pairs with the smallest.
  if (f.left.determinant() < 0) {
    f.left.col(2) *= -1.0;
    f.diag(2) *= -1.0;
  }
  if (f.right.determinant() < 0) {
    f.right.col(2) *= -1.0;
    f.diag(2) *= -1.0;
  }
  return f;
}

DensityMatrix two_qubit_from_bloch(const Eigen::Vector3d& r, const Eigen::Vector3d& s, const Eigen::Matrix3d& t) {
  const auto basis = generators(2);
  const ComplexMatrix id = ComplexMatrix::Identity(2, 2);
  ComplexMatrix m = kron(id, id);
  for (std::size_t i = 1; i <= 3; ++i) {
    const auto ii = static_cast<Eigen::Index>(i - 1);
    m += r(ii) * kron((*basis)[i], id) + s(ii) * kron(id, (*basis)[i]);
    for (std::size_t j = 1; j <= 3; ++j)
      m += t(ii, static_cast<Eigen::Index>(j - 1)) * kron((*basis)[i], (*basis)[j]);
  }
  return validate_density(m / 4.0, {2, 2});
}

DensityMatrix t_diagonal_state(const DensityMatrix& rho) {
  if (rho.dims() != std::vector<std::size_t>{2, 2})
    throw Error(ErrorCode::Inapplicable, "T-diagonal form needs a two-qubit state");
  const auto tensor = corr_tensor(rho, PartitionScheme::finest(2));
  const auto tm = two_qubit_correlation_matrix(tensor);
  Eigen::Vector3d r, s;
  for (std::size_t i = 1; i <= 3; ++i) {
    r(static_cast<Eigen::Index>(i - 1)) = tensor.at({i, 0});
    s(static_cast<Eigen::Index>(i - 1)) = tensor.at({0, i});
  }
  const auto f = t_diagonalize(tm);
  const Eigen::Matrix3d d = f.left.transpose() * tm * f.right;
  return two_qubit_from_bloch(f.left.transpose() * r, f.right.transpose() * s, d);
}

}  // namespace qpure
