#include "states.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace qpure {

BellKind parse_bell_kind(std::string_view name) {
  if (name == "phi+") return BellKind::PhiPlus;
  if (name == "phi-") return BellKind::PhiMinus;
  if (name == "psi+") return BellKind::PsiPlus;
  if (name == "psi-") return BellKind::PsiMinus;
  throw Error(ErrorCode::InvalidArgument, "unknown Bell state '" + std::string(name) + "'");
}

const char* bell_kind_name(BellKind kind) noexcept {
  switch (kind) {
    case BellKind::PhiPlus: return "phi+";
    case BellKind::PhiMinus: return "phi-";
    case BellKind::PsiPlus: return "psi+";
    case BellKind::PsiMinus: return "psi-";
  }
  return "phi+";
}

DensityMatrix pure_state(const Eigen::VectorXcd& psi, std::vector<std::size_t> dims) {
  const Eigen::VectorXcd v = psi / psi.norm();
  return validate_density(v * v.adjoint(), std::move(dims));
}

DensityMatrix maximally_mixed(std::vector<std::size_t> dims) {
  const auto d = static_cast<Eigen::Index>(product(dims));
  return validate_density(ComplexMatrix::Identity(d, d) / static_cast<double>(d), std::move(dims));
}

DensityMatrix product_state(const DensityMatrix& a, const DensityMatrix& b) {
  std::vector<std::size_t> dims(a.dims());
  dims.insert(dims.end(), b.dims().begin(), b.dims().end());
  return DensityMatrix::unchecked(kron(a.matrix(), b.matrix()), std::move(dims));
}

DensityMatrix bell_state(BellKind kind) {
  Eigen::VectorXcd psi = Eigen::VectorXcd::Zero(4);
  switch (kind) {
    case BellKind::PhiPlus: psi << 1, 0, 0, 1; break;
    case BellKind::PhiMinus: psi << 1, 0, 0, -1; break;
    case BellKind::PsiPlus: psi << 0, 1, 1, 0; break;
    case BellKind::PsiMinus: psi << 0, 1, -1, 0; break;
  }
  return pure_state(psi, {2, 2});
}

DensityMatrix werner(double w, BellKind kind) {
  if (!(w >= 0.0 && w <= 1.0)) throw Error(ErrorCode::InvalidArgument, "Werner weight must lie in [0, 1]");
  const ComplexMatrix m = w * bell_state(kind).matrix() + (1.0 - w) * ComplexMatrix::Identity(4, 4) / 4.0;
  return validate_density(m, {2, 2});
}

DensityMatrix bd_state(double t11, double t22, double t33) {
  ComplexMatrix x(2, 2), y(2, 2), z(2, 2);
  x << 0, 1, 1, 0;
  y << 0, Complex(0, -1), Complex(0, 1), 0;
  z << 1, 0, 0, -1;
  const ComplexMatrix m =
      (ComplexMatrix::Identity(4, 4) + t11 * kron(x, x) + t22 * kron(y, y) + t33 * kron(z, z)) / 4.0;
  return validate_density(m, {2, 2});
}

namespace {

std::size_t qubit_register_dim(std::size_t n) {
  if (n < 2) throw Error(ErrorCode::InvalidDimension, "GHZ states need n >= 2 qubits");
  if (n > 12) throw Error(ErrorCode::SizeLimit, "GHZ register of " + std::to_string(n) + " qubits exceeds cap");
  return std::size_t{1} << n;
}

}  // namespace

DensityMatrix ghz_state(std::size_t n) {
  const std::size_t d = qubit_register_dim(n);
  Eigen::VectorXcd psi = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(d));
  psi(0) = psi(static_cast<Eigen::Index>(d - 1)) = 1.0;
  return pure_state(psi, std::vector<std::size_t>(n, 2));
}

DensityMatrix noisy_ghz(std::size_t n, double p) {
  if (!(p >= 0.0 && p <= 1.0)) throw Error(ErrorCode::InvalidArgument, "GHZ weight must lie in [0, 1]");
  const auto d = static_cast<Eigen::Index>(qubit_register_dim(n));
  const ComplexMatrix m =
      p * ghz_state(n).matrix() + (1.0 - p) * ComplexMatrix::Identity(d, d) / static_cast<double>(d);
  return validate_density(m, std::vector<std::size_t>(n, 2));
}

double ghz_gme_threshold(std::size_t n) {
  const double half = std::ldexp(1.0, static_cast<int>(n) - 1);
  return (half - 1.0) / (2.0 * half - 1.0);
}

namespace {

ComplexMatrix ginibre(std::size_t d, Rng& rng) {
  const auto n = static_cast<Eigen::Index>(d);
  ComplexMatrix g(n, n);
  for (Eigen::Index c = 0; c < n; ++c)
    for (Eigen::Index r = 0; r < n; ++r) {
      const double re = rng.normal();
      const double im = rng.normal();
      g(r, c) = Complex(re, im);
    }
  return g;
}

DensityMatrix normalized(const ComplexMatrix& a, std::vector<std::size_t> dims) {
  ComplexMatrix m = a / a.trace().real();
  m = (m + m.adjoint()) * 0.5;
  return validate_density(m, std::move(dims));
}

}  // namespace

ComplexMatrix haar_unitary(std::size_t d, Rng& rng) {
  const ComplexMatrix g = ginibre(d, rng);
  Eigen::HouseholderQR<ComplexMatrix> qr(g);
  ComplexMatrix q = qr.householderQ();
  const auto diag = qr.matrixQR().diagonal();
  for (Eigen::Index i = 0; i < q.cols(); ++i) {
    const double mag = std::abs(diag(i));
    if (mag > 0.0) q.col(i) *= diag(i) / mag;
  }
  return q;
}

DensityMatrix random_pure_haar(std::vector<std::size_t> dims, Rng& rng) {
  const auto d = static_cast<Eigen::Index>(product(dims));
  Eigen::VectorXcd psi(d);
  for (Eigen::Index i = 0; i < d; ++i) {
    const double re = rng.normal();
    const double im = rng.normal();
    psi(i) = Complex(re, im);
  }
  return pure_state(psi, std::move(dims));
}

DensityMatrix random_mixed(MixedEnsemble ensemble, std::vector<std::size_t> dims, Rng& rng) {
  const std::size_t d = product(dims);
  const ComplexMatrix g = ginibre(d, rng);
  if (ensemble == MixedEnsemble::HilbertSchmidt) return normalized(g * g.adjoint(), std::move(dims));
  const auto n = static_cast<Eigen::Index>(d);
  const ComplexMatrix a = (ComplexMatrix::Identity(n, n) + haar_unitary(d, rng)) * g;
  return normalized(a * a.adjoint(), std::move(dims));
}

DensityMatrix random_fixed_purity(std::vector<std::size_t> dims, double target, Rng& rng, double tol) {
  const std::size_t d = product(dims);
  const double centre = 1.0 / static_cast<double>(d);
  if (!(target >= centre - tol && target <= 1.0 + tol))
    throw Error(ErrorCode::InvalidPurity, "target purity " + std::to_string(target) + " outside [1/d, 1]");
  const double radius2 = std::max(0.0, target - centre);

  std::vector<double> lambda(d, centre);
  if (target >= 1.0 - 1e-15) {
    std::fill(lambda.begin(), lambda.end(), 0.0);
    lambda[0] = 1.0;
  } else if (radius2 > 0.0) {
    // Dirichlet(1) directions rarely reach high purities in large d; the
    // concentration is halved after every 64 consecutive rejections.
    double shape = 1.0;
    std::vector<double> logs(d), x(d);
    for (std::size_t attempt = 1;; ++attempt) {
      for (auto& v : logs) v = rng.log_gamma(shape);
      const double top = *std::max_element(logs.begin(), logs.end());
      double total = 0.0;
      for (std::size_t i = 0; i < d; ++i) total += x[i] = std::exp(logs[i] - top);
      double norm2 = 0.0;
      for (auto& v : x) {
        v = v / total - centre;
        norm2 += v * v;
      }
      if (norm2 > 0.0) {
        const double step = std::sqrt(radius2 / norm2);
        bool ok = true;
        for (std::size_t i = 0; i < d; ++i) {
          lambda[i] = centre + step * x[i];
          ok = ok && lambda[i] >= 0.0;
        }
        if (ok) break;
      }
      if (attempt % 64 == 0) shape = std::max(shape * 0.5, 1e-6);
    }
  }

  const ComplexMatrix u = haar_unitary(d, rng);
  Eigen::VectorXd spectrum(static_cast<Eigen::Index>(d));
  for (std::size_t i = 0; i < d; ++i) spectrum(static_cast<Eigen::Index>(i)) = lambda[i];
  ComplexMatrix m = u * spectrum.asDiagonal() * u.adjoint();
  m = (m + m.adjoint()) * 0.5;
  auto rho = validate_density(m, std::move(dims));
  const double achieved = purity_of(rho.matrix());
  if (std::abs(achieved - target) > tol)
    throw Error(ErrorCode::InvalidPurity, "fixed-purity sampler reached " + std::to_string(achieved));
  return rho;
}

double negativity(const DensityMatrix& rho, const std::vector<std::size_t>& block) {
  const auto ev = eigvalsh(partial_transpose(rho, block));
  double neg = 0.0;
  for (Eigen::Index i = 0; i < ev.size(); ++i)
    if (ev(i) < 0.0) neg -= ev(i);
  return 2.0 * neg;
}

}  // namespace qpure
