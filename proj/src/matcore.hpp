#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "errors.hpp"

namespace qpure {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using RealMatrix = Eigen::MatrixXd;
using RealVector = Eigen::VectorXd;

/// Numerical tolerances shared by the validators.
struct Tolerances {
  double hermitian = 1e-10;  // relative to max |entry|
  double trace = 1e-10;
  double psd = 1e-9;
  double eig = 1e-9;
};

inline constexpr std::size_t kDefaultDimensionCap = 4096;

/// A validated quantum state on a tensor product of factors. Factor 0 is the
/// most significant index of the row-major flattening.
class DensityMatrix {
 public:
  /// Builds the state without validation; use validate_density for untrusted input.
  static DensityMatrix unchecked(ComplexMatrix m, std::vector<std::size_t> dims);

  const ComplexMatrix& matrix() const noexcept { return matrix_; }
  const std::vector<std::size_t>& dims() const noexcept { return dims_; }
  std::size_t dim() const noexcept { return static_cast<std::size_t>(matrix_.rows()); }
  std::size_t factors() const noexcept { return dims_.size(); }

 private:
  DensityMatrix(ComplexMatrix m, std::vector<std::size_t> dims)
      : matrix_(std::move(m)), dims_(std::move(dims)) {}

  ComplexMatrix matrix_;
  std::vector<std::size_t> dims_;
};

struct Eigensystem {
  RealVector values;  // ascending
  ComplexMatrix vectors;
};

std::size_t product(std::span<const std::size_t> dims);

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b,
                   std::size_t dimension_cap = kDefaultDimensionCap);

/// Hermiticity defect max|h - h^dagger| relative to max|h|.
double hermitian_defect(const ComplexMatrix& h);

Eigensystem eigh(const ComplexMatrix& h, const Tolerances& tol = {});
RealVector eigvalsh(const ComplexMatrix& h, const Tolerances& tol = {});

DensityMatrix validate_density(const ComplexMatrix& m, std::vector<std::size_t> dims,
                               const Tolerances& tol = {},
                               std::size_t dimension_cap = kDefaultDimensionCap);

/// Reorders the tensor factors so that new factor i is old factor order[i].
ComplexMatrix permute_factors(const ComplexMatrix& m, std::span<const std::size_t> dims,
                              std::span<const std::size_t> order);

/// Reduced state on the kept factors, in ascending factor order.
DensityMatrix partial_trace(const DensityMatrix& rho, std::span<const std::size_t> keep);

/// Transposes the tensor indices of the listed factors.
ComplexMatrix partial_transpose(const DensityMatrix& rho, std::span<const std::size_t> block);

double purity_of(const ComplexMatrix& rho);

}  // namespace qpure
