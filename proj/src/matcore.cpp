#include "matcore.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace qpure {

namespace {

std::vector<std::size_t> strides_of(std::span<const std::size_t> dims) {
  std::vector<std::size_t> strides(dims.size(), 1);
  for (std::size_t i = dims.size(); i-- > 1;) strides[i - 1] = strides[i] * dims[i];
  return strides;
}

// Offsets (sum of digit * stride) enumerated over the sub-register formed by
// the listed factors, in row-major order of those factors.
std::vector<std::size_t> register_offsets(std::span<const std::size_t> dims,
                                          std::span<const std::size_t> factors) {
  const auto strides = strides_of(dims);
  std::vector<std::size_t> offsets{0};
  for (std::size_t f : factors) {
    std::vector<std::size_t> next;
    next.reserve(offsets.size() * dims[f]);
    for (std::size_t base : offsets)
      for (std::size_t digit = 0; digit < dims[f]; ++digit) next.push_back(base + digit * strides[f]);
    offsets = std::move(next);
  }
  return offsets;
}

std::vector<std::size_t> checked_subset(std::span<const std::size_t> subset, std::size_t n) {
  std::vector<std::size_t> s(subset.begin(), subset.end());
  std::sort(s.begin(), s.end());
  if (std::adjacent_find(s.begin(), s.end()) != s.end())
    throw Error(ErrorCode::InvalidSubset, "duplicate factor index");
  if (!s.empty() && s.back() >= n)
    throw Error(ErrorCode::InvalidSubset, "factor index " + std::to_string(s.back()) + " out of range");
  return s;
}

}  // namespace

DensityMatrix DensityMatrix::unchecked(ComplexMatrix m, std::vector<std::size_t> dims) {
  return DensityMatrix(std::move(m), std::move(dims));
}

std::size_t product(std::span<const std::size_t> dims) {
  std::size_t p = 1;
  for (std::size_t d : dims) p *= d;
  return p;
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b, std::size_t dimension_cap) {
  const auto rows = static_cast<std::size_t>(a.rows()) * static_cast<std::size_t>(b.rows());
  const auto cols = static_cast<std::size_t>(a.cols()) * static_cast<std::size_t>(b.cols());
  if (rows > dimension_cap || cols > dimension_cap)
    throw Error(ErrorCode::SizeLimit, "kron result " + std::to_string(rows) + "x" + std::to_string(cols) +
                                          " exceeds cap " + std::to_string(dimension_cap));
  ComplexMatrix out(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

double hermitian_defect(const ComplexMatrix& h) {
  if (h.rows() != h.cols()) return std::numeric_limits<double>::infinity();
  const double scale = h.size() == 0 ? 0.0 : h.cwiseAbs().maxCoeff();
  if (scale == 0.0) return 0.0;
  return (h - h.adjoint()).cwiseAbs().maxCoeff() / scale;
}

Eigensystem eigh(const ComplexMatrix& h, const Tolerances& tol) {
  const double defect = hermitian_defect(h);
  if (!(defect <= tol.hermitian)) {
    std::ostringstream msg;
    msg << "relative anti-Hermitian part " << defect << " exceeds " << tol.hermitian;
    throw Error(ErrorCode::NotHermitian, msg.str());
  }
  const ComplexMatrix sym = (h + h.adjoint()) * 0.5;
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(sym);
  if (solver.info() != Eigen::Success) throw Error(ErrorCode::NotHermitian, "eigensolver did not converge");
  return {solver.eigenvalues(), solver.eigenvectors()};
}

RealVector eigvalsh(const ComplexMatrix& h, const Tolerances& tol) {
  const double defect = hermitian_defect(h);
  if (!(defect <= tol.hermitian)) {
    std::ostringstream msg;
    msg << "relative anti-Hermitian part " << defect << " exceeds " << tol.hermitian;
    throw Error(ErrorCode::NotHermitian, msg.str());
  }
  const ComplexMatrix sym = (h + h.adjoint()) * 0.5;
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(sym, Eigen::EigenvaluesOnly);
  return solver.eigenvalues();
}

DensityMatrix validate_density(const ComplexMatrix& m, std::vector<std::size_t> dims, const Tolerances& tol,
                               std::size_t dimension_cap) {
  if (dims.empty()) throw Error(ErrorCode::InvalidDimension, "empty dimension list");
  for (std::size_t d : dims)
    if (d < 2) throw Error(ErrorCode::InvalidDimension, "factor dimension " + std::to_string(d) + " < 2");
  const std::size_t d = product(dims);
  if (d > dimension_cap)
    throw Error(ErrorCode::SizeLimit, "dimension " + std::to_string(d) + " exceeds cap " + std::to_string(dimension_cap));
  if (m.rows() != m.cols() || static_cast<std::size_t>(m.rows()) != d)
    throw Error(ErrorCode::InvalidDimension, "matrix is " + std::to_string(m.rows()) + "x" +
                                                 std::to_string(m.cols()) + ", dims imply " + std::to_string(d));
  if (!m.allFinite()) throw Error(ErrorCode::InvalidArgument, "matrix has non-finite entries");

  std::ostringstream msg;
  const double defect = hermitian_defect(m);
  if (defect > tol.hermitian) {
    msg << "relative anti-Hermitian part " << defect << " exceeds " << tol.hermitian;
    throw Error(ErrorCode::NotHermitian, msg.str());
  }
  const Complex tr = m.trace();
  if (std::abs(tr - Complex(1.0, 0.0)) > tol.trace) {
    msg << "trace " << tr.real() << (tr.imag() < 0 ? "-" : "+") << std::abs(tr.imag()) << "i differs from 1 by "
        << std::abs(tr - Complex(1.0, 0.0));
    throw Error(ErrorCode::TraceNotOne, msg.str());
  }
  const double min_eig = eigvalsh(m, tol)(0);
  if (min_eig < -tol.psd) {
    msg << "minimum eigenvalue " << min_eig << " below -" << tol.psd;
    throw Error(ErrorCode::NotPSD, msg.str());
  }
  return DensityMatrix::unchecked(m, std::move(dims));
}

ComplexMatrix permute_factors(const ComplexMatrix& m, std::span<const std::size_t> dims,
                              std::span<const std::size_t> order) {
  const std::size_t n = dims.size();
  if (order.size() != n) throw Error(ErrorCode::InvalidArgument, "permutation length mismatch");
  std::vector<std::size_t> check(order.begin(), order.end());
  std::sort(check.begin(), check.end());
  for (std::size_t i = 0; i < n; ++i)
    if (check[i] != i) throw Error(ErrorCode::InvalidArgument, "not a permutation of the factors");

  // Enumerating the new register in row-major order yields old offsets.
  const auto old_offsets = register_offsets(dims, order);
  const auto d = static_cast<Eigen::Index>(old_offsets.size());
  ComplexMatrix out(d, d);
  for (Eigen::Index c = 0; c < d; ++c)
    for (Eigen::Index r = 0; r < d; ++r)
      out(r, c) = m(static_cast<Eigen::Index>(old_offsets[r]), static_cast<Eigen::Index>(old_offsets[c]));
  return out;
}

DensityMatrix partial_trace(const DensityMatrix& rho, std::span<const std::size_t> keep) {
  if (keep.empty()) throw Error(ErrorCode::InvalidSubset, "partial trace needs a nonempty keep set");
  const auto& dims = rho.dims();
  const auto kept = checked_subset(keep, dims.size());
  std::vector<std::size_t> traced;
  for (std::size_t f = 0; f < dims.size(); ++f)
    if (!std::binary_search(kept.begin(), kept.end(), f)) traced.push_back(f);

  const auto keep_off = register_offsets(dims, kept);
  const auto trace_off = register_offsets(dims, traced);
  const auto dk = static_cast<Eigen::Index>(keep_off.size());
  const ComplexMatrix& m = rho.matrix();
  ComplexMatrix out = ComplexMatrix::Zero(dk, dk);
  for (Eigen::Index c = 0; c < dk; ++c)
    for (Eigen::Index r = 0; r < dk; ++r) {
      Complex acc{0.0, 0.0};
      for (std::size_t t : trace_off)
        acc += m(static_cast<Eigen::Index>(keep_off[r] + t), static_cast<Eigen::Index>(keep_off[c] + t));
      out(r, c) = acc;
    }
  std::vector<std::size_t> kept_dims;
  for (std::size_t f : kept) kept_dims.push_back(dims[f]);
  return DensityMatrix::unchecked(std::move(out), std::move(kept_dims));
}

ComplexMatrix partial_transpose(const DensityMatrix& rho, std::span<const std::size_t> block) {
  const auto& dims = rho.dims();
  const auto factors = checked_subset(block, dims.size());
  const auto strides = strides_of(dims);
  const auto d = static_cast<std::size_t>(rho.dim());

  // Block component of each flat index.
  std::vector<std::size_t> block_part(d, 0);
  for (std::size_t idx = 0; idx < d; ++idx)
    for (std::size_t f : factors) block_part[idx] += (idx / strides[f]) % dims[f] * strides[f];

  const ComplexMatrix& m = rho.matrix();
  ComplexMatrix out(m.rows(), m.cols());
  for (std::size_t c = 0; c < d; ++c)
    for (std::size_t r = 0; r < d; ++r) {
      const std::size_t r2 = r - block_part[r] + block_part[c];
      const std::size_t c2 = c - block_part[c] + block_part[r];
      out(static_cast<Eigen::Index>(r2), static_cast<Eigen::Index>(c2)) =
          m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c));
    }
  return out;
}

double purity_of(const ComplexMatrix& rho) {
  // Tr[rho^2] = sum |rho_ij|^2 for Hermitian rho.
  return rho.cwiseAbs2().sum();
}

}  // namespace qpure
