#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "matcore.hpp"
#include "partition.hpp"

namespace qpure {

/// Bit l set <=> block l belongs to the subset.
using SubsetMask = std::uint32_t;

SubsetMask mask_of(const std::vector<std::size_t>& blocks);
std::vector<std::size_t> blocks_of(SubsetMask mask);

/// Real correlation tensor t_{a_1...a_k} = Tr[rho s_{a_1} x ... x s_{a_k}],
/// stored densely with a_1 the slowest index.
class CorrelationTensor {
 public:
  CorrelationTensor(PartitionScheme partition, std::vector<std::size_t> block_dims, std::vector<double> values,
                    double max_imag_residue);

  const PartitionScheme& partition() const noexcept { return partition_; }
  const std::vector<std::size_t>& block_dims() const noexcept { return block_dims_; }
  const std::vector<double>& values() const noexcept { return values_; }
  std::size_t k() const noexcept { return block_dims_.size(); }

  /// Largest |Im Tr[rho s]| seen while building the tensor.
  double max_imag_residue() const noexcept { return max_imag_residue_; }

  double at(const std::vector<std::size_t>& alpha) const;
  std::size_t flat_index(const std::vector<std::size_t>& alpha) const;

  /// Squared HS norm of the whole tensor (identity entry included).
  double norm2() const;

 private:
  PartitionScheme partition_;
  std::vector<std::size_t> block_dims_;
  std::vector<std::size_t> radix_;  // d_l^2
  std::vector<double> values_;
  double max_imag_residue_;
};

/// Restriction of T to entries with a_l >= 1 on the subset and a_l = 0 elsewhere.
struct SubsetView {
  SubsetMask subset;
  std::vector<std::size_t> shape;  // d_l^2 - 1 for each block in the subset, ascending
  std::vector<double> values;      // mixed radix, first subset block slowest
};

/// Threshold above which imaginary parts of expectation values signal corruption.
inline constexpr double kImagResidueWarning = 1e-10;

CorrelationTensor corr_tensor(const DensityMatrix& rho, const PartitionScheme& partition);

/// Expectations Tr[rho O_{a_1} x ... x O_{a_k}] for per-block operator lists,
/// using the same contraction order and layout as corr_tensor.
std::vector<Complex> block_expectations(const DensityMatrix& rho, const PartitionScheme& partition,
                                        const std::vector<std::vector<ComplexMatrix>>& local_ops);

SubsetView subset_view(const CorrelationTensor& t, SubsetMask subset);

/// ||t^(S)||^2; InvalidSubset for the empty set or blocks outside the partition.
double subtensor_norm2(const CorrelationTensor& t, SubsetMask subset);

/// ||t^(S)||^2 for every mask 0..2^k-1 in one pass (index 0 holds t_{0...0}^2).
std::vector<double> all_subset_norms2(const CorrelationTensor& t);

/// |‖T‖² - 1 - sum_{S != {}} ‖t^(S)‖²|
double decomposition_check(const CorrelationTensor& t);

}  // namespace qpure
