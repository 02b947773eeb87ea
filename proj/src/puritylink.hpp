#pragma once

#include <cstddef>
#include <map>
#include <vector>

#include "corrtensor.hpp"
#include "matcore.hpp"
#include "partition.hpp"

namespace qpure {

/// Purities of the reduced states on every nonempty subset of blocks.
struct PurityMap {
  std::vector<std::size_t> block_dims;
  std::map<SubsetMask, double> entries;

  std::size_t k() const noexcept { return block_dims.size(); }
  /// Throws IncompleteMap if any of the 2^k - 1 subsets is missing.
  double at(SubsetMask subset) const;
  /// Product of block dims over the subset.
  std::size_t subset_dim(SubsetMask subset) const;
};

struct UncertaintyBudget {
  double combinations = 0.0;  // N = prod (d_l^2 - 1)
  double total_uncertainty = 0.0;
  double tnorm2 = 0.0;
};

struct TwoQubitUncertaintySums {
  double sum_ii = 0.0;      // sum_i Var(s_i x s_i)
  double sum_ij = 0.0;      // sum_{ij} Var(s_i x s_j)
  double sum_single = 0.0;  // sum_i Var(s_i) on block A
  double purity_a = 0.0;
  double purity_b = 0.0;
  double purity_ab = 0.0;
  double offdiag_norm2 = 0.0;  // sum_{i != j} t_ij^2; zero for T-diagonal states
};

inline constexpr std::size_t kDefaultCombinationCap = std::size_t{1} << 22;

/// Tr[rho^2].
double purity(const DensityMatrix& rho);

PurityMap reduced_purities(const DensityMatrix& rho, const PartitionScheme& partition);

/// Rényi-2 entropy -ln p. InvalidPurity unless 0 < p <= 1.
double renyi2(double p);

/// ||t^(A_1...A_k)||^2 from the purities via the alternating subset sum.
double tnorm2_from_purities(const PurityMap& pm);

/// Sum of variances of all full-support generator products, by enumeration.
double total_uncertainty_direct(const DensityMatrix& rho, const PartitionScheme& partition,
                                std::size_t combination_cap = kDefaultCombinationCap);

UncertaintyBudget total_uncertainty_from_purities(const PurityMap& pm);

/// Linear-entropy rest 2(1 - P) of a single-qubit block given as factor indices.
double rest_single_qubit(const DensityMatrix& rho, const std::vector<std::size_t>& qubit_factors);

/// |Var_i Var_j - (r_k^2 + r_i^2 r_j^2 + 2(1 - P))| for Pauli indices i != j in {1,2,3}.
double rs_check_single_qubit(const DensityMatrix& rho, const std::vector<std::size_t>& qubit_factors, int i, int j);

/// 2(P_A + P_B - 2 P_AB).
double rest_two_qubit_tdiag(double pa, double pb, double pab);

TwoQubitUncertaintySums uncertainty_sums_two_qubit(const DensityMatrix& rho, const std::vector<std::size_t>& block_a,
                                                   const std::vector<std::size_t>& block_b);

/// Neumaier-compensated sum in the given order.
double compensated_sum(const std::vector<double>& terms);

}  // namespace qpure
