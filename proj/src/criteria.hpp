#pragma once

#include <array>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "corrtensor.hpp"
#include "matcore.hpp"
#include "partition.hpp"
#include "puritylink.hpp"

namespace qpure {

enum class Verdict { Violated, Satisfied, Inapplicable };

const char* verdict_name(Verdict v) noexcept;

/// Values within this distance of a threshold count as satisfying it; violations are strict.
inline constexpr double kVerdictTieBand = 1e-12;

struct ChshResult {
  std::array<double, 3> u{};  // eigenvalues of t^T t, descending
  double rest = 0.0;          // 2(P_A + P_B - 2 P_AB)
  Verdict verdict = Verdict::Inapplicable;
  Verdict purity_form = Verdict::Inapplicable;  // -R > u_3
};

struct GmeResult {
  double tnorm2 = 0.0;
  double purity_form = 0.0;  // d^3 P_123 + d sum P_i - d^2 sum P_ij - 1
  double bound = 0.0;
  Verdict verdict = Verdict::Inapplicable;
};

struct CriterionReport {
  PartitionScheme partition;
  std::vector<std::size_t> block_dims;
  PurityMap purities;
  double tnorm2_direct = 0.0;
  double tnorm2_purities = 0.0;
  double threshold = 0.0;  // prod (d_g - 1)
  double delta_tilde = 0.0;
  double entropic = 0.0;
  std::map<std::string, Verdict> verdicts;
  std::map<std::string, double> auxiliary;
  std::optional<ChshResult> chsh;
  std::optional<GmeResult> gme;
};

/// prod_g (d_g - 1)
double ksep_threshold(const std::vector<std::size_t>& block_dims);

/// sum over nonempty subsets of (-1)^{k-g} d_S (1 - P_S); negative certifies entanglement.
double ksep_delta_tilde(const PurityMap& pm);

/// Same sum written through the Rényi-2 entropies, 1 - exp(-S_2).
double entropic_form(const PurityMap& pm);

CriterionReport ksep_verdict(const DensityMatrix& rho, const PartitionScheme& partition);

/// 8(d-1)(d^2-1)/d^3
double gme_three_qudit_bound(std::size_t d);

/// Inapplicable error unless the partition has three blocks of equal dimension.
GmeResult gme_three_qudit_check(const DensityMatrix& rho, const PartitionScheme& partition);

/// Inapplicable error unless the partition is two single-qubit blocks.
ChshResult chsh_horodecki(const DensityMatrix& rho, const PartitionScheme& partition);

/// The 3x3 block t_ij (i, j = 1..3) of a two-qubit correlation tensor.
Eigen::Matrix3d two_qubit_correlation_matrix(const CorrelationTensor& t);

/// Two orthonormal Bloch directions per qubit.
using QubitFrame = std::array<Eigen::Vector3d, 2>;

/// Sum of squared full-support correlations over the chosen two directions per qubit.
double bell_partial_sum(const CorrelationTensor& t, const std::vector<QubitFrame>& frames);

struct TDiagonalForm {
  Eigen::Matrix3d left;   // proper rotation O1
  Eigen::Matrix3d right;  // proper rotation O2
  Eigen::Vector3d diag;   // O1^T t O2
};

TDiagonalForm t_diagonalize(const Eigen::Matrix3d& t);

/// Two-qubit state (1 + r.s x 1 + 1 x s.s + sum t_ij s_i x s_j)/4, validated.
DensityMatrix two_qubit_from_bloch(const Eigen::Vector3d& r, const Eigen::Vector3d& s, const Eigen::Matrix3d& t);

/// Locally rotated copy of a 2x2-qubit state whose correlation matrix is diagonal.
DensityMatrix t_diagonal_state(const DensityMatrix& rho);

}  // namespace qpure
