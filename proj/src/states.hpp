#pragma once

#include <cstddef>
#include <string_view>
#include <vector>

#include "matcore.hpp"
#include "rng.hpp"

namespace qpure {

enum class BellKind { PhiPlus, PhiMinus, PsiPlus, PsiMinus };

enum class MixedEnsemble { HilbertSchmidt, Bures };

/// "phi+", "phi-", "psi+", "psi-"
BellKind parse_bell_kind(std::string_view name);
const char* bell_kind_name(BellKind kind) noexcept;

DensityMatrix pure_state(const Eigen::VectorXcd& psi, std::vector<std::size_t> dims);
DensityMatrix maximally_mixed(std::vector<std::size_t> dims);
DensityMatrix product_state(const DensityMatrix& a, const DensityMatrix& b);

DensityMatrix bell_state(BellKind kind);

/// w |Bell><Bell| + (1 - w) 1/4, w in [0, 1].
DensityMatrix werner(double w, BellKind kind = BellKind::PsiMinus);

/// (1 + sum_i t_ii s_i x s_i)/4; NotPSD outside the tetrahedron.
DensityMatrix bd_state(double t11, double t22, double t33);

/// (|0...0> + |1...1>)/sqrt 2 on n qubits.
DensityMatrix ghz_state(std::size_t n);

/// p |GHZ><GHZ| + (1 - p) 1/2^n.
DensityMatrix noisy_ghz(std::size_t n, double p);

/// Threshold (2^{n-1} - 1)/(2^n - 1) above which noisy GHZ is genuinely multipartite entangled.
double ghz_gme_threshold(std::size_t n);

ComplexMatrix haar_unitary(std::size_t d, Rng& rng);

DensityMatrix random_pure_haar(std::vector<std::size_t> dims, Rng& rng);

DensityMatrix random_mixed(MixedEnsemble ensemble, std::vector<std::size_t> dims, Rng& rng);

/// Random state with Tr[rho^2] = target within tol. The spectrum is moved from
/// the simplex centroid along a Dirichlet direction onto the purity sphere
/// (rejecting negative eigenvalues), then rotated by a Haar unitary.
DensityMatrix random_fixed_purity(std::vector<std::size_t> dims, double target, Rng& rng, double tol = 1e-6);

/// 2 * (sum of |negative eigenvalues| of the partial transpose on `block`).
double negativity(const DensityMatrix& rho, const std::vector<std::size_t>& block);

}  // namespace qpure
