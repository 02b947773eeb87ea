#include "puritylink.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>

#include "subasis.hpp"

namespace qpure {

double PurityMap::at(SubsetMask subset) const {
  auto it = entries.find(subset);
  if (it == entries.end()) throw Error(ErrorCode::IncompleteMap, "no purity for subset mask " + std::to_string(subset));
  return it->second;
}

std::size_t PurityMap::subset_dim(SubsetMask subset) const {
  std::size_t d = 1;
  for (std::size_t b : blocks_of(subset)) d *= block_dims.at(b);
  return d;
}

double compensated_sum(const std::vector<double>& terms) {
  double sum = 0.0;
  double comp = 0.0;
  for (double x : terms) {
    const double t = sum + x;
    if (std::abs(sum) >= std::abs(x))
      comp += (sum - t) + x;
    else
      comp += (x - t) + sum;
    sum = t;
  }
  return sum + comp;
}

double purity(const DensityMatrix& rho) { return purity_of(rho.matrix()); }

PurityMap reduced_purities(const DensityMatrix& rho, const PartitionScheme& partition) {
  PurityMap pm{partition.block_dims(rho.dims()), {}};
  const SubsetMask full = (SubsetMask{1} << partition.k()) - 1;
  for (SubsetMask s = 1; s <= full; ++s) {
    if (s == full) {
      pm.entries[s] = purity(rho);
      continue;
    }
    std::vector<std::size_t> factors;
    for (std::size_t b : blocks_of(s))
      factors.insert(factors.end(), partition.blocks()[b].begin(), partition.blocks()[b].end());
    pm.entries[s] = purity(partial_trace(rho, factors));
  }
  return pm;
}

double renyi2(double p) {
  if (!(p > 0.0) || p > 1.0 + 1e-9)
    throw Error(ErrorCode::InvalidPurity, "purity " + std::to_string(p) + " outside (0, 1]");
  return -std::log(p);
}

double tnorm2_from_purities(const PurityMap& pm) {
  const std::size_t k = pm.k();
  const SubsetMask full = (SubsetMask{1} << k) - 1;
  std::vector<double> terms;
  terms.reserve(full + 1);
  for (SubsetMask s = 1; s <= full; ++s) {
    const std::size_t g = static_cast<std::size_t>(std::popcount(s));
    const double sign = ((k - g) % 2 == 0) ? 1.0 : -1.0;
    terms.push_back(sign * static_cast<double>(pm.subset_dim(s)) * pm.at(s));
  }
  terms.push_back(k % 2 == 0 ? 1.0 : -1.0);
  return compensated_sum(terms);
}

double total_uncertainty_direct(const DensityMatrix& rho, const PartitionScheme& partition,
                                std::size_t combination_cap) {
  const auto block_dims = partition.block_dims(rho.dims());
  std::size_t combos = 1;
  for (std::size_t d : block_dims) {
    combos *= d * d - 1;
    if (combos > combination_cap)
      throw Error(ErrorCode::SizeLimit, "generator products exceed cap " + std::to_string(combination_cap));
  }
  std::vector<std::vector<ComplexMatrix>> ops, squares;
  for (std::size_t d : block_dims) {
    const auto basis = generators(d);
    std::vector<ComplexMatrix> o, sq;
    for (std::size_t a = 1; a < basis->size(); ++a) {
      o.push_back((*basis)[a]);
      sq.push_back((*basis)[a] * (*basis)[a]);
    }
    ops.push_back(std::move(o));
    squares.push_back(std::move(sq));
  }
  const auto means = block_expectations(rho, partition, ops);
  const auto second = block_expectations(rho, partition, squares);
  std::vector<double> terms;
  terms.reserve(means.size());
  for (std::size_t i = 0; i < means.size(); ++i) terms.push_back(second[i].real() - means[i].real() * means[i].real());
  return compensated_sum(terms);
}

UncertaintyBudget total_uncertainty_from_purities(const PurityMap& pm) {
  UncertaintyBudget b;
  b.combinations = 1.0;
  for (std::size_t d : pm.block_dims) b.combinations *= static_cast<double>(d * d - 1);
  b.tnorm2 = tnorm2_from_purities(pm);
  b.total_uncertainty = b.combinations - b.tnorm2;
  return b;
}

namespace {

DensityMatrix qubit_reduction(const DensityMatrix& rho, const std::vector<std::size_t>& factors) {
  auto reduced = partial_trace(rho, factors);
  if (reduced.dim() != 2)
    throw Error(ErrorCode::DimensionMismatch, "block has dimension " + std::to_string(reduced.dim()) + ", expected 2");
  return reduced;
}

std::array<double, 3> bloch_vector(const DensityMatrix& qubit) {
  const auto t = corr_tensor(DensityMatrix::unchecked(qubit.matrix(), {2}), PartitionScheme::finest(1));
  return {t.values()[1], t.values()[2], t.values()[3]};
}

}  // namespace

double rest_single_qubit(const DensityMatrix& rho, const std::vector<std::size_t>& qubit_factors) {
  return 2.0 * (1.0 - purity(qubit_reduction(rho, qubit_factors)));
}

double rs_check_single_qubit(const DensityMatrix& rho, const std::vector<std::size_t>& qubit_factors, int i, int j) {
  if (i < 1 || i > 3 || j < 1 || j > 3 || i == j)
    throw Error(ErrorCode::InvalidArgument, "Pauli indices must be distinct values in {1,2,3}");
  const int k = 6 - i - j;
  const auto qubit = qubit_reduction(rho, qubit_factors);
  const auto r = bloch_vector(qubit);
  const double ri = r[i - 1], rj = r[j - 1], rk = r[k - 1];
  const double lhs = (1.0 - ri * ri) * (1.0 - rj * rj);
  const double rhs = rk * rk + ri * ri * rj * rj + 2.0 * (1.0 - purity(qubit));
  return std::abs(lhs - rhs);
}

double rest_two_qubit_tdiag(double pa, double pb, double pab) { return 2.0 * (pa + pb - 2.0 * pab); }

TwoQubitUncertaintySums uncertainty_sums_two_qubit(const DensityMatrix& rho, const std::vector<std::size_t>& block_a,
                                                   const std::vector<std::size_t>& block_b) {
  std::vector<std::size_t> both(block_a);
  both.insert(both.end(), block_b.begin(), block_b.end());
  const auto qa = qubit_reduction(rho, block_a);
  const auto qb = qubit_reduction(rho, block_b);
  const auto ab = partial_trace(rho, both);

  // partial_trace orders the kept factors ascending; the pair partition follows that order.
  std::vector<std::size_t> fa, fb;
  std::vector<std::size_t> sorted(both);
  std::sort(sorted.begin(), sorted.end());
  for (std::size_t pos = 0; pos < sorted.size(); ++pos) {
    if (std::find(block_a.begin(), block_a.end(), sorted[pos]) != block_a.end())
      fa.push_back(pos);
    else
      fb.push_back(pos);
  }
  const PartitionScheme pair({fa, fb}, sorted.size());
  const auto t = corr_tensor(ab, pair);

  TwoQubitUncertaintySums s;
  const auto r = bloch_vector(qa);
  for (std::size_t i = 1; i <= 3; ++i) {
    s.sum_single += 1.0 - r[i - 1] * r[i - 1];
    for (std::size_t j = 1; j <= 3; ++j) {
      const double tij = t.at({i, j});
      const double var = 1.0 - tij * tij;
      s.sum_ij += var;
      if (i == j)
        s.sum_ii += var;
      else
        s.offdiag_norm2 += tij * tij;
    }
  }
  s.purity_a = purity(qa);
  s.purity_b = purity(qb);
  s.purity_ab = purity(ab);
  return s;
}

}  // namespace qpure
