#include "corrtensor.hpp"

#include <bit>
#include <cmath>
#include <iostream>

#include "subasis.hpp"

namespace qpure {

SubsetMask mask_of(const std::vector<std::size_t>& blocks) {
  SubsetMask m = 0;
  for (std::size_t b : blocks) {
    if (b >= 32) throw Error(ErrorCode::InvalidSubset, "block index " + std::to_string(b) + " too large");
    m |= SubsetMask{1} << b;
  }
  return m;
}

std::vector<std::size_t> blocks_of(SubsetMask mask) {
  std::vector<std::size_t> out;
  for (std::size_t b = 0; mask; ++b, mask >>= 1)
    if (mask & 1u) out.push_back(b);
  return out;
}

CorrelationTensor::CorrelationTensor(PartitionScheme partition, std::vector<std::size_t> block_dims,
                                     std::vector<double> values, double max_imag_residue)
    : partition_(std::move(partition)),
      block_dims_(std::move(block_dims)),
      values_(std::move(values)),
      max_imag_residue_(max_imag_residue) {
  std::size_t total = 1;
  for (std::size_t d : block_dims_) {
    radix_.push_back(d * d);
    total *= d * d;
  }
  if (total != values_.size()) throw Error(ErrorCode::InvalidArgument, "tensor size does not match block dims");
}

std::size_t CorrelationTensor::flat_index(const std::vector<std::size_t>& alpha) const {
  if (alpha.size() != radix_.size()) throw Error(ErrorCode::InvalidArgument, "multi-index rank mismatch");
  std::size_t idx = 0;
  for (std::size_t l = 0; l < alpha.size(); ++l) {
    if (alpha[l] >= radix_[l]) throw Error(ErrorCode::InvalidArgument, "multi-index out of range");
    idx = idx * radix_[l] + alpha[l];
  }
  return idx;
}

double CorrelationTensor::at(const std::vector<std::size_t>& alpha) const { return values_[flat_index(alpha)]; }

double CorrelationTensor::norm2() const {
  double s = 0.0;
  for (double v : values_) s += v * v;
  return s;
}

namespace {

struct SparseOp {
  std::vector<GeneratorBasis::Entry> entries;
};

std::vector<SparseOp> sparsify(const std::vector<ComplexMatrix>& ops) {
  std::vector<SparseOp> out;
  for (const auto& m : ops) {
    SparseOp op;
    for (Eigen::Index r = 0; r < m.rows(); ++r)
      for (Eigen::Index c = 0; c < m.cols(); ++c)
        if (m(r, c) != Complex{0.0, 0.0})
          op.entries.push_back({static_cast<std::size_t>(r), static_cast<std::size_t>(c), m(r, c)});
    out.push_back(std::move(op));
  }
  return out;
}

// Depth-first contraction: at level l, `r` is the operator on blocks l..k-1
// left after tracing blocks 0..l-1 against their chosen operators.
void contract(const ComplexMatrix& r, std::size_t level, const std::vector<std::size_t>& block_dims,
              const std::vector<std::vector<SparseOp>>& ops, std::vector<Complex>& out) {
  if (level == block_dims.size()) {
    out.push_back(r(0, 0));
    return;
  }
  const auto rest = static_cast<Eigen::Index>(static_cast<std::size_t>(r.rows()) / block_dims[level]);
  ComplexMatrix next(rest, rest);
  for (const auto& op : ops[level]) {
    // Tr_l[(s x 1) R] = sum_{ij} s_ij R_{(j,.),(i,.)}
    next.setZero();
    for (const auto& e : op.entries)
      next.noalias() += e.value * r.block(static_cast<Eigen::Index>(e.col) * rest,
                                          static_cast<Eigen::Index>(e.row) * rest, rest, rest);
    contract(next, level + 1, block_dims, ops, out);
  }
}

std::vector<Complex> contract_all(const DensityMatrix& rho, const PartitionScheme& partition,
                                  const std::vector<std::vector<SparseOp>>& ops,
                                  const std::vector<std::size_t>& block_dims) {
  const auto order = partition.factor_order();
  const ComplexMatrix grouped = permute_factors(rho.matrix(), rho.dims(), order);
  std::size_t total = 1;
  for (const auto& o : ops) total *= o.size();
  std::vector<Complex> out;
  out.reserve(total);
  contract(grouped, 0, block_dims, ops, out);
  return out;
}

}  // namespace

std::vector<Complex> block_expectations(const DensityMatrix& rho, const PartitionScheme& partition,
                                        const std::vector<std::vector<ComplexMatrix>>& local_ops) {
  const auto block_dims = partition.block_dims(rho.dims());
  if (local_ops.size() != block_dims.size())
    throw Error(ErrorCode::InvalidPartition, "one operator list per block is required");
  std::vector<std::vector<SparseOp>> ops;
  for (std::size_t l = 0; l < block_dims.size(); ++l) {
    for (const auto& m : local_ops[l])
      if (static_cast<std::size_t>(m.rows()) != block_dims[l] || m.rows() != m.cols())
        throw Error(ErrorCode::DimensionMismatch, "local operator does not match block " + std::to_string(l));
    ops.push_back(sparsify(local_ops[l]));
  }
  return contract_all(rho, partition, ops, block_dims);
}

CorrelationTensor corr_tensor(const DensityMatrix& rho, const PartitionScheme& partition) {
  const auto block_dims = partition.block_dims(rho.dims());
  std::vector<std::vector<SparseOp>> ops;
  for (std::size_t d : block_dims) {
    const auto basis = generators(d);
    std::vector<SparseOp> list;
    for (std::size_t a = 0; a < basis->size(); ++a) list.push_back({basis->entries(a)});
    ops.push_back(std::move(list));
  }
  const auto raw = contract_all(rho, partition, ops, block_dims);
  std::vector<double> values;
  values.reserve(raw.size());
  double residue = 0.0;
  for (const auto& z : raw) {
    values.push_back(z.real());
    residue = std::max(residue, std::abs(z.imag()));
  }
  if (residue > kImagResidueWarning)
    std::clog << "qpure: warning: correlation tensor imaginary residue " << residue
              << " exceeds " << kImagResidueWarning << "; using real parts\n";
  return CorrelationTensor(partition, block_dims, std::move(values), residue);
}

namespace {

void check_subset(const CorrelationTensor& t, SubsetMask subset) {
  if (subset == 0) throw Error(ErrorCode::InvalidSubset, "subset must be nonempty");
  if (t.k() < 32 && (subset >> t.k()) != 0)
    throw Error(ErrorCode::InvalidSubset, "subset names a block outside the partition");
}

}  // namespace

SubsetView subset_view(const CorrelationTensor& t, SubsetMask subset) {
  check_subset(t, subset);
  SubsetView view{subset, {}, {}};
  const auto blocks = blocks_of(subset);
  for (std::size_t b : blocks) view.shape.push_back(t.block_dims()[b] * t.block_dims()[b] - 1);
  std::size_t count = 1;
  for (std::size_t s : view.shape) count *= s;
  view.values.reserve(count);

  std::vector<std::size_t> alpha(t.k(), 0);
  std::vector<std::size_t> sub(blocks.size(), 0);
  for (std::size_t n = 0; n < count; ++n) {
    for (std::size_t i = 0; i < blocks.size(); ++i) alpha[blocks[i]] = sub[i] + 1;
    view.values.push_back(t.at(alpha));
    for (std::size_t i = blocks.size(); i-- > 0;) {
      if (++sub[i] < view.shape[i]) break;
      sub[i] = 0;
    }
  }
  return view;
}

double subtensor_norm2(const CorrelationTensor& t, SubsetMask subset) {
  const auto view = subset_view(t, subset);
  double s = 0.0;
  for (double v : view.values) s += v * v;
  return s;
}

std::vector<double> all_subset_norms2(const CorrelationTensor& t) {
  const std::size_t k = t.k();
  std::vector<double> norms(std::size_t{1} << k, 0.0);
  std::vector<std::size_t> radix;
  for (std::size_t d : t.block_dims()) radix.push_back(d * d);
  std::vector<std::size_t> alpha(k, 0);
  for (double v : t.values()) {
    SubsetMask mask = 0;
    for (std::size_t l = 0; l < k; ++l)
      if (alpha[l] != 0) mask |= SubsetMask{1} << l;
    norms[mask] += v * v;
    for (std::size_t l = k; l-- > 0;) {
      if (++alpha[l] < radix[l]) break;
      alpha[l] = 0;
    }
  }
  return norms;
}

double decomposition_check(const CorrelationTensor& t) {
  const double total = t.norm2();
  double parts = 1.0;
  const SubsetMask full = (SubsetMask{1} << t.k()) - 1;
  for (SubsetMask s = 1; s <= full; ++s) parts += subtensor_norm2(t, s);
  return std::abs(total - parts);
}

}  // namespace qpure
