#pragma once

#include <cstddef>
#include <memory>
#include <vector>

#include "matcore.hpp"

namespace qpure {

/// Identity plus the d^2-1 generalized Gell-Mann generators of SU(d), scaled so
/// that Tr[s_a s_b] = d delta_ab. Element 0 is the identity; then the
/// symmetric off-diagonal generators, the antisymmetric ones, and finally the
/// diagonal ones. Off-diagonal pairs (j, k), j < k, run in lexicographic order.
class GeneratorBasis {
 public:
  struct Entry {
    std::size_t row;
    std::size_t col;
    Complex value;
  };

  explicit GeneratorBasis(std::size_t d);

  std::size_t dim() const noexcept { return dim_; }
  std::size_t size() const noexcept { return elements_.size(); }
  const ComplexMatrix& operator[](std::size_t a) const { return elements_[a]; }
  const std::vector<ComplexMatrix>& elements() const noexcept { return elements_; }

  /// Nonzero entries of element a.
  const std::vector<Entry>& entries(std::size_t a) const { return entries_[a]; }

 private:
  std::size_t dim_;
  std::vector<ComplexMatrix> elements_;
  std::vector<std::vector<Entry>> entries_;
};

/// Shared, memoized basis for dimension d (d >= 2, else InvalidDimension).
std::shared_ptr<const GeneratorBasis> generators(std::size_t d);

/// max-norm of sum_{a>=1} s_a^2 - (d^2-1) 1_d.
double casimir_check(std::size_t d);

}  // namespace qpure
