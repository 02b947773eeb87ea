#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace qpure {

/// An ordered k-partition of the factor indices {0, ..., n-1}. Each block is
/// kept sorted; block order is as given.
class PartitionScheme {
 public:
  using Block = std::vector<std::size_t>;

  /// Throws InvalidPartition unless the blocks are nonempty, disjoint and cover 0..n-1.
  PartitionScheme(std::vector<Block> blocks, std::size_t factors);

  /// Parses "0,1|2|3": comma-joined factor indices per block, '|' between
  /// blocks, whitespace ignored.
  static PartitionScheme parse(std::string_view text, std::size_t factors);

  /// One block per factor.
  static PartitionScheme finest(std::size_t factors);

  /// All set partitions of n factors (Bell number many), blocks ordered by
  /// their smallest element.
  static std::vector<PartitionScheme> enumerate_all(std::size_t factors);

  const std::vector<Block>& blocks() const noexcept { return blocks_; }
  std::size_t k() const noexcept { return blocks_.size(); }
  std::size_t factors() const noexcept { return factors_; }

  /// Dimension of each block given the factor dimensions.
  std::vector<std::size_t> block_dims(const std::vector<std::size_t>& dims) const;

  /// Factor order listing block 0's factors first, then block 1's, ...
  std::vector<std::size_t> factor_order() const;

  std::string to_string() const;

  bool operator==(const PartitionScheme&) const = default;

 private:
  std::vector<Block> blocks_;
  std::size_t factors_ = 0;
};

}  // namespace qpure
