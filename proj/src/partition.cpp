#include "partition.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>

#include "errors.hpp"

namespace qpure {

PartitionScheme::PartitionScheme(std::vector<Block> blocks, std::size_t factors)
    : blocks_(std::move(blocks)), factors_(factors) {
  if (blocks_.empty()) throw Error(ErrorCode::InvalidPartition, "partition has no blocks");
  std::vector<int> seen(factors_, 0);
  for (std::size_t b = 0; b < blocks_.size(); ++b) {
    auto& block = blocks_[b];
    if (block.empty()) throw Error(ErrorCode::InvalidPartition, "block " + std::to_string(b) + " is empty");
    std::sort(block.begin(), block.end());
    for (std::size_t f : block) {
      if (f >= factors_)
        throw Error(ErrorCode::InvalidPartition,
                    "factor " + std::to_string(f) + " out of range for " + std::to_string(factors_) + " factors");
      if (seen[f]++) throw Error(ErrorCode::InvalidPartition, "factor " + std::to_string(f) + " appears twice");
    }
  }
  for (std::size_t f = 0; f < factors_; ++f)
    if (!seen[f]) throw Error(ErrorCode::InvalidPartition, "factor " + std::to_string(f) + " is not covered");
}

PartitionScheme PartitionScheme::parse(std::string_view text, std::size_t factors) {
  std::vector<Block> blocks(1);
  bool expect_number = true;
  for (std::size_t pos = 0; pos < text.size();) {
    const char ch = text[pos];
    if (std::isspace(static_cast<unsigned char>(ch))) {
      ++pos;
    } else if (std::isdigit(static_cast<unsigned char>(ch))) {
      if (!expect_number)
        throw Error(ErrorCode::ParseError, "unexpected digit at offset " + std::to_string(pos));
      std::size_t value = 0;
      auto [end, ec] = std::from_chars(text.data() + pos, text.data() + text.size(), value);
      if (ec != std::errc()) throw Error(ErrorCode::ParseError, "bad index at offset " + std::to_string(pos));
      blocks.back().push_back(value);
      pos = static_cast<std::size_t>(end - text.data());
      expect_number = false;
    } else if (ch == ',' || ch == '|') {
      if (expect_number)
        throw Error(ErrorCode::ParseError, std::string("expected index before '") + ch + "' at offset " +
                                               std::to_string(pos));
      if (ch == '|') blocks.emplace_back();
      expect_number = true;
      ++pos;
    } else {
      throw Error(ErrorCode::ParseError,
                  std::string("unexpected character '") + ch + "' at offset " + std::to_string(pos));
    }
  }
  if (expect_number) throw Error(ErrorCode::ParseError, "partition string ends without an index");
  return PartitionScheme(std::move(blocks), factors);
}

PartitionScheme PartitionScheme::finest(std::size_t factors) {
  std::vector<Block> blocks;
  for (std::size_t f = 0; f < factors; ++f) blocks.push_back({f});
  return PartitionScheme(std::move(blocks), factors);
}

std::vector<PartitionScheme> PartitionScheme::enumerate_all(std::size_t factors) {
  // Restricted growth strings: a[0] = 0, a[i] <= max(a[0..i-1]) + 1.
  std::vector<PartitionScheme> out;
  if (factors == 0) return out;
  std::vector<std::size_t> a(factors, 0);
  while (true) {
    const std::size_t nblocks = *std::max_element(a.begin(), a.end()) + 1;
    std::vector<Block> blocks(nblocks);
    for (std::size_t f = 0; f < factors; ++f) blocks[a[f]].push_back(f);
    out.emplace_back(std::move(blocks), factors);

    std::size_t i = factors;
    while (i-- > 1) {
      const std::size_t prefix_max = *std::max_element(a.begin(), a.begin() + static_cast<std::ptrdiff_t>(i));
      if (a[i] <= prefix_max) {
        ++a[i];
        std::fill(a.begin() + static_cast<std::ptrdiff_t>(i) + 1, a.end(), 0);
        break;
      }
    }
    if (i == 0) break;
  }
  return out;
}

std::vector<std::size_t> PartitionScheme::block_dims(const std::vector<std::size_t>& dims) const {
  if (dims.size() != factors_)
    throw Error(ErrorCode::InvalidPartition, "partition covers " + std::to_string(factors_) + " factors, state has " +
                                                 std::to_string(dims.size()));
  std::vector<std::size_t> out;
  for (const auto& block : blocks_) {
    std::size_t d = 1;
    for (std::size_t f : block) d *= dims[f];
    out.push_back(d);
  }
  return out;
}

std::vector<std::size_t> PartitionScheme::factor_order() const {
  std::vector<std::size_t> order;
  for (const auto& block : blocks_) order.insert(order.end(), block.begin(), block.end());
  return order;
}

std::string PartitionScheme::to_string() const {
  std::string s;
  for (std::size_t b = 0; b < blocks_.size(); ++b) {
    if (b) s += '|';
    for (std::size_t i = 0; i < blocks_[b].size(); ++i) {
      if (i) s += ',';
      s += std::to_string(blocks_[b][i]);
    }
  }
  return s;
}

}  // namespace qpure
