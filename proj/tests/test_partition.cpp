#include <doctest.h>

#include "errors.hpp"
#include "partition.hpp"

using namespace qpure;

TEST_CASE("parse accepts the grammar and ignores whitespace") {
  const auto p = PartitionScheme::parse(" 0, 1 | 2|3 ", 4);
  REQUIRE(p.k() == 3);
  CHECK(p.blocks()[0] == PartitionScheme::Block{0, 1});
  CHECK(p.blocks()[2] == PartitionScheme::Block{3});
  CHECK(p.to_string() == "0,1|2|3");
  CHECK(PartitionScheme::parse("1,0|2", 3).blocks()[0] == PartitionScheme::Block{0, 1});
}

TEST_CASE("parse rejects malformed input") {
  CHECK_THROWS_AS(PartitionScheme::parse("0|0|1", 3), Error);
  CHECK_THROWS_AS(PartitionScheme::parse("0|1", 3), Error);
  CHECK_THROWS_AS(PartitionScheme::parse("0|3", 2), Error);
  CHECK_THROWS_AS(PartitionScheme::parse("0||1", 2), Error);
  CHECK_THROWS_AS(PartitionScheme::parse("0|a", 2), Error);
  CHECK_THROWS_AS(PartitionScheme::parse("", 2), Error);
  try {
    PartitionScheme::parse("0|1|1", 3);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::InvalidPartition);
  }
}

TEST_CASE("enumeration gives Bell-number many distinct partitions") {
  const std::size_t bell[] = {1, 1, 2, 5, 15, 52, 203};
  for (std::size_t n = 1; n <= 6; ++n) {
    const auto all = PartitionScheme::enumerate_all(n);
    CHECK(all.size() == bell[n]);
    for (std::size_t i = 0; i < all.size(); ++i)
      for (std::size_t j = i + 1; j < all.size(); ++j) CHECK_FALSE(all[i] == all[j]);
  }
}

TEST_CASE("block dims and factor order") {
  const auto p = PartitionScheme::parse("1,3|0|2", 4);
  CHECK(p.block_dims({2, 3, 4, 5}) == std::vector<std::size_t>{15, 2, 4});
  CHECK(p.factor_order() == std::vector<std::size_t>{1, 3, 0, 2});
  CHECK(PartitionScheme::finest(3).k() == 3);
}
