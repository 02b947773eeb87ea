#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace qpure {

struct ValidationReport {
  std::size_t assertions = 0;
  std::size_t failures = 0;
  std::vector<std::string> digest;  // first failures, human readable

  bool passed() const noexcept { return failures == 0; }
};

/// Runs the invariant suites of every module on `samples` random states per
/// dimension set, seeded deterministically.
ValidationReport run_validation(std::size_t samples, std::uint64_t seed, std::size_t workers = 1);

}  // namespace qpure
