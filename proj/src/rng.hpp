#pragma once

#include <cstdint>
#include <random>

namespace qpure {

/// Seed plus stream id; equal pairs give bit-identical draws on every platform.
struct RngSeed {
  std::uint64_t seed = 0;
  std::uint64_t stream = 0;
};

/// mt19937_64 keyed by (seed, stream) through std::seed_seq. Only the raw
/// engine output is used; all distributions are implemented here because the
/// standard library ones are not portable bit-for-bit.
class Rng {
 public:
  explicit Rng(RngSeed key);

  std::uint64_t next_u64() { return engine_(); }
  /// Uniform on [0, 1) with 53 random bits.
  double uniform();
  /// Uniform on (0, 1].
  double uniform_positive() { return 1.0 - uniform(); }
  /// Uniform integer in [0, n).
  std::uint64_t below(std::uint64_t n);
  double normal();
  /// log of a Gamma(shape, 1) variate; stays finite for tiny shapes.
  double log_gamma(double shape);

  RngSeed key() const noexcept { return key_; }

 private:
  RngSeed key_;
  std::mt19937_64 engine_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace qpure
