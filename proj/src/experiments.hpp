#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <string>
#include <variant>
#include <vector>

#include "partition.hpp"
#include "rng.hpp"
#include "states.hpp"

namespace qpure {

/// Settings every experiment records into its metadata.
struct RunConfig {
  std::uint64_t seed = 20240601;
  std::uint64_t stream = 0;
  std::string output;  // path prefix; empty means stdout only
  std::map<std::string, double> tolerances;
  std::size_t workers = 1;
};

using Cell = std::variant<double, std::int64_t, std::string>;

struct SweepResult {
  std::string family;
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
  std::map<std::string, double> summary;
  std::map<std::string, std::string> metadata;
  std::vector<std::string> notes;
};

/// Runs `body(chunk)` for chunk = 0..chunks-1 on up to `workers` threads.
/// Each chunk owns its output slot, so results do not depend on scheduling.
template <class Body>
void for_each_chunk(std::size_t chunks, std::size_t workers, Body&& body);

/// Independent generator for one work chunk of a run.
Rng chunk_rng(const RunConfig& cfg, std::uint64_t chunk);

// Werner family: omega grid, purities, both criterion routes, CHSH, bisected thresholds.
SweepResult werner_sweep(std::size_t grid, const RunConfig& cfg);

/// Root of f on [lo, hi] by bisection; f(lo) and f(hi) must differ in sign.
template <class F>
double bisect(F&& f, double lo, double hi, double width = 1e-13);

struct GeometryEstimate {
  std::size_t samples = 0;
  double detected_fraction = 0.0;
  double entangled_fraction = 0.0;
  double ratio = 0.0;
  double stderr_ratio = 0.0;
  double stderr_entangled = 0.0;
  std::size_t audited = 0;
  double audit_max_error = 0.0;   // |‖t‖² sampled - ‖t‖² from the built state|
  std::size_t form_disagreements = 0;
};

/// Closed-form detected/entangled volume ratio for Bell-diagonal states.
double bd_detected_ratio_exact();
/// The ratio as printed in the source formula (2√3 - π√3 + π)/(2√6).
double bd_detected_ratio_printed_formula();

GeometryEstimate bd_geometry(std::size_t samples, const RunConfig& cfg);
SweepResult bd_geometry_sweep(std::size_t samples, const RunConfig& cfg);

struct NmeasOptions {
  std::size_t qubits = 6;
  std::size_t bins = 20;
  std::size_t states_per_bin = 50;
  std::size_t shuffles = 32;
};

/// Position (1-based) at which the running sum of `squares`, taken in the
/// order given by `perm`, first exceeds 1; squares.size() if it never does.
std::size_t first_exceeding(const std::vector<double>& squares, const std::vector<std::size_t>& perm);

SweepResult nmeas_scan(const NmeasOptions& opts, const RunConfig& cfg);

struct NegativityOptions {
  std::size_t samples = 10000;      // accepted states
  double min_negativity = 0.0;      // accept only states above this; 0 keeps all
  std::size_t max_draws_factor = 2000;
};

SweepResult negativity_scan(const NegativityOptions& opts, const RunConfig& cfg);

SweepResult ghz_sweep(std::size_t n, std::size_t grid, const std::vector<PartitionScheme>& partitions,
                      const RunConfig& cfg);

struct CostRow {
  std::string kind;
  std::vector<std::size_t> dims;
  std::uint64_t correlation_elements = 0;
  std::uint64_t purities = 0;
  std::uint64_t printed_scaling = 0;  // prod (d_i - 1)^2, the scaling quoted for the three-qudit case
};

/// Correlation-tensor components prod(d_i^2 - 1) against 2^k - 1 purities.
CostRow cost_row(std::string kind, const std::vector<std::size_t>& dims);
SweepResult cost_table(const std::vector<CostRow>& rows);

struct MmReductionCheck {
  double threshold = 0.0;     // 2^{1-n}
  double max_residual = 0.0;  // |Δ̃² - (2 - 2^n P)| over the synthetic maps
};

MmReductionCheck mm_reduction_threshold(std::size_t n, Rng& rng, std::size_t trials = 20);

/// Smallest global purity for which the bipartite qudit inequality can be violated.
double qudit_bound_check(std::size_t da, std::size_t db);

struct MomentEstimate {
  double mean = 0.0;
  double stderr_mean = 0.0;
  std::size_t samples = 0;
};

MomentEstimate purity_moment(MixedEnsemble ensemble, std::size_t d, std::size_t samples, const RunConfig& cfg);
/// <P>_HS = 2d/(d^2+1)
double hs_mean_purity(std::size_t d);
/// The Bures value as printed, (5d^2+1)/(2d(d^2+1)).
double bures_mean_purity_printed(std::size_t d);
/// (5d^2+1)/(2d(d^2+2)); agrees with sampling at d = 2, 3, 4.
double bures_mean_purity(std::size_t d);
SweepResult moments_sweep(const std::vector<std::size_t>& dims, std::size_t samples, const RunConfig& cfg);

}  // namespace qpure

#include "experiments_inl.hpp"
