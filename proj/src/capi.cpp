#include "qpure/qpure.h"

#include <cstdlib>
#include <cstring>
#include <new>
#include <sstream>
#include <string>

#include <json.hpp>

#include "criteria.hpp"
#include "errors.hpp"
#include "experiments.hpp"
#include "partition.hpp"
#include "puritylink.hpp"
#include "serialize.hpp"
#include "states.hpp"
#include "validate.hpp"

struct qpure_state {
  qpure::DensityMatrix rho;
};

namespace {

using json = nlohmann::json;

thread_local std::string g_last_error;

// Breach of a numerical identity detected while running; not a core ErrorCode.
struct InvariantBreach : std::runtime_error {
  using std::runtime_error::runtime_error;
};

qpure_status status_of(qpure::ErrorCode code) {
  using qpure::ErrorCode;
  switch (code) {
    case ErrorCode::InvalidArgument: return QPURE_ERR_INVALID_ARGUMENT;
    case ErrorCode::InvalidDimension: return QPURE_ERR_INVALID_DIMENSION;
    case ErrorCode::InvalidSubset: return QPURE_ERR_INVALID_SUBSET;
    case ErrorCode::InvalidPartition: return QPURE_ERR_INVALID_PARTITION;
    case ErrorCode::InvalidPurity: return QPURE_ERR_INVALID_PURITY;
    case ErrorCode::InvalidFrame: return QPURE_ERR_INVALID_FRAME;
    case ErrorCode::NotHermitian: return QPURE_ERR_NOT_HERMITIAN;
    case ErrorCode::TraceNotOne: return QPURE_ERR_TRACE_NOT_ONE;
    case ErrorCode::NotPSD: return QPURE_ERR_NOT_PSD;
    case ErrorCode::SizeLimit: return QPURE_ERR_SIZE_LIMIT;
    case ErrorCode::IncompleteMap: return QPURE_ERR_INCOMPLETE_MAP;
    case ErrorCode::DimensionMismatch: return QPURE_ERR_DIMENSION_MISMATCH;
    case ErrorCode::Inapplicable: return QPURE_ERR_INAPPLICABLE;
    case ErrorCode::ParseError: return QPURE_ERR_PARSE;
    case ErrorCode::IoError: return QPURE_ERR_IO;
  }
  return QPURE_ERR_INTERNAL;
}

template <class F>
qpure_status guarded(F&& f) {
  try {
    f();
    g_last_error.clear();
    return QPURE_OK;
  } catch (const qpure::Error& e) {
    g_last_error = e.what();
    return status_of(e.code());
  } catch (const InvariantBreach& e) {
    g_last_error = std::string("InvariantBreach: ") + e.what();
    return QPURE_ERR_INVARIANT;
  } catch (const json::exception& e) {
    g_last_error = std::string("ParseError: ") + e.what();
    return QPURE_ERR_PARSE;
  } catch (const std::bad_alloc&) {
    g_last_error = "out of memory";
    return QPURE_ERR_INTERNAL;
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return QPURE_ERR_INTERNAL;
  } catch (...) {
    g_last_error = "unknown failure";
    return QPURE_ERR_INTERNAL;
  }
}

void need(const void* p, const char* what) {
  if (!p) throw qpure::Error(qpure::ErrorCode::InvalidArgument, std::string(what) + " must not be null");
}

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.data(), s.size() + 1);
  return out;
}

void emit(char** out, const std::string& s) {
  if (out) *out = dup_string(s);
}

qpure_state* wrap(qpure::DensityMatrix rho) { return new qpure_state{std::move(rho)}; }

std::vector<std::size_t> dims_of(const size_t* dims, size_t n) {
  need(dims, "dims");
  if (n == 0) throw qpure::Error(qpure::ErrorCode::InvalidDimension, "at least one factor required");
  return {dims, dims + n};
}

qpure::PartitionScheme partition_for(const qpure_state* s, const char* text) {
  need(text, "partition");
  return qpure::PartitionScheme::parse(text, s->rho.factors());
}

std::vector<std::size_t> block_of(const qpure_state* s, const char* text) {
  const auto p = partition_for(s, text);
  if (p.blocks().size() != 1) throw qpure::Error(qpure::ErrorCode::InvalidPartition, "expected a single block");
  return p.blocks().front();
}

std::string summary_line(const qpure::SweepResult& r) {
  std::ostringstream out;
  out << r.family;
  for (const auto& [k, v] : r.summary) out << ' ' << k << '=' << qpure::format_number(v);
  return out.str();
}

template <class T>
T opt(const json& cfg, const char* key, T fallback) {
  return cfg.contains(key) ? cfg.at(key).get<T>() : fallback;
}

std::vector<std::size_t> size_list(const json& cfg, const char* key, std::vector<std::size_t> fallback) {
  if (!cfg.contains(key)) return fallback;
  const auto v = cfg.at(key).get<std::vector<std::size_t>>();
  if (v.empty()) throw qpure::Error(qpure::ErrorCode::InvalidArgument, std::string(key) + " must not be empty");
  return v;
}

std::size_t positive(const json& cfg, const char* key, std::size_t fallback) {
  const auto v = opt<long long>(cfg, key, static_cast<long long>(fallback));
  if (v <= 0) throw qpure::Error(qpure::ErrorCode::InvalidArgument, std::string(key) + " must be positive");
  return static_cast<std::size_t>(v);
}

std::vector<qpure::PartitionScheme> partitions_from(const json& cfg, std::size_t n) {
  const std::string text = opt<std::string>(cfg, "partitions", "all");
  if (text == "all") return qpure::PartitionScheme::enumerate_all(n);
  std::vector<qpure::PartitionScheme> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    const auto end = std::min(text.find(';', start), text.size());
    const auto piece = text.substr(start, end - start);
    if (piece.find_first_not_of(" \t") != std::string::npos) out.push_back(qpure::PartitionScheme::parse(piece, n));
    start = end + 1;
  }
  if (out.empty()) throw qpure::Error(qpure::ErrorCode::InvalidPartition, "no partitions given");
  return out;
}

qpure::SweepResult run_family(const std::string& family, const json& cfg, const qpure::RunConfig& rc) {
  if (family == "werner") return qpure::werner_sweep(positive(cfg, "grid", 400), rc);
  if (family == "ghz") {
    const std::size_t n = positive(cfg, "n", 4);
    return qpure::ghz_sweep(n, positive(cfg, "grid", 200), partitions_from(cfg, n), rc);
  }
  if (family == "bd-geometry") return qpure::bd_geometry_sweep(positive(cfg, "samples", 1000000), rc);
  if (family == "nmeas") {
    qpure::NmeasOptions o;
    o.qubits = positive(cfg, "n", o.qubits);
    o.bins = positive(cfg, "bins", o.bins);
    o.states_per_bin = positive(cfg, "states", o.states_per_bin);
    o.shuffles = positive(cfg, "shuffles", o.shuffles);
    return qpure::nmeas_scan(o, rc);
  }
  if (family == "negativity") {
    qpure::NegativityOptions o;
    o.samples = positive(cfg, "samples", o.samples);
    o.min_negativity = opt<double>(cfg, "min_negativity", o.min_negativity);
    return qpure::negativity_scan(o, rc);
  }
  if (family == "costs") {
    std::vector<qpure::CostRow> rows;
    const std::size_t k = positive(cfg, "k", 6);
    const bool qubits = opt<bool>(cfg, "qubits", false);
    if (cfg.contains("dims")) rows.push_back(qpure::cost_row("custom", size_list(cfg, "dims", {})));
    if (qubits || rows.empty()) rows.push_back(qpure::cost_row("qubits", std::vector<std::size_t>(k, 2)));
    if (!qubits && !cfg.contains("dims")) rows.push_back(qpure::cost_row("qutrits", std::vector<std::size_t>(k, 3)));
    return qpure::cost_table(rows);
  }
  if (family == "moments")
    return qpure::moments_sweep(size_list(cfg, "dims", {2, 3, 4}), positive(cfg, "samples", 10000), rc);
  throw qpure::Error(qpure::ErrorCode::InvalidArgument, "unknown sweep family '" + family + "'");
}

}  // namespace

extern "C" {

const char* qpure_version(void) { return "0.1.0"; }

const char* qpure_status_name(qpure_status status) {
  switch (status) {
    case QPURE_OK: return "Ok";
    case QPURE_ERR_INVALID_ARGUMENT: return "InvalidArgument";
    case QPURE_ERR_INVALID_DIMENSION: return "InvalidDimension";
    case QPURE_ERR_INVALID_SUBSET: return "InvalidSubset";
    case QPURE_ERR_INVALID_PARTITION: return "InvalidPartition";
    case QPURE_ERR_INVALID_PURITY: return "InvalidPurity";
    case QPURE_ERR_INVALID_FRAME: return "InvalidFrame";
    case QPURE_ERR_NOT_HERMITIAN: return "NotHermitian";
    case QPURE_ERR_TRACE_NOT_ONE: return "TraceNotOne";
    case QPURE_ERR_NOT_PSD: return "NotPSD";
    case QPURE_ERR_SIZE_LIMIT: return "SizeLimit";
    case QPURE_ERR_INCOMPLETE_MAP: return "IncompleteMap";
    case QPURE_ERR_DIMENSION_MISMATCH: return "DimensionMismatch";
    case QPURE_ERR_INAPPLICABLE: return "Inapplicable";
    case QPURE_ERR_PARSE: return "ParseError";
    case QPURE_ERR_IO: return "IoError";
    case QPURE_ERR_INVARIANT: return "InvariantBreach";
    case QPURE_ERR_INTERNAL: return "Internal";
  }
  return "Unknown";
}

const char* qpure_last_error(void) { return g_last_error.c_str(); }

void qpure_string_free(char* s) { std::free(s); }

qpure_status qpure_state_create(const size_t* dims, size_t n_dims, const double* re_im, qpure_state** out) {
  return guarded([&] {
    need(out, "out");
    need(re_im, "re_im");
    auto d = dims_of(dims, n_dims);
    std::size_t total = 1;
    for (auto x : d) {
      if (x < 2) throw qpure::Error(qpure::ErrorCode::InvalidDimension, "local dimension must be >= 2");
      if (total > qpure::kDefaultDimensionCap / x)
        throw qpure::Error(qpure::ErrorCode::SizeLimit, "total dimension exceeds cap");
      total *= x;
    }
    const auto n = static_cast<Eigen::Index>(total);
    qpure::ComplexMatrix m(n, n);
    for (Eigen::Index i = 0; i < n; ++i)
      for (Eigen::Index j = 0; j < n; ++j) {
        const std::size_t at = 2 * static_cast<std::size_t>(i * n + j);
        m(i, j) = {re_im[at], re_im[at + 1]};
      }
    *out = wrap(qpure::validate_density(m, d));
  });
}

qpure_status qpure_state_from_json(const char* text, qpure_state** out) {
  return guarded([&] {
    need(text, "text");
    need(out, "out");
    *out = wrap(qpure::parse_state_json(text));
  });
}

qpure_status qpure_state_load(const char* path, qpure_state** out) {
  return guarded([&] {
    need(path, "path");
    need(out, "out");
    *out = wrap(qpure::load_state_file(path));
  });
}

qpure_status qpure_state_save(const qpure_state* state, const char* path) {
  return guarded([&] {
    need(state, "state");
    need(path, "path");
    qpure::save_state_file(state->rho, path);
  });
}

qpure_status qpure_state_to_json(const qpure_state* state, char** out) {
  return guarded([&] {
    need(state, "state");
    need(out, "out");
    *out = dup_string(qpure::state_to_json(state->rho));
  });
}

qpure_status qpure_state_named(const char* family, const char* name, size_t n, double a, double b, double c,
                               qpure_state** out) {
  return guarded([&] {
    need(family, "family");
    need(out, "out");
    const std::string f = family;
    const std::string bell = (name && *name) ? name : "psi-";
    if (f == "bell") {
      *out = wrap(qpure::bell_state(qpure::parse_bell_kind(bell)));
    } else if (f == "werner") {
      *out = wrap(qpure::werner(a, qpure::parse_bell_kind(bell)));
    } else if (f == "bd") {
      *out = wrap(qpure::bd_state(a, b, c));
    } else if (f == "ghz") {
      *out = wrap(qpure::noisy_ghz(n, a));
    } else if (f == "mm") {
      if (n < 1 || n > 12) throw qpure::Error(qpure::ErrorCode::InvalidArgument, "n must lie in 1..12");
      *out = wrap(qpure::maximally_mixed(std::vector<std::size_t>(n, 2)));
    } else {
      throw qpure::Error(qpure::ErrorCode::InvalidArgument, "unknown state family '" + f + "'");
    }
  });
}

qpure_status qpure_state_random(const char* kind, const size_t* dims, size_t n_dims, double a, uint64_t seed,
                                uint64_t stream, qpure_state** out) {
  return guarded([&] {
    need(kind, "kind");
    need(out, "out");
    auto d = dims_of(dims, n_dims);
    qpure::Rng rng({seed, stream});
    const std::string k = kind;
    if (k == "haar")
      *out = wrap(qpure::random_pure_haar(d, rng));
    else if (k == "hs")
      *out = wrap(qpure::random_mixed(qpure::MixedEnsemble::HilbertSchmidt, d, rng));
    else if (k == "bures")
      *out = wrap(qpure::random_mixed(qpure::MixedEnsemble::Bures, d, rng));
    else if (k == "fixed")
      *out = wrap(qpure::random_fixed_purity(d, a, rng));
    else
      throw qpure::Error(qpure::ErrorCode::InvalidArgument, "unknown ensemble '" + k + "'");
  });
}

void qpure_state_free(qpure_state* state) { delete state; }

qpure_status qpure_state_dim(const qpure_state* state, size_t* out) {
  return guarded([&] {
    need(state, "state");
    need(out, "out");
    *out = state->rho.dim();
  });
}

qpure_status qpure_state_factors(const qpure_state* state, size_t* out) {
  return guarded([&] {
    need(state, "state");
    need(out, "out");
    *out = state->rho.factors();
  });
}

qpure_status qpure_state_purity(const qpure_state* state, double* out) {
  return guarded([&] {
    need(state, "state");
    need(out, "out");
    *out = qpure::purity(state->rho);
  });
}

qpure_status qpure_state_negativity(const qpure_state* state, const char* block, double* out) {
  return guarded([&] {
    need(state, "state");
    need(out, "out");
    *out = qpure::negativity(state->rho, block_of(state, block));
  });
}

qpure_status qpure_tnorm2(const qpure_state* state, const char* partition, double* direct, double* from_purities) {
  return guarded([&] {
    need(state, "state");
    const auto p = partition_for(state, partition);
    if (direct) *direct = qpure::all_subset_norms2(qpure::corr_tensor(state->rho, p)).back();
    if (from_purities) *from_purities = qpure::tnorm2_from_purities(qpure::reduced_purities(state->rho, p));
  });
}

qpure_status qpure_total_uncertainty(const qpure_state* state, const char* partition, double* direct,
                                     double* from_purities, double* combinations) {
  return guarded([&] {
    need(state, "state");
    const auto p = partition_for(state, partition);
    if (direct) *direct = qpure::total_uncertainty_direct(state->rho, p);
    const auto budget = qpure::total_uncertainty_from_purities(qpure::reduced_purities(state->rho, p));
    if (from_purities) *from_purities = budget.total_uncertainty;
    if (combinations) *combinations = budget.combinations;
  });
}

qpure_status qpure_criterion_report(const qpure_state* state, const char* partition, char** json_out) {
  return guarded([&] {
    need(state, "state");
    need(json_out, "json_out");
    const auto report = qpure::ksep_verdict(state->rho, partition_for(state, partition));
    *json_out = dup_string(qpure::report_to_json(report));
  });
}

qpure_status qpure_sweep(const char* family, const char* config_json, const char* prefix, char** summary_out) {
  return guarded([&] {
    need(family, "family");
    const json cfg = (config_json && *config_json) ? json::parse(config_json) : json::object();
    if (!cfg.is_object()) throw qpure::Error(qpure::ErrorCode::ParseError, "sweep config must be a JSON object");
    qpure::RunConfig rc;
    rc.seed = opt<std::uint64_t>(cfg, "seed", rc.seed);
    rc.stream = opt<std::uint64_t>(cfg, "stream", rc.stream);
    rc.workers = positive(cfg, "workers", rc.workers);
    rc.output = prefix ? prefix : "";
    if (cfg.contains("tolerances")) rc.tolerances = cfg.at("tolerances").get<std::map<std::string, double>>();

    const auto result = run_family(family, cfg, rc);
    if (!rc.output.empty()) qpure::write_sweep_files(result, rc, rc.output);
    emit(summary_out, summary_line(result));

    const auto it = result.summary.find("max_route_difference");
    const auto tol = rc.tolerances.count("route") ? rc.tolerances.at("route") : 1e-9;
    if (it != result.summary.end() && !(it->second <= tol))
      throw InvariantBreach("purity and correlation routes differ by " + qpure::format_number(it->second));
  });
}

qpure_status qpure_validate(size_t samples, uint64_t seed, size_t workers, int* passed, size_t* assertions,
                            char** digest_out) {
  return guarded([&] {
    if (samples == 0) throw qpure::Error(qpure::ErrorCode::InvalidArgument, "samples must be positive");
    const auto report = qpure::run_validation(samples, seed, workers == 0 ? 1 : workers);
    if (passed) *passed = report.passed() ? 1 : 0;
    if (assertions) *assertions = report.assertions;
    std::string digest;
    for (const auto& line : report.digest) digest += line + '\n';
    emit(digest_out, digest);
  });
}

}  // extern "C"
