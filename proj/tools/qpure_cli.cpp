// qpure command-line front end. Talks to the library only through the C API.
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "qpure/qpure.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitValidation = 2;
constexpr int kExitInvariant = 3;

struct StateDeleter {
  void operator()(qpure_state* s) const { qpure_state_free(s); }
};
using StatePtr = std::unique_ptr<qpure_state, StateDeleter>;

struct CString {
  char* p = nullptr;
  ~CString() { qpure_string_free(p); }
  std::string str() const { return p ? p : ""; }
};

int exit_for(qpure_status s) {
  switch (s) {
    case QPURE_OK: return kExitOk;
    case QPURE_ERR_INVALID_ARGUMENT:
    case QPURE_ERR_INVALID_PARTITION:
    case QPURE_ERR_INVALID_SUBSET:
    case QPURE_ERR_INAPPLICABLE:
      return kExitUsage;
    case QPURE_ERR_INVARIANT:
    case QPURE_ERR_INTERNAL:
      return kExitInvariant;
    default:
      return kExitValidation;
  }
}

int fail(qpure_status s) {
  std::cerr << "qpure: " << qpure_last_error() << '\n';
  return exit_for(s);
}

int write_text(const std::string& text, const std::string& path) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return kExitOk;
  }
  std::ofstream out(path, std::ios::binary);
  if (!(out << text)) {
    std::cerr << "qpure: cannot write " << path << '\n';
    return kExitValidation;
  }
  return kExitOk;
}

std::size_t default_workers() {
  if (const char* env = std::getenv("QPURE_WORKERS")) {
    char* end = nullptr;
    const unsigned long v = std::strtoul(env, &end, 10);
    if (end && *end == '\0' && v > 0) return v;
    std::cerr << "qpure: ignoring QPURE_WORKERS=" << env << '\n';
  }
  return 1;
}

std::vector<std::size_t> parse_dims(const std::string& text) {
  std::vector<std::size_t> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    const auto end = std::min(text.find(',', start), text.size());
    const auto piece = text.substr(start, end - start);
    std::size_t used = 0;
    const auto v = std::stoul(piece, &used);
    if (used != piece.size()) throw std::invalid_argument(piece);
    out.push_back(v);
    start = end + 1;
  }
  return out;
}

// ---------------------------------------------------------------- criterion

struct CriterionArgs {
  std::string state;
  std::string partition;
  std::string out;
};

int run_criterion(const CriterionArgs& a) {
  qpure_state* raw = nullptr;
  if (auto s = qpure_state_load(a.state.c_str(), &raw); s != QPURE_OK) return fail(s);
  StatePtr state(raw);
  CString report;
  if (auto s = qpure_criterion_report(state.get(), a.partition.c_str(), &report.p); s != QPURE_OK) return fail(s);
  return write_text(report.str(), a.out);
}

// -------------------------------------------------------------------- sweep

struct SweepArgs {
  std::string family;
  std::optional<std::size_t> grid, n, samples, k, bins, states, shuffles, workers;
  std::optional<double> min_negativity;
  std::optional<std::string> partitions, dims;
  bool qubits = false;
  std::uint64_t seed = 20240601;
  std::uint64_t stream = 0;
  std::vector<std::string> tolerances;
  std::string out;
};

int run_sweep(const SweepArgs& a) {
  nlohmann::json cfg{{"seed", a.seed}, {"stream", a.stream}, {"workers", a.workers.value_or(default_workers())}};
  auto put = [&](const char* key, const auto& v) {
    if (v) cfg[key] = *v;
  };
  put("grid", a.grid);
  put("n", a.n);
  put("samples", a.samples);
  put("k", a.k);
  put("bins", a.bins);
  put("states", a.states);
  put("shuffles", a.shuffles);
  put("min_negativity", a.min_negativity);
  put("partitions", a.partitions);
  if (a.qubits) cfg["qubits"] = true;
  try {
    if (a.dims) cfg["dims"] = parse_dims(*a.dims);
  } catch (const std::exception&) {
    std::cerr << "qpure: --dims expects comma-separated integers\n";
    return kExitUsage;
  }
  nlohmann::json tol = nlohmann::json::object();
  for (const auto& t : a.tolerances) {
    const auto eq = t.find('=');
    try {
      if (eq == std::string::npos) throw std::invalid_argument(t);
      std::size_t used = 0;
      const std::string value = t.substr(eq + 1);
      tol[t.substr(0, eq)] = std::stod(value, &used);
      if (used != value.size()) throw std::invalid_argument(t);
    } catch (const std::exception&) {
      std::cerr << "qpure: --tol expects name=value, got '" << t << "'\n";
      return kExitUsage;
    }
  }
  if (!tol.empty()) cfg["tolerances"] = tol;

  const std::string prefix = a.out.empty() ? a.family : a.out;
  CString summary;
  const auto s = qpure_sweep(a.family.c_str(), cfg.dump().c_str(), prefix.c_str(), &summary.p);
  if (summary.p) std::cout << summary.str() << '\n';
  if (s != QPURE_OK) return fail(s);
  std::cerr << "wrote " << prefix << ".csv and " << prefix << ".json\n";
  return kExitOk;
}

// ----------------------------------------------------------------- validate

struct ValidateArgs {
  std::size_t samples = 50;
  std::uint64_t seed = 20240601;
  std::optional<std::size_t> workers;
  std::string state;
};

int run_validate(const ValidateArgs& a) {
  if (a.samples == 0) {
    std::cerr << "qpure: --samples must be positive\n";
    return kExitUsage;
  }
  if (!a.state.empty()) {
    qpure_state* raw = nullptr;
    if (auto s = qpure_state_load(a.state.c_str(), &raw); s != QPURE_OK) return fail(s);
    StatePtr state(raw);
    std::cout << a.state << ": valid density matrix\n";
  }
  int passed = 0;
  std::size_t assertions = 0;
  CString digest;
  const auto s = qpure_validate(a.samples, a.seed, a.workers.value_or(default_workers()), &passed, &assertions,
                                &digest.p);
  if (s != QPURE_OK) return fail(s);
  std::cout << assertions << " assertions, " << (passed ? "all passed" : "FAILURES") << '\n';
  if (!passed) {
    std::cerr << digest.str();
    return kExitInvariant;
  }
  return kExitOk;
}

// -------------------------------------------------------------------- state

struct StateArgs {
  std::string family;
  std::string kind = "psi-";
  std::string ensemble = "hs";
  std::string dims = "2,2";
  std::size_t n = 3;
  double w = 1.0;
  double p = 1.0;
  double purity = 0.5;
  std::vector<double> t{-1.0, -1.0, -1.0};
  std::uint64_t seed = 20240601;
  std::uint64_t stream = 0;
  std::string out;
};

int run_state(const StateArgs& a) {
  qpure_state* raw = nullptr;
  qpure_status s = QPURE_OK;
  if (a.family == "bell")
    s = qpure_state_named("bell", a.kind.c_str(), 0, 0, 0, 0, &raw);
  else if (a.family == "werner")
    s = qpure_state_named("werner", a.kind.c_str(), 0, a.w, 0, 0, &raw);
  else if (a.family == "ghz")
    s = qpure_state_named("ghz", nullptr, a.n, a.p, 0, 0, &raw);
  else if (a.family == "mm")
    s = qpure_state_named("mm", nullptr, a.n, 0, 0, 0, &raw);
  else if (a.family == "bd") {
    if (a.t.size() != 3) {
      std::cerr << "qpure: --t expects three values\n";
      return kExitUsage;
    }
    s = qpure_state_named("bd", nullptr, 0, a.t[0], a.t[1], a.t[2], &raw);
  } else {
    std::vector<std::size_t> dims;
    try {
      dims = parse_dims(a.dims);
    } catch (const std::exception&) {
      std::cerr << "qpure: --dims expects comma-separated integers\n";
      return kExitUsage;
    }
    s = qpure_state_random(a.ensemble.c_str(), dims.data(), dims.size(), a.purity, a.seed, a.stream, &raw);
  }
  if (s != QPURE_OK) return fail(s);
  StatePtr state(raw);
  CString text;
  if (auto e = qpure_state_to_json(state.get(), &text.p); e != QPURE_OK) return fail(e);
  return write_text(text.str(), a.out);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Purity-based entanglement and nonlocality criteria"};
  app.set_version_flag("--version", std::string(qpure_version()));
  app.require_subcommand(1);

  CriterionArgs crit;
  auto* c = app.add_subcommand("criterion", "Criterion report for a state file");
  c->add_option("--state", crit.state, "State JSON file")->required();
  c->add_option("--partition", crit.partition, "Partition such as \"0,1|2\"")->required();
  c->add_option("--out", crit.out, "Write JSON here instead of stdout");

  SweepArgs sw;
  auto* s = app.add_subcommand("sweep", "Run an experiment family, write CSV and JSON sidecar");
  s->add_option("family", sw.family, "werner | ghz | bd-geometry | nmeas | negativity | costs | moments")
      ->required()
      ->check(CLI::IsMember({"werner", "ghz", "bd-geometry", "nmeas", "negativity", "costs", "moments"}));
  s->add_option("--grid", sw.grid, "Grid points");
  s->add_option("--n", sw.n, "Number of qubits");
  s->add_option("--samples", sw.samples, "Samples");
  s->add_option("--k", sw.k, "Parties for the cost table");
  s->add_option("--bins", sw.bins, "Purity bins (nmeas)");
  s->add_option("--states", sw.states, "States per bin (nmeas)");
  s->add_option("--shuffles", sw.shuffles, "Measurement orders per state (nmeas)");
  s->add_option("--min-negativity", sw.min_negativity, "Keep only states above this negativity");
  s->add_option("--partitions", sw.partitions, "\"all\" or ';'-separated partitions");
  s->add_option("--dims", sw.dims, "Comma-separated local dimensions");
  s->add_flag("--qubits", sw.qubits, "Cost table for qubits only");
  s->add_option("--seed", sw.seed, "RNG seed");
  s->add_option("--stream", sw.stream, "RNG stream");
  s->add_option("--workers", sw.workers, "Worker threads (default $QPURE_WORKERS or 1)");
  s->add_option("--tol", sw.tolerances, "Tolerance override name=value");
  s->add_option("--out", sw.out, "Output prefix (default: family name)");

  ValidateArgs va;
  auto* v = app.add_subcommand("validate", "Run the invariant suites");
  v->add_option("--samples", va.samples, "Random states per dimension set");
  v->add_option("--seed", va.seed, "RNG seed");
  v->add_option("--workers", va.workers, "Worker threads (default $QPURE_WORKERS or 1)");
  v->add_option("--state", va.state, "Also validate this state file");

  StateArgs st;
  auto* g = app.add_subcommand("state", "Write a state file");
  g->add_option("family", st.family, "bell | werner | ghz | mm | bd | random")
      ->required()
      ->check(CLI::IsMember({"bell", "werner", "ghz", "mm", "bd", "random"}));
  g->add_option("--kind", st.kind, "Bell state: phi+ phi- psi+ psi-");
  g->add_option("--w", st.w, "Werner weight");
  g->add_option("--n", st.n, "Qubits (ghz, mm)");
  g->add_option("--p", st.p, "GHZ weight");
  g->add_option("--t", st.t, "Bell-diagonal t11 t22 t33")->expected(3)->delimiter(',');
  g->add_option("--ensemble", st.ensemble, "haar | hs | bures | fixed");
  g->add_option("--purity", st.purity, "Target purity (fixed)");
  g->add_option("--dims", st.dims, "Comma-separated local dimensions");
  g->add_option("--seed", st.seed, "RNG seed");
  g->add_option("--stream", st.stream, "RNG stream");
  g->add_option("--out", st.out, "Write here instead of stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitUsage;
  }

  if (c->parsed()) return run_criterion(crit);
  if (s->parsed()) return run_sweep(sw);
  if (v->parsed()) return run_validate(va);
  return run_state(st);
}
