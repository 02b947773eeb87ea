#include "serialize.hpp"

#include <charconv>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace qpure {

using nlohmann::json;

namespace {

std::string subset_key(SubsetMask mask) {
  std::string key;
  for (std::size_t b : blocks_of(mask)) key += (key.empty() ? "" : ",") + std::to_string(b);
  return key;
}

}  // namespace

DensityMatrix parse_state_json(std::string_view text, const Tolerances& tol) {
  json doc;
  try {
    doc = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::ParseError, e.what());
  }
  if (!doc.is_object() || !doc.contains("dims") || !doc.contains("matrix"))
    throw Error(ErrorCode::ParseError, "state file needs \"dims\" and \"matrix\"");
  std::vector<std::size_t> dims;
  try {
    dims = doc.at("dims").get<std::vector<std::size_t>>();
  } catch (const json::exception& e) {
    throw Error(ErrorCode::ParseError, std::string("dims: ") + e.what());
  }
  const auto& rows = doc.at("matrix");
  if (!rows.is_array() || rows.empty()) throw Error(ErrorCode::ParseError, "matrix must be a nonempty array of rows");
  const auto n = static_cast<Eigen::Index>(rows.size());
  ComplexMatrix m(n, n);
  for (Eigen::Index r = 0; r < n; ++r) {
    const auto& row = rows[static_cast<std::size_t>(r)];
    if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != n)
      throw Error(ErrorCode::ParseError, "matrix row " + std::to_string(r) + " must have " + std::to_string(n) +
                                             " entries");
    for (Eigen::Index c = 0; c < n; ++c) {
      const auto& z = row[static_cast<std::size_t>(c)];
      if (!z.is_array() || z.size() != 2 || !z[0].is_number() || !z[1].is_number())
        throw Error(ErrorCode::ParseError,
                    "entry (" + std::to_string(r) + "," + std::to_string(c) + ") must be [re, im]");
      m(r, c) = Complex(z[0].get<double>(), z[1].get<double>());
    }
  }
  return validate_density(m, std::move(dims), tol);
}

DensityMatrix load_state_file(const std::string& path, const Tolerances& tol) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::IoError, "cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_state_json(buf.str(), tol);
}

std::string state_to_json(const DensityMatrix& rho) {
  json rows = json::array();
  const auto& m = rho.matrix();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back({m(r, c).real(), m(r, c).imag()});
    rows.push_back(std::move(row));
  }
  json doc{{"dims", rho.dims()}, {"matrix", std::move(rows)}};
  return doc.dump() + "\n";
}

void save_state_file(const DensityMatrix& rho, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::IoError, "cannot write " + path);
  out << state_to_json(rho);
}

std::string report_to_json(const CriterionReport& r, int indent) {
  json purities = json::object(), entropies = json::object();
  for (const auto& [mask, p] : r.purities.entries) {
    purities[subset_key(mask)] = p;
    entropies[subset_key(mask)] = p > 0.0 ? renyi2(std::min(p, 1.0)) : std::numeric_limits<double>::infinity();
  }
  json verdicts = json::object();
  for (const auto& [name, v] : r.verdicts) verdicts[name] = verdict_name(v);
  json aux = json::object();
  for (const auto& [name, v] : r.auxiliary) aux[name] = v;

  json doc{{"partition", r.partition.to_string()},
           {"blocks", r.partition.blocks()},
           {"block_dims", r.block_dims},
           {"purities", std::move(purities)},
           {"renyi2", std::move(entropies)},
           {"tnorm2", {{"direct", r.tnorm2_direct}, {"purities", r.tnorm2_purities}}},
           {"threshold", r.threshold},
           {"delta_tilde", r.delta_tilde},
           {"entropic", r.entropic},
           {"verdicts", std::move(verdicts)},
           {"auxiliary", std::move(aux)}};
  if (r.chsh) {
    doc["chsh"] = {{"u", r.chsh->u},
                   {"u1_plus_u2", r.chsh->u[0] + r.chsh->u[1]},
                   {"rest", r.chsh->rest},
                   {"verdict", verdict_name(r.chsh->verdict)},
                   {"purity_form", verdict_name(r.chsh->purity_form)}};
  } else {
    doc["chsh"] = nullptr;
  }
  if (r.gme) {
    doc["gme"] = {{"tnorm2", r.gme->tnorm2},
                  {"purity_form", r.gme->purity_form},
                  {"bound", r.gme->bound},
                  {"verdict", verdict_name(r.gme->verdict)}};
  } else {
    doc["gme"] = nullptr;
  }
  json warnings = json::array();
  if (r.auxiliary.count("imag_residue") && r.auxiliary.at("imag_residue") > kImagResidueWarning)
    warnings.push_back("correlation tensor imaginary residue above threshold");
  doc["warnings"] = std::move(warnings);
  return doc.dump(indent) + "\n";
}

std::string format_number(double v) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return ec == std::errc() ? std::string(buf, end) : std::string("nan");
}

void write_csv(const SweepResult& result, std::ostream& out) {
  for (std::size_t i = 0; i < result.columns.size(); ++i) out << (i ? "," : "") << result.columns[i];
  out << "\n";
  for (const auto& row : result.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out << ',';
      std::visit(
          [&](const auto& v) {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, double>)
              out << format_number(v);
            else
              out << v;
          },
          row[i]);
    }
    out << "\n";
  }
}

std::string sidecar_json(const SweepResult& result, const RunConfig& cfg, const std::string& csv_name) {
  json tolerances = json::object();
  for (const auto& [k, v] : cfg.tolerances) tolerances[k] = v;
  json doc{{"family", result.family},
           {"csv", csv_name},
           {"columns", result.columns},
           {"rows", result.rows.size()},
           {"run_config",
            {{"seed", cfg.seed},
             {"stream", cfg.stream},
             {"output", cfg.output},
             {"tolerances", std::move(tolerances)},
             {"workers", cfg.workers}}},
           {"metadata", result.metadata},
           {"summary", result.summary},
           {"notes", result.notes}};
  return doc.dump(2) + "\n";
}

void write_sweep_files(const SweepResult& result, const RunConfig& cfg, const std::string& prefix) {
  const std::string csv_path = prefix + ".csv";
  const std::string json_path = prefix + ".json";
  if (const auto parent = std::filesystem::path(prefix).parent_path(); !parent.empty())
    std::filesystem::create_directories(parent);
  {
    std::ofstream out(csv_path, std::ios::binary);
    if (!out) throw Error(ErrorCode::IoError, "cannot write " + csv_path);
    write_csv(result, out);
  }
  std::ofstream out(json_path, std::ios::binary);
  if (!out) throw Error(ErrorCode::IoError, "cannot write " + json_path);
  out << sidecar_json(result, cfg, std::filesystem::path(csv_path).filename().string());
}

}  // namespace qpure
