#pragma once

#include <iosfwd>
#include <string>
#include <string_view>

#include "criteria.hpp"
#include "experiments.hpp"
#include "matcore.hpp"

namespace qpure {

/// State file: {"dims": [...], "matrix": [[[re, im], ...], ...]}, row-major.
DensityMatrix parse_state_json(std::string_view text, const Tolerances& tol = {});
DensityMatrix load_state_file(const std::string& path, const Tolerances& tol = {});
std::string state_to_json(const DensityMatrix& rho);
void save_state_file(const DensityMatrix& rho, const std::string& path);

std::string report_to_json(const CriterionReport& report, int indent = 2);

/// Shortest text that parses back to the same double; '.' separator.
std::string format_number(double v);

void write_csv(const SweepResult& result, std::ostream& out);
std::string sidecar_json(const SweepResult& result, const RunConfig& cfg, const std::string& csv_name);

/// Writes <prefix>.csv and <prefix>.json.
void write_sweep_files(const SweepResult& result, const RunConfig& cfg, const std::string& prefix);

}  // namespace qpure
