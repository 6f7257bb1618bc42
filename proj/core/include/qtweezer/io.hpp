#pragma once

#include "qtweezer/model.hpp"
#include "qtweezer/oracle.hpp"
#include "qtweezer/sweep.hpp"

#include <string>
#include <string_view>
#include <vector>

namespace qtweezer {

/// Scientific notation with 12 significant digits, the CSV number format.
std::string format_number(double v);

/// Comma-separated table: '#'-prefixed metadata (parameter, constraint, basis, config snapshot),
/// one header row, then one row per grid point. The series column appears only when some row has one.
std::string sweep_to_csv(const SweepTable& table);

/// Parses sweep_to_csv output back into a table. Throws std::invalid_argument on malformed input.
SweepTable sweep_from_csv(std::string_view text);

/// Same content as the CSV, as a JSON object.
std::string sweep_to_json(const SweepTable& table);

/// P, g, g_min, tau0, Omega_eff, Omega_0, omega_gap and the validity flags of one evaluation.
/// The CSV form carries these as metadata and lists the per-mode breakdown as rows.
std::string fidelity_to_json(const Setup& setup, const Evaluation& eval);
std::string fidelity_to_csv(const Setup& setup, const Evaluation& eval);

/// Mode table; with `couplings`, adds alpha_x, alpha_y, alpha_z and the quench residual ratio.
std::string modes_to_csv(const Setup& setup, const Evaluation* couplings);
std::string modes_to_json(const Setup& setup, const Evaluation* couplings);

std::string optimize_to_json(const OptimizeResult& result);
std::string optimize_to_csv(const OptimizeResult& result);

std::string oracle_to_json(const OracleReport& report, const OracleConfig& config);
std::string oracle_to_csv(const OracleReport& report);

std::string basis_convergence_to_json(const std::vector<BasisConvergenceRow>& rows);
std::string basis_convergence_to_csv(const std::vector<BasisConvergenceRow>& rows);

} // namespace qtweezer
