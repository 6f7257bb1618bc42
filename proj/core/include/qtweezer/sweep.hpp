#pragma once

#include "qtweezer/config.hpp"
#include "qtweezer/model.hpp"

#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace qtweezer {

enum class SweepParameter { omega_eff, g_ab_over_g_b, temperature, omega_b, theta };

/// Config key naming the parameter: Omega_eff, g_ab_over_g_b, T, omega_b, theta.
std::string_view to_string(SweepParameter p);
SweepParameter parse_sweep_parameter(std::string_view name);
Dimension dimension_of(SweepParameter p);

/// What is held fixed while omega_b moves.
enum class DensityConstraint { fixed_atom_number, fixed_central_density };

std::string_view to_string(DensityConstraint c);
DensityConstraint parse_density_constraint(std::string_view name);

struct SweepRequest {
    SweepParameter parameter = SweepParameter::g_ab_over_g_b;
    std::vector<double> grid;   // canonical SI units of the parameter, strictly monotone
    DensityConstraint constraint = DensityConstraint::fixed_atom_number;
    Config base;
    std::string series;         // optional curve label carried into every row
    unsigned threads = 0;       // 0 = hardware concurrency
};

struct SweepRow {
    std::string series;
    double value = 0.0;
    double fidelity = 0.0;
    double g = 0.0;
    double g_min = 0.0;
    bool perturbative = false;
    bool regime_ok = false;
    bool valid = false;
    double omega_eff = 0.0;         // rad/s
    double tau0 = 0.0;              // s
    double central_density = 0.0;   // m^-3
    double atom_number = 0.0;
    double radius = 0.0;            // m
    std::string error;              // empty when the row evaluated

    bool ok() const { return error.empty(); }
};

struct SweepTable {
    SweepParameter parameter = SweepParameter::g_ab_over_g_b;
    DensityConstraint constraint = DensityConstraint::fixed_atom_number;
    std::string config_snapshot;    // canonical text of the base config
    std::string basis;              // e.g. "j=1..500 l=0"
    std::vector<SweepRow> rows;     // grid order
};

/// Strictly increasing or strictly decreasing, non-empty. Throws ConfigError("grid") otherwise.
void check_grid(const std::vector<double>& grid);

/// Evaluates every grid point. Profile, modes and geometry are built once unless the parameter is
/// omega_b. A failing point records its error in-row and the sweep continues.
SweepTable run_sweep(const SweepRequest& request);

/// Concatenates tables of several requests, e.g. the curves of one figure.
SweepTable run_sweeps(const std::vector<SweepRequest>& requests);

std::string describe_basis(const ModeBasisConfig& basis);

struct OptimizeResult {
    double g_ab_over_g_b = 0.0;
    double fidelity = 0.0;
    double g = 0.0;
    bool unimodal = true;
    std::vector<std::pair<double, double>> prescan;    // (g_ab / g_b, P)
    std::vector<std::pair<double, double>> iterates;   // golden-section evaluations
    std::vector<std::string> warnings;
};

/// Maximizes P over g_ab / g_b in [lo, hi]: 21-point pre-scan, then golden-section refinement of the
/// bracket around the best point down to `tol` (absolute, in units of g_b). A non-unimodal pre-scan
/// falls back to the grid argmax with a warning. The bracket endpoints compete with the interior.
OptimizeResult optimize_gab(const Config& base, double lo = 0.0, double hi = 4.0, double tol = 1e-3);

struct BasisConvergenceRow {
    int j_max = 0;
    double g = 0.0;
    double increment = 0.0;   // g(j_max) - g(previous j_max); 0 for the first row
    double relative = 0.0;    // |increment| / g
    bool converged = false;   // relative < 1e-3
};

/// g at the configured drive for increasing basis cut-offs. Integrals are computed once at the
/// largest cut-off and truncated, which matches separate runs because every mode integral converges
/// independently.
std::vector<BasisConvergenceRow> convergence_vs_basis(const Config& base, const std::vector<int>& j_max_grid);

/// Preset curves of the standard figure studies: "2a", "2b", "2c", "2d" or "3". `base` supplies atoms, trap and
/// numerics; each curve overrides the fields it varies.
std::vector<SweepRequest> figure_requests(std::string_view figure, const Config& base, unsigned threads = 0);

} // namespace qtweezer
