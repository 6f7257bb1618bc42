#pragma once

#include "qtweezer/couplings.hpp"

#include <Eigen/Dense>

#include <string>
#include <vector>

namespace qtweezer {

/// One bath mode of the truncated spin-boson model.
struct OracleMode {
    double omega = 0.0;
    double alpha_x = 0.0;
    double alpha_y = 0.0;
    double alpha_z = 0.0;
    double occupation = 0.0;  // mean thermal occupation of the initial bath state
};

struct OracleConfig {
    std::vector<OracleMode> modes;   // at most 3
    int n_max = 3;                   // per-mode truncation
    double omega_eff = 1.0;
    double theta = 1.5707963267948966;
    double lambda = 1.0;             // scales every alpha
    double thermal_weight = 0.999;   // cumulative weight kept from a thermal initial bath
};

inline constexpr int oracle_max_modes = 3;
inline constexpr long oracle_max_dimension = 4096;

/// 2 * (n_max + 1)^modes; throws std::invalid_argument past the cap.
long oracle_dimension(std::size_t modes, int n_max);

/// H = Omega_eff sigma_x / 2 + sum omega b^dag b
///     + (lambda / 2) sum (alpha_x sigma_x + i alpha_y sigma_y + 2 alpha_z sigma_z) b + h.c.
/// Spin index 0 is |0> (the empty tweezer), sigma = |0><1| and sigma_z = |1><1| - |0><0|.
/// Index layout is spin-major, then modes in order with the first mode most significant.
/// Every entry is real in this basis, so the result is a real symmetric matrix.
Eigen::MatrixXd build_hamiltonian(const std::vector<OracleMode>& modes, double omega_eff, double lambda,
                                   int n_max);

/// A weighted bath number state |n_1 n_2 ...>.
struct BathState {
    std::vector<int> occupations;
    double weight = 1.0;
};

/// Product of geometric distributions, heaviest states first, kept until the cumulative weight
/// reaches `target`, then renormalized. Vacuum when all occupations are zero. States must leave
/// one level of headroom below n_max; throws std::invalid_argument otherwise.
std::vector<BathState> thermal_mixture(const std::vector<OracleMode>& modes, int n_max, double target);

struct ExactResult {
    double fidelity = 0.0;          // P
    double trace = 1.0;             // sum of evolved state norms weighted by the mixture
    std::size_t mixture_size = 0;
};

/// P = Tr{(|theta><theta| x 1) U rho(0) U^dag} with rho(0) = |0><0| x rho_B and U = exp(-i H tau).
/// Target |theta> = cos(theta)|0> - i sin(theta)|1>. The propagator comes from diagonalization.
ExactResult evolve_and_measure(const Eigen::MatrixXd& hamiltonian, double theta, double tau,
                               const std::vector<BathState>& bath, int n_max);

/// Perturbative g for the oracle modes with couplings scaled by lambda, at tau0 = 2 theta / Omega_eff.
double oracle_perturbative_g(const OracleConfig& config);

/// Runs the exact evolution for `config` at tau0.
ExactResult oracle_exact(const OracleConfig& config);

/// Oracle modes from coupling records. With `normalize`, every alpha is rescaled by one common factor
/// so the largest |alpha| equals the lowest selected omega; ratios between couplings are preserved.
std::vector<OracleMode> oracle_modes(const std::vector<CouplingRecord>& records, const std::vector<Mode>& basis,
                                     const std::vector<ModeIndex>& selection, bool normalize);

struct OracleRow {
    double lambda = 0.0;
    double exact_p = 0.0;
    double perturbative_p = 0.0;
    double g = 0.0;
    double discrepancy = 0.0;   // (1 - P_exact) - g
    double relative = 0.0;      // |discrepancy| / g
    double trace = 1.0;
};

struct OracleReport {
    std::vector<OracleRow> rows;   // ascending lambda
    double fitted_order = 0.0;     // log-log slope of |discrepancy| vs lambda
    double max_trace_error = 0.0;
    bool converged = false;        // fitted_order > 2 and relative error at the smallest lambda < 0.1
    std::vector<std::string> notes;
};

/// Sweeps lambda over `lambdas` (ascending, spanning at least a decade). Points run on up to `threads` workers.
OracleReport convergence_check(const OracleConfig& config, const std::vector<double>& lambdas,
                               unsigned threads = 0);

} // namespace qtweezer
