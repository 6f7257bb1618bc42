#pragma once

#include "qtweezer/couplings.hpp"
#include "qtweezer/modes.hpp"
#include "qtweezer/tweezer.hpp"

#include <string>
#include <vector>

namespace qtweezer {

/// Finite-time spectral window sin(x tau / 2) / (pi x); tau / (2 pi) at x = 0.
double delta_window(double x, double tau);

struct ACoefficients {
    double a1 = 0.0;
    double a2 = 0.0;
    double a3 = 0.0;
    double a4 = 0.0;
};

/// Second-order coefficients of one mode at pulse length tau0, with
/// alpha_+- = alpha_y +- 2 alpha_z and omega^+- = omega +- Omega_eff.
ACoefficients a_coefficients(double omega, double alpha_x, double alpha_y, double alpha_z, double omega_eff,
                             double tau0);
ACoefficients a_coefficients(const CouplingRecord& record, double omega_eff, double tau0);

struct QuenchResidual {
    double residual = 0.0;  // omega alpha_y - 2 Omega_eff alpha_z
    double ratio = 0.0;     // 0 for perfect cancellation, 1 when one channel is absent
};

QuenchResidual quench_residual(double omega, double alpha_y, double alpha_z, double omega_eff);

struct ModeContribution {
    ModeIndex index;
    double omega = 0.0;
    double occupation = 0.0;
    ACoefficients a;
    double term = 0.0;  // pi^2 [A1 cos(theta) + (2n+1)(A2 cos(2 theta) + A3 + A4)]
    QuenchResidual quench;
};

struct FidelityResult {
    double theta = 0.0;
    double omega_eff = 0.0;
    double tau0 = 0.0;           // 2 theta / Omega_eff
    std::vector<ModeContribution> contributions;  // basis order
    double g = 0.0;
    double fidelity = 1.0;       // P = 1 - g
    double g_min = 0.0;          // pi^2 sum (2n+1) A4 at the same tau0
    bool perturbative = true;    // g < g_warn
    std::vector<std::string> warnings;
};

/// tau0 = 2 theta / Omega_eff.
double ideal_transfer_time(double theta, double omega_eff);

/// Evaluates g(theta, tau0) over the couplings. `basis` supplies the thermal occupations and must be
/// in the same order as `couplings.records`. The reduction runs in canonical (l, j) order with
/// compensated summation, so any permutation of the inputs gives a bit-identical g.
FidelityResult g_function(double theta, const CouplingSet& couplings, const std::vector<Mode>& basis,
                          double g_warn = 0.1);

/// pi^2 sum_q (2 n_q + 1) A4_q at tau0 = 2 theta / Omega_eff; theta defaults to pi/2.
double g_min_floor(const CouplingSet& couplings, const std::vector<Mode>& basis, double theta = 1.5707963267948966);

} // namespace qtweezer
