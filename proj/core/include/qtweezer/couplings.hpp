#pragma once

#include "qtweezer/condensate.hpp"
#include "qtweezer/modes.hpp"
#include "qtweezer/quadrature.hpp"
#include "qtweezer/tweezer.hpp"

#include <functional>
#include <utility>
#include <vector>

namespace qtweezer {

/// int_{-1}^{1} cos(x c) Y_{l0}(c) dc evaluated with the given rule.
double angular_cos_moment(int ell, double x, const GaussRule& rule);

/// Angular order used for the cos(k z) factor over a sphere of radius r_max.
int angular_order_for(double wave_number, double r_max, const QuadratureSpec& spec);

/// Drive-independent overlap integrals of one mode with the tweezer ground state.
/// Multiply by Omega_0 / 2 (laser terms) or g_ab / 2 (collision term) to get the couplings.
struct ModeIntegrals {
    ModeIndex index;
    double omega = 0.0;
    double laser_minus = 0.0;   // int cos(kz) phi_a (u - v)
    double laser_plus = 0.0;    // int cos(kz) phi_a (u + v)
    double collision = 0.0;     // int |phi_a|^2 phi_b (u - v), zero for l != 0
    double achieved = 0.0;
};

/// Everything the couplings need that does not depend on Omega_0 or g_ab.
struct CouplingGeometry {
    double rabi_overlap = 0.0;   // Omega_eff / Omega_0
    std::vector<ModeIntegrals> modes;
    double achieved_rtol = 0.0;
    double radial_cutoff = 0.0;
    int angular_order = 0;
};

/// Integrates the overlap and all mode integrals on a shared radial grid over [0, extent * a_a].
/// Throws NumericalError naming the first mode whose integral does not converge.
CouplingGeometry build_geometry(const std::vector<Mode>& basis, const TFProfile& profile,
                                const TweezerState& tweezer, double wave_number, const QuadratureSpec& spec);

/// Omega_eff = Omega_0 int cos(k.r) phi_a phi_b d^3r for an isotropic phi_b.
double rabi_eff(double omega_0, const TweezerState& tweezer, const std::function<double(double)>& phi_b,
                double wave_number, const QuadratureSpec& spec);

/// (alpha_x, alpha_y) = (Omega_0 / 2) int cos(kz) phi_a (u -/+ v). Odd l gives exactly zero.
std::pair<double, double> alpha_xy(const Mode& mode, double omega_0, const TweezerState& tweezer,
                                   const TFProfile& profile, double wave_number, const QuadratureSpec& spec);

/// alpha_z = (g_ab / 2) int |phi_a|^2 phi_b (u - v). Exactly zero for l != 0.
double alpha_z(const Mode& mode, double g_ab, const TweezerState& tweezer, const TFProfile& profile,
               const QuadratureSpec& spec);

struct CouplingRecord {
    ModeIndex index;
    double omega = 0.0;
    double alpha_x = 0.0;
    double alpha_y = 0.0;
    double alpha_z = 0.0;
    double residual = 0.0;        // omega alpha_y - 2 Omega_eff alpha_z
    double residual_ratio = 0.0;  // |residual| / (omega |alpha_y| + 2 Omega_eff |alpha_z|)
};

struct CouplingSet {
    double omega_0 = 0.0;
    double omega_eff = 0.0;
    std::vector<CouplingRecord> records;
    double achieved_rtol = 0.0;
};

/// Scales the geometry by the drive and collision strengths; records stay in basis order.
CouplingSet build_couplings(const CouplingGeometry& geometry, double omega_0, double g_ab);

} // namespace qtweezer
