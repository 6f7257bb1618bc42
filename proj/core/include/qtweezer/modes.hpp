#pragma once

#include "qtweezer/condensate.hpp"
#include "qtweezer/config.hpp"

#include <span>
#include <string>
#include <vector>

namespace qtweezer {

/// Quasiparticle label. m is always 0: the tweezer sits on the z axis through the trap centre.
struct ModeIndex {
    int j = 0;
    int ell = 0;
    int m = 0;

    friend bool operator==(const ModeIndex&, const ModeIndex&) = default;
};

std::string to_string(const ModeIndex& index);

/// Hydrodynamic Bogoliubov mode of a spherical Thomas-Fermi condensate.
struct Mode {
    ModeIndex index;
    double omega = 0.0;       // in units of omega_b
    double occupation = 0.0;  // mean thermal quasiparticle number
    double norm = 0.0;        // amplitude of the radial Jacobi form, see density_fluctuation
};

/// omega_{j,l} = omega_b sqrt(2 j^2 + 2 j l + 3 j + l).
double dispersion(int j, int ell, double omega_b = 1.0);

/// Bose factor 1 / (exp(omega / kT) - 1); zero at kT = 0. Both arguments in the same energy unit.
double thermal_occupation(double omega, double thermal_energy);

/// Y_{l0}(cos theta).
double spherical_harmonic_m0(int ell, double cos_theta);

/// Jacobi polynomials P_n^{(alpha, 0)}(z) for n = 0..out.size()-1 by the three-term recurrence.
void jacobi_family(double alpha, double z, std::span<double> out);

/// Terminating series sum_{p=0..j} (-j)_p (j+l+3/2)_p / ((l+3/2)_p p!) x^p, built from Pochhammer
/// ratios. Equals j! / (l+3/2)_j * P_j^{(l+1/2,0)}(1-2x). Accurate for moderate j; for large j and
/// x near 1 the alternating terms cancel.
double hydro_series(int j, int ell, double x);

/// Normalization constant so that int |dn|^2 d^3r = omega / (2 g_b), for the radial form
/// (r/R)^l P_j^{(l+1/2,0)}(1 - 2 r^2/R^2).
double mode_norm(int j, int ell, double omega, const TFProfile& profile);

Mode make_mode(ModeIndex index, const TFProfile& profile, double thermal_energy);

/// Radial factor of the density fluctuation: norm (r/R)^l P_j(1 - 2r^2/R^2). Requires 0 <= r < R.
double density_fluctuation_radial(const Mode& mode, const TFProfile& profile, double r);

/// dn_q(r) = radial(r) Y_{l0}(cos theta). Throws std::domain_error for r >= R.
double density_fluctuation(const Mode& mode, const TFProfile& profile, double r, double cos_theta);

/// (u - v)(r) = dn_q / sqrt(n). Grows as n^{-1/2} toward the surface; defined only for r < R.
double f_minus(const Mode& mode, const TFProfile& profile, double r, double cos_theta);

/// (u + v)(r) = (2 g_b n / omega) (u - v).
double f_plus(const Mode& mode, const TFProfile& profile, double r, double cos_theta);

/// Deterministic ordering: ascending l, then ascending j. Excludes (0, 0).
std::vector<Mode> build_basis(const ModeBasisConfig& config, const TFProfile& profile, double thermal_energy);

} // namespace qtweezer
