#include "qtweezer/modes.hpp"

#include "qtweezer/units.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace qtweezer {

std::string to_string(const ModeIndex& index) {
    return "mode(j=" + std::to_string(index.j) + ", l=" + std::to_string(index.ell) + ")";
}

double dispersion(int j, int ell, double omega_b) {
    const double jj = j;
    const double ll = ell;
    return omega_b * std::sqrt(2.0 * jj * jj + 2.0 * jj * ll + 3.0 * jj + ll);
}

double thermal_occupation(double omega, double thermal_energy) {
    if (thermal_energy <= 0.0) return 0.0;
    return 1.0 / std::expm1(omega / thermal_energy);
}

double spherical_harmonic_m0(int ell, double cos_theta) {
    return std::sqrt((2.0 * ell + 1.0) / (4.0 * constants::pi)) *
           std::legendre(static_cast<unsigned>(ell), cos_theta);
}

void jacobi_family(double alpha, double z, std::span<double> out) {
    if (out.empty()) return;
    out[0] = 1.0;
    if (out.size() == 1) return;
    out[1] = 0.5 * (alpha + 2.0) * z + 0.5 * alpha;
    // beta = 0 specialisation of the standard recurrence.
    for (std::size_t k = 2; k < out.size(); ++k) {
        const double n = static_cast<double>(k);
        const double s = 2.0 * n + alpha;
        const double a = 2.0 * n * (n + alpha) * (s - 2.0);
        const double b = (s - 1.0) * (s * (s - 2.0) * z + alpha * alpha);
        const double c = 2.0 * (n + alpha - 1.0) * (n - 1.0) * s;
        out[k] = (b * out[k - 1] - c * out[k - 2]) / a;
    }
}

double hydro_series(int j, int ell, double x) {
    const double a = ell + 1.5;
    const double b = j + ell + 1.5;
    double term = 1.0;
    double sum = 1.0;
    for (int p = 0; p < j; ++p) {
        // ratio of consecutive terms: (p - j)(b + p) / ((a + p)(p + 1)) x
        term *= (static_cast<double>(p) - j) * (b + p) / ((a + p) * (p + 1.0)) * x;
        sum += term;
    }
    return sum;
}

double mode_norm(int j, int ell, double omega, const TFProfile& profile) {
    const double r3 = profile.radius * profile.radius * profile.radius;
    return std::sqrt(omega / (2.0 * profile.g_b) * 2.0 * (2.0 * j + ell + 1.5) / r3);
}

Mode make_mode(ModeIndex index, const TFProfile& profile, double thermal_energy) {
    Mode m;
    m.index = index;
    m.omega = dispersion(index.j, index.ell);
    m.occupation = thermal_occupation(m.omega, thermal_energy);
    m.norm = mode_norm(index.j, index.ell, m.omega, profile);
    return m;
}

namespace {

void require_interior(const TFProfile& profile, double r) {
    if (!(r >= 0.0) || !(r < profile.radius)) {
        throw std::domain_error("mode functions are defined only for 0 <= r < R");
    }
}

double jacobi_single(int j, double alpha, double z) {
    double prev = 1.0;
    if (j == 0) return prev;
    double cur = 0.5 * (alpha + 2.0) * z + 0.5 * alpha;
    for (int k = 2; k <= j; ++k) {
        const double n = k;
        const double s = 2.0 * n + alpha;
        const double next = ((s - 1.0) * (s * (s - 2.0) * z + alpha * alpha) * cur -
                             2.0 * (n + alpha - 1.0) * (n - 1.0) * s * prev) /
                            (2.0 * n * (n + alpha) * (s - 2.0));
        prev = cur;
        cur = next;
    }
    return cur;
}

} // namespace

double density_fluctuation_radial(const Mode& mode, const TFProfile& profile, double r) {
    require_interior(profile, r);
    const double s = r / profile.radius;
    const double z = 1.0 - 2.0 * s * s;
    return mode.norm * std::pow(s, mode.index.ell) * jacobi_single(mode.index.j, mode.index.ell + 0.5, z);
}

double density_fluctuation(const Mode& mode, const TFProfile& profile, double r, double cos_theta) {
    return density_fluctuation_radial(mode, profile, r) * spherical_harmonic_m0(mode.index.ell, cos_theta);
}

double f_minus(const Mode& mode, const TFProfile& profile, double r, double cos_theta) {
    require_interior(profile, r);
    return density_fluctuation(mode, profile, r, cos_theta) / std::sqrt(density(profile, r));
}

double f_plus(const Mode& mode, const TFProfile& profile, double r, double cos_theta) {
    require_interior(profile, r);
    return 2.0 * profile.g_b * density(profile, r) / mode.omega * f_minus(mode, profile, r, cos_theta);
}

std::vector<Mode> build_basis(const ModeBasisConfig& config, const TFProfile& profile, double thermal_energy) {
    std::vector<int> ells = config.ells;
    std::sort(ells.begin(), ells.end());
    std::vector<Mode> modes;
    for (int ell : ells) {
        for (int j = config.j_min; j <= config.j_max; ++j) {
            if (j == 0 && ell == 0) continue;
            modes.push_back(make_mode(ModeIndex{j, ell, 0}, profile, thermal_energy));
        }
    }
    return modes;
}

} // namespace qtweezer
