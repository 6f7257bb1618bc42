#pragma once

#include <optional>
#include <string>
#include <vector>

namespace qtweezer {

/// Thomas-Fermi mean field of a spherical harmonic trap in oscillator units
/// (hbar = M = omega_b = 1, lengths in a_ho).
struct TFProfile {
    double chemical_potential = 0.0;  // mu
    double radius = 0.0;              // R = sqrt(2 mu)
    double central_density = 0.0;     // n0 = mu / g_b
    double g_b = 0.0;
    double atom_number = 0.0;         // N = (8 pi / 15) n0 R^3
    std::vector<std::string> warnings;
};

/// Solves the Thomas-Fermi limit from either N or n0 (exactly one). `scattering_length` is a_b/a_ho.
/// Adds a validity warning when N a_b / a_ho < 10.
TFProfile solve_tf(double scattering_length, std::optional<double> atom_number,
                   std::optional<double> central_density);

/// n(r) = max(0, (mu - r^2/2) / g_b).
double density(const TFProfile& profile, double r);

/// phi_b(r) = sqrt(n(r)); real and non-negative.
double wavefunction(const TFProfile& profile, double r);

/// Chemical potential mu = (1/2) (15 N a_b)^(2/5) for a_b in units of a_ho.
double tf_chemical_potential(double atom_number, double scattering_length);

} // namespace qtweezer
