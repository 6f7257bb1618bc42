#include "qtweezer/condensate.hpp"

#include "qtweezer/errors.hpp"
#include "qtweezer/units.hpp"

#include <cmath>
#include <stdexcept>

namespace qtweezer {

double tf_chemical_potential(double atom_number, double scattering_length) {
    return 0.5 * std::pow(15.0 * atom_number * scattering_length, 0.4);
}

TFProfile solve_tf(double scattering_length, std::optional<double> atom_number,
                   std::optional<double> central_density) {
    if (atom_number.has_value() == central_density.has_value()) {
        throw ConfigError("N/n0", "exactly one of atom number and central density is required");
    }
    if (!(scattering_length > 0.0)) throw ConfigError("a_b", "must be positive");

    TFProfile p;
    p.g_b = 4.0 * constants::pi * scattering_length;
    if (atom_number) {
        if (!(*atom_number > 0.0)) throw ConfigError("N", "must be positive");
        p.atom_number = *atom_number;
        p.chemical_potential = tf_chemical_potential(*atom_number, scattering_length);
        p.central_density = p.chemical_potential / p.g_b;
    } else {
        if (!(*central_density > 0.0)) throw ConfigError("n0", "must be positive");
        p.central_density = *central_density;
        p.chemical_potential = p.g_b * *central_density;
    }
    p.radius = std::sqrt(2.0 * p.chemical_potential);
    if (!atom_number) {
        p.atom_number = 8.0 * constants::pi / 15.0 * p.central_density * p.radius * p.radius * p.radius;
    }
    if (p.atom_number * scattering_length < 10.0) {
        p.warnings.push_back("Thomas-Fermi validity: N a_b / a_ho = " + std::to_string(p.atom_number * scattering_length) +
                             " < 10; the kinetic term is not negligible");
    }
    return p;
}

double density(const TFProfile& profile, double r) {
    if (r < 0.0) throw std::domain_error("density: radius must be non-negative");
    double n = (profile.chemical_potential - 0.5 * r * r) / profile.g_b;
    return n > 0.0 ? n : 0.0;
}

double wavefunction(const TFProfile& profile, double r) {
    return std::sqrt(density(profile, r));
}

} // namespace qtweezer
