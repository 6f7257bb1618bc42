#pragma once

#include <string>
#include <string_view>

namespace qtweezer {

namespace constants {
inline constexpr double pi = 3.14159265358979323846;
inline constexpr double hbar = 1.054571817e-34;        // J s
inline constexpr double k_boltzmann = 1.380649e-23;    // J / K
inline constexpr double atomic_mass_unit = 1.66053906660e-27; // kg
inline constexpr double bohr_radius = 5.29177210903e-11;      // m

// 87Rb defaults.
inline constexpr double rb87_mass = 1.4431e-25;        // kg
inline constexpr double rb87_scattering_length = 5.31e-9; // m
inline constexpr double rb87_drive_wavelength = 780e-9;   // m
} // namespace constants

/// Physical dimension of a configuration quantity. Selects which unit suffixes are accepted.
enum class Dimension {
    dimensionless,
    angle,
    frequency,    // angular frequency, rad/s
    temperature,  // K
    length,       // m
    mass,         // kg
    density,      // m^-3
    wave_number,  // rad/m
    coupling,     // J m^3
};

std::string_view to_string(Dimension d);

/// Canonical SI unit label written back into configuration text.
std::string_view canonical_unit(Dimension d);

/// Evaluates a numeric literal that may contain `pi`, `*` and `/`, e.g. "pi/2", "2*pi", "1.5e3".
/// Throws std::invalid_argument on malformed input.
double evaluate_number(std::string_view text);

/// Parses "<number> [unit]" for the given dimension and returns the SI value.
/// Throws std::invalid_argument with a readable message on unknown or missing units.
double parse_quantity(std::string_view text, Dimension d);

/// Scale factor that converts a value expressed in `unit` into SI for dimension `d`.
double unit_factor(std::string_view unit, Dimension d);

/// Oscillator units: hbar = M = omega_b = 1. Lengths in a_ho = sqrt(hbar / (M omega_b)),
/// energies in hbar omega_b, times in 1 / omega_b.
class UnitSystem {
public:
    UnitSystem() = default;
    UnitSystem(double mass_kg, double omega_b_rad_s);

    double mass() const noexcept { return mass_; }
    double omega_b() const noexcept { return omega_b_; }
    double oscillator_length() const noexcept { return length_; }
    double energy_unit() const noexcept { return constants::hbar * omega_b_; }

    double length_to_internal(double metres) const noexcept { return metres / length_; }
    double length_from_internal(double x) const noexcept { return x * length_; }

    double frequency_to_internal(double rad_s) const noexcept { return rad_s / omega_b_; }
    double frequency_from_internal(double w) const noexcept { return w * omega_b_; }

    double time_to_internal(double seconds) const noexcept { return seconds * omega_b_; }
    double time_from_internal(double t) const noexcept { return t / omega_b_; }

    double density_to_internal(double per_m3) const noexcept { return per_m3 * length_ * length_ * length_; }
    double density_from_internal(double n) const noexcept { return n / (length_ * length_ * length_); }

    double wave_number_to_internal(double rad_m) const noexcept { return rad_m * length_; }
    double wave_number_from_internal(double k) const noexcept { return k / length_; }

    double coupling_to_internal(double joule_m3) const noexcept {
        return joule_m3 / (energy_unit() * length_ * length_ * length_);
    }
    double coupling_from_internal(double g) const noexcept {
        return g * energy_unit() * length_ * length_ * length_;
    }

    /// k_B T in units of hbar omega_b.
    double temperature_to_internal(double kelvin) const noexcept {
        return constants::k_boltzmann * kelvin / energy_unit();
    }
    double temperature_from_internal(double kt) const noexcept {
        return kt * energy_unit() / constants::k_boltzmann;
    }

private:
    double mass_ = constants::rb87_mass;
    double omega_b_ = 1.0;
    double length_ = 1.0;
};

/// g = 4 pi hbar^2 a / M in J m^3.
double contact_coupling(double scattering_length_m, double mass_kg);

} // namespace qtweezer
