#pragma once

#include "qtweezer/units.hpp"

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace qtweezer {

/// One atomic species in two internal states. Intraspecies and interspecies
/// strengths are stored as ratios to g_b; absolute values are derived.
struct AtomSpecies {
    double mass = constants::rb87_mass;                   // kg
    double scattering_length = constants::rb87_scattering_length; // a_b, m
    double g_a_over_g_b = 1.0;
    double g_ab_over_g_b = 1.0;

    double g_b() const { return contact_coupling(scattering_length, mass); } // J m^3
    double g_a() const { return g_a_over_g_b * g_b(); }
    double g_ab() const { return g_ab_over_g_b * g_b(); }
};

struct CondensateConfig {
    double omega_b = 0.0;                   // rad/s, spherical trap
    std::optional<double> atom_number;      // exactly one of these two
    std::optional<double> central_density;  // m^-3
    double temperature = 0.0;               // K
};

/// Tweezer sits at the condensate centre; the drive wave vector is along z.
struct TweezerConfig {
    double omega_a = 0.0;                   // rad/s
    double wave_number = 2.0 * constants::pi / constants::rb87_drive_wavelength; // rad/m
};

/// Step envelope on [0, tau]. Exactly one of the bare or effective Rabi frequency is set.
struct DriveConfig {
    std::optional<double> omega_0;          // rad/s
    std::optional<double> omega_eff;        // rad/s
    double theta = constants::pi / 2.0;     // rad
};

struct ModeBasisConfig {
    int j_min = 1;
    int j_max = 500;
    std::vector<int> ells{0};
};

struct NumericsConfig {
    double quad_rtol = 1e-8;
    double g_warn = 0.1;
    double gap_tau_min = 50.0;     // pass threshold for omega_gap * tau
    double rabi_gap_max = 0.1;     // pass threshold for Omega_eff / omega_gap
};

struct Config {
    AtomSpecies species;
    CondensateConfig condensate;
    TweezerConfig tweezer;
    DriveConfig drive;
    ModeBasisConfig basis;
    NumericsConfig numerics;
};

/// Ordered key/value pairs as read from a configuration file, before interpretation.
class RawConfig {
public:
    struct Entry {
        std::string value;
        int line = 0;  // 0 for command-line overrides
    };

    void set(const std::string& key, std::string value, int line = 0);
    bool contains(const std::string& key) const { return entries_.count(key) != 0; }
    const std::map<std::string, Entry>& entries() const noexcept { return entries_; }

private:
    std::map<std::string, Entry> entries_;
};

/// Parses "key = value [unit]" lines; '#' starts a comment. Throws ConfigError on syntax errors
/// and on duplicate keys.
RawConfig parse_config_text(std::string_view text);

/// Applies "key=value" overrides on top of a raw config. Duplicate override keys are an error.
void apply_overrides(RawConfig& raw, const std::vector<std::string>& overrides);

/// Interprets and validates. Unknown keys, missing required keys, unit errors and invariant
/// violations raise ConfigError naming the field.
Config interpret(const RawConfig& raw);

/// Convenience: parse_config_text + interpret.
Config load_config(std::string_view text);
Config load_config_file(const std::string& path, const std::vector<std::string>& overrides = {});

/// Throws ConfigError on the first violated invariant; returns non-fatal warnings.
std::vector<std::string> validate(const Config& config);

/// Canonical text form (SI units, full precision). load_config(to_text(c)) reproduces c.
std::string to_text(const Config& config);

/// Keys accepted in configuration text, with their dimensions.
const std::map<std::string, Dimension, std::less<>>& config_schema();

/// Fully dimensionless model: hbar = M = omega_b = 1.
struct InternalModel {
    UnitSystem units;
    double scattering_length = 0.0;   // a_b / a_ho
    double g_b = 0.0;
    double g_a = 0.0;
    double g_ab = 0.0;
    std::optional<double> atom_number;
    std::optional<double> central_density;
    double thermal_energy = 0.0;      // k_B T / (hbar omega_b)
    double omega_a = 0.0;
    double wave_number = 0.0;
    std::optional<double> omega_0;
    std::optional<double> omega_eff;
    double theta = 0.0;
    ModeBasisConfig basis;
    NumericsConfig numerics;
};

InternalModel to_internal(const Config& config);
Config from_internal(const InternalModel& model);

} // namespace qtweezer
