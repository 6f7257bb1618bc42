#include "qtweezer/model.hpp"

#include "qtweezer/errors.hpp"

namespace qtweezer {

QuadratureSpec quadrature_for(const NumericsConfig& numerics) {
    QuadratureSpec spec;
    spec.rtol = numerics.quad_rtol;
    return spec;
}

Setup prepare(const Config& config) {
    Setup s;
    s.warnings = validate(config);
    s.model = to_internal(config);
    s.quadrature = quadrature_for(config.numerics);
    s.profile = solve_tf(s.model.scattering_length, s.model.atom_number, s.model.central_density);
    s.warnings.insert(s.warnings.end(), s.profile.warnings.begin(), s.profile.warnings.end());
    s.tweezer = ground_state(s.model.omega_a);
    s.omega_gap = gap_frequency(s.tweezer, s.model.g_a);
    s.basis = build_basis(s.model.basis, s.profile, s.model.thermal_energy);
    s.geometry = build_geometry(s.basis, s.profile, s.tweezer, s.model.wave_number, s.quadrature);
    return s;
}

void set_thermal_energy(Setup& setup, double thermal_energy) {
    if (thermal_energy < 0.0) throw ConfigError("T", "temperature must be non-negative");
    setup.model.thermal_energy = thermal_energy;
    for (auto& m : setup.basis) m.occupation = thermal_occupation(m.omega, thermal_energy);
}

DriveState configured_drive(const Setup& setup) {
    DriveState d;
    d.theta = setup.model.theta;
    d.g_ab_over_g_b = setup.model.g_ab / setup.model.g_b;
    if (setup.model.omega_eff) {
        d.omega_eff = *setup.model.omega_eff;
    } else if (setup.model.omega_0) {
        d.omega_eff = *setup.model.omega_0 * setup.geometry.rabi_overlap;
    } else {
        throw ConfigError("Omega_0/Omega_eff", "no drive strength configured");
    }
    return d;
}

Evaluation evaluate(const Setup& setup, const DriveState& drive) {
    if (!(drive.omega_eff > 0.0)) throw ConfigError("Omega_eff", "must be positive");
    if (!(setup.geometry.rabi_overlap != 0.0)) {
        throw NumericalError("Omega_eff overlap", "tweezer and condensate do not overlap");
    }
    Evaluation e;
    e.drive = drive;
    const double omega_0 = drive.omega_eff / setup.geometry.rabi_overlap;
    e.couplings = build_couplings(setup.geometry, omega_0, drive.g_ab_over_g_b * setup.model.g_b);
    e.fidelity = g_function(drive.theta, e.couplings, setup.basis, setup.model.numerics.g_warn);
    e.regime = regime_check(drive.omega_eff, e.fidelity.tau0, setup.omega_gap, setup.model.numerics.gap_tau_min,
                            setup.model.numerics.rabi_gap_max);
    return e;
}

Evaluation evaluate(const Config& config) {
    const Setup s = prepare(config);
    return evaluate(s, configured_drive(s));
}

} // namespace qtweezer
