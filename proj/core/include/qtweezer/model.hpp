#pragma once

#include "qtweezer/condensate.hpp"
#include "qtweezer/config.hpp"
#include "qtweezer/couplings.hpp"
#include "qtweezer/fidelity.hpp"
#include "qtweezer/modes.hpp"
#include "qtweezer/tweezer.hpp"

#include <string>
#include <vector>

namespace qtweezer {

/// Everything that depends only on the trap, the atoms and the mode basis. Drive strength,
/// Bloch angle and g_ab enter later through evaluate(), so sweeps over those reuse one Setup.
struct Setup {
    InternalModel model;
    TFProfile profile;
    TweezerState tweezer;
    double omega_gap = 0.0;
    std::vector<Mode> basis;
    CouplingGeometry geometry;
    QuadratureSpec quadrature;
    std::vector<std::string> warnings;
};

QuadratureSpec quadrature_for(const NumericsConfig& numerics);

/// Builds profile, tweezer, basis and coupling geometry. Validates the config first.
Setup prepare(const Config& config);

/// Replaces the thermal occupations of the basis; the geometry is untouched.
void set_thermal_energy(Setup& setup, double thermal_energy);

/// Drive and collision parameters in internal units.
struct DriveState {
    double omega_eff = 0.0;
    double theta = 0.0;
    double g_ab_over_g_b = 1.0;
};

/// The drive requested by the setup's config. A bare Omega_0 is converted with the computed overlap.
DriveState configured_drive(const Setup& setup);

struct Evaluation {
    DriveState drive;
    CouplingSet couplings;
    FidelityResult fidelity;
    RegimeDiagnostics regime;

    /// Perturbative validity and collisional-blockade regime both hold.
    bool valid() const { return fidelity.perturbative && regime.pass(); }
};

Evaluation evaluate(const Setup& setup, const DriveState& drive);

/// prepare + evaluate at the configured drive.
Evaluation evaluate(const Config& config);

} // namespace qtweezer
