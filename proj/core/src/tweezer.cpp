#include "qtweezer/tweezer.hpp"

#include "qtweezer/errors.hpp"
#include "qtweezer/units.hpp"

#include <cmath>
#include <limits>

namespace qtweezer {

TweezerState ground_state(double omega_a) {
    if (!(omega_a > 0.0)) throw ConfigError("omega_a", "must be positive");
    return TweezerState{omega_a, std::sqrt(1.0 / omega_a)};
}

double tweezer_wavefunction(const TweezerState& state, double r) {
    const double a = state.oscillator_length;
    return std::pow(constants::pi * a * a, -0.75) * std::exp(-r * r / (2.0 * a * a));
}

double tweezer_integral(const TweezerState& state) {
    return std::pow(2.0, 1.5) * std::pow(constants::pi, 0.75) * std::pow(state.oscillator_length, 1.5);
}

double gap_frequency(const TweezerState& state, double g_a) {
    const double a = state.oscillator_length;
    return 0.5 * g_a * std::pow(2.0 * constants::pi, -1.5) / (a * a * a);
}

RegimeDiagnostics regime_check(double omega_eff, double tau, double omega_gap, double gap_tau_min,
                               double rabi_gap_max) {
    RegimeDiagnostics d;
    d.gap_times_tau = omega_gap * tau;
    d.rabi_over_gap = omega_gap > 0.0 ? omega_eff / omega_gap : std::numeric_limits<double>::infinity();
    d.gap_tau_ok = d.gap_times_tau >= gap_tau_min;
    d.rabi_gap_ok = d.rabi_over_gap <= rabi_gap_max;
    return d;
}

} // namespace qtweezer
