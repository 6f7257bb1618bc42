#pragma once

namespace qtweezer {

/// Harmonic tweezer ground state at the trap centre, oscillator units of the condensate trap.
struct TweezerState {
    double omega_a = 0.0;        // in units of omega_b
    double oscillator_length = 0.0; // a_a = sqrt(1 / omega_a) in units of a_ho
};

TweezerState ground_state(double omega_a);

/// phi_a(r) = (pi a_a^2)^(-3/4) exp(-r^2 / (2 a_a^2)).
double tweezer_wavefunction(const TweezerState& state, double r);

/// int phi_a d^3r = 2^(3/2) pi^(3/4) a_a^(3/2).
double tweezer_integral(const TweezerState& state);

/// omega_gap = (g_a / 2) int |phi_a|^4 d^3r = (g_a / 2) (2 pi)^(-3/2) a_a^(-3).
double gap_frequency(const TweezerState& state, double g_a);

struct RegimeDiagnostics {
    double gap_times_tau = 0.0;     // omega_gap * tau, should be >> 1
    double rabi_over_gap = 0.0;     // Omega_eff / omega_gap, should be << 1
    bool gap_tau_ok = false;
    bool rabi_gap_ok = false;

    bool pass() const noexcept { return gap_tau_ok && rabi_gap_ok; }
};

/// Collisional-blockade validity. Never throws; callers decide whether failure is fatal.
RegimeDiagnostics regime_check(double omega_eff, double tau, double omega_gap, double gap_tau_min = 50.0,
                               double rabi_gap_max = 0.1);

} // namespace qtweezer
