#include "doctest.h"
#include "support.hpp"

#include "qtweezer/fidelity.hpp"
#include "qtweezer/model.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <random>

using namespace qtweezer;

namespace {

const Setup& base() { return testing::baseline_setup(); }

Evaluation at(const Setup& s, double g_ab, double theta = constants::pi / 2, double omega_eff_hz = 1.7e3) {
    DriveState d = configured_drive(s);
    d.g_ab_over_g_b = g_ab;
    d.theta = theta;
    d.omega_eff = testing::hz(s, omega_eff_hz);
    return evaluate(s, d);
}

bool same_bits(double a, double b) { return std::memcmp(&a, &b, sizeof a) == 0; }

} // namespace

TEST_CASE("spectral window") {
    const double tau = 0.37;
    CHECK(delta_window(0.0, tau) == tau / (2 * constants::pi));
    CHECK(std::abs(delta_window(2 * constants::pi / tau, tau)) < 1e-15);
    CHECK(delta_window(constants::pi / tau, tau) == doctest::Approx(tau / (constants::pi * constants::pi)).epsilon(1e-14));
    CHECK(delta_window(-3.0, tau) == delta_window(3.0, tau));
    // the series branch joins the closed form smoothly
    const double edge = 1e-4 / tau;
    CHECK(delta_window(edge * 0.999999, tau) == doctest::Approx(delta_window(edge * 1.000001, tau)).epsilon(1e-12));
}

TEST_CASE("A coefficients") {
    ACoefficients a = a_coefficients(3.0, 0.0, 0.0, 0.0, 1.0, 0.5);
    CHECK(a.a1 == 0.0);
    CHECK(a.a2 == 0.0);
    CHECK(a.a3 == 0.0);
    CHECK(a.a4 == 0.0);

    // alpha_+ = 0
    const double omega = 4.0, ay = 0.3, omega_eff = 1.2, tau = 2.0;
    a = a_coefficients(omega, 0.1, ay, -ay / 2, omega_eff, tau);
    CHECK(a.a2 == 0.0);
    const double dm = delta_window(omega - omega_eff, tau);
    CHECK(a.a3 == doctest::Approx(0.25 * (2 * ay * dm) * (2 * ay * dm)).epsilon(1e-15));
    CHECK(a.a4 == doctest::Approx(0.01 * delta_window(omega, tau) * delta_window(omega, tau)).epsilon(1e-15));

    // resonant mode stays finite
    a = a_coefficients(omega_eff, 0.1, 0.2, 0.05, omega_eff, tau);
    CHECK(std::isfinite(a.a1));
    CHECK(std::isfinite(a.a3));
}

TEST_CASE("A3 bounds |A2| over random draws") {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (int i = 0; i < 2000; ++i) {
        const double omega = 0.1 + 50 * std::abs(u(rng));
        const double omega_eff = 0.01 + 5 * std::abs(u(rng));
        ACoefficients a = a_coefficients(omega, u(rng), u(rng), u(rng), omega_eff, 2.0 / omega_eff);
        CHECK(a.a3 >= std::abs(a.a2));
        CHECK(a.a4 >= 0.0);
    }
}

TEST_CASE("quench residual") {
    const double omega = 5.0, omega_eff = 0.4, ay = 0.2;
    QuenchResidual q = quench_residual(omega, ay, omega * ay / (2 * omega_eff), omega_eff);
    CHECK(q.residual == doctest::Approx(0.0).epsilon(1e-15));
    CHECK(q.ratio < 1e-15);
    q = quench_residual(omega, ay, 0.0, omega_eff);
    CHECK(q.ratio == 1.0);
    CHECK(q.residual == omega * ay);
    CHECK(quench_residual(omega, 0.0, 0.0, omega_eff).ratio == 0.0);
}

TEST_CASE("uncoupled bath gives ideal transfer") {
    const Setup& s = base();
    CouplingSet zero = build_couplings(s.geometry, 0.0, 0.0);
    zero.omega_eff = 1.0;
    FidelityResult r = g_function(constants::pi / 2, zero, s.basis);
    CHECK(r.g == 0.0);
    CHECK(r.fidelity == 1.0);
}

TEST_CASE("theta = pi/2 drops the A1 term") {
    const Evaluation e = at(base(), 0.6);
    const FidelityResult& f = e.fidelity;
    const double pi2 = constants::pi * constants::pi;
    double sum = 0.0;
    bool any_a1 = false;
    for (const auto& c : f.contributions) {
        const double expected = pi2 * (2 * c.occupation + 1) * (-c.a.a2 + c.a.a3 + c.a.a4);
        CHECK(same_bits(c.term, expected));
        any_a1 = any_a1 || c.a.a1 != 0.0;
        sum += c.term;
    }
    CHECK(any_a1);
    CHECK(f.g == doctest::Approx(sum).epsilon(1e-12));
    CHECK(f.fidelity == 1.0 - f.g);
    CHECK(f.tau0 == 2 * f.theta / f.omega_eff);
}

TEST_CASE("baseline: the quench point beats g_ab = 0") {
    const Evaluation quench = at(base(), 1.0);
    const Evaluation none = at(base(), 0.0);
    CHECK(quench.fidelity.fidelity > none.fidelity.fidelity);
    CHECK(quench.valid());
    // frozen regression values of the verified first run
    CHECK(quench.fidelity.fidelity == doctest::Approx(0.999345).epsilon(2e-6));
    CHECK(none.fidelity.fidelity == doctest::Approx(0.998668).epsilon(2e-6));
}

TEST_CASE("theta = pi/4 peaks at g_ab = 0") {
    double best = -1.0, arg = -1.0;
    for (int i = 0; i <= 40; ++i) {
        const double r = 0.05 * i;
        const double p = at(base(), r, constants::pi / 4).fidelity.fidelity;
        if (p > best) {
            best = p;
            arg = r;
        }
    }
    CHECK(arg == 0.0);
}

TEST_CASE("finite temperature lowers P at every grid point") {
    Setup hot = base();
    set_thermal_energy(hot, hot.model.units.temperature_to_internal(300e-9));
    CHECK(hot.basis[0].occupation == doctest::Approx(13.4).epsilon(0.01));
    for (int i = 0; i <= 40; ++i) {
        const double r = 0.05 * i;
        CHECK(at(hot, r).fidelity.fidelity < at(base(), r).fidelity.fidelity);
    }
}

TEST_CASE("longer pulses transfer better") {
    CHECK(at(base(), 1.0, constants::pi / 2, 0.85e3).fidelity.fidelity > at(base(), 1.0).fidelity.fidelity);
    CHECK(at(base(), 1.0).fidelity.fidelity > at(base(), 1.0, constants::pi / 2, 17e3).fidelity.fidelity);
}

TEST_CASE("noise floor") {
    const Evaluation e = at(base(), 1.0);
    const double pi2 = constants::pi * constants::pi;
    double a4 = 0.0;
    for (const auto& c : e.fidelity.contributions) a4 += c.a.a4;
    CHECK(e.fidelity.g_min == doctest::Approx(pi2 * a4).epsilon(1e-12));
    CHECK(g_min_floor(e.couplings, base().basis) == e.fidelity.g_min);
    CHECK(e.fidelity.g >= e.fidelity.g_min);

    // quadratic in Omega_eff where omega tau0 >> 1 for the dominant modes
    const double lo = at(base(), 1.0, constants::pi / 2, 170.0).fidelity.g_min;
    const double hi = at(base(), 1.0, constants::pi / 2, 340.0).fidelity.g_min;
    CHECK(std::abs(hi / lo / 4.0 - 1.0) < 0.05);
}

TEST_CASE("any permutation of the modes gives a bit-identical g") {
    const Setup& s = base();
    const Evaluation e = at(s, 1.0);
    std::vector<std::size_t> perm(s.basis.size());
    for (std::size_t i = 0; i < perm.size(); ++i) perm[i] = i;
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 5; ++trial) {
        std::shuffle(perm.begin(), perm.end(), rng);
        CouplingSet c = e.couplings;
        std::vector<Mode> b;
        c.records.clear();
        for (std::size_t i : perm) {
            c.records.push_back(e.couplings.records[i]);
            b.push_back(s.basis[i]);
        }
        FidelityResult r = g_function(constants::pi / 2, c, b);
        CHECK(same_bits(r.g, e.fidelity.g));
        CHECK(same_bits(r.g_min, e.fidelity.g_min));
    }
}

TEST_CASE("g is positive over random valid parameters") {
    std::mt19937_64 rng(20261016);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    auto fmt = [](const char* key, double v, const char* unit) {
        char buf[96];
        std::snprintf(buf, sizeof buf, "%s=%.9g %s", key, v, unit);
        return std::string(buf);
    };
    for (int i = 0; i < 100; ++i) {
        const Config c = testing::baseline({
            fmt("omega_b", 100 + 500 * u(rng), "Hz_x2pi"),
            fmt("N", std::pow(10.0, 5 + 2 * u(rng)), ""),
            fmt("T", 500 * u(rng), "nK"),
            fmt("Omega_eff", std::pow(10.0, 2 + 1.5 * u(rng)), "Hz_x2pi"),
            fmt("theta", 0.05 + (constants::pi - 0.05) * u(rng), "rad"),
            fmt("g_ab_over_g_b", 3 * u(rng), ""),
            "j_max=100",
            "ell=0,2",
        });
        CHECK(evaluate(c).fidelity.g > 0.0);
    }
}

TEST_CASE("validity flag and warnings") {
    const Evaluation strong = at(base(), 0.0, constants::pi / 2, 60e3);
    CHECK(strong.fidelity.g >= 0.1);
    CHECK_FALSE(strong.fidelity.perturbative);
    CHECK_FALSE(strong.fidelity.warnings.empty());
    CHECK_FALSE(strong.valid());
    CHECK(at(base(), 1.0).fidelity.warnings.empty());
}

TEST_CASE("misaligned inputs are rejected") {
    const Setup& s = base();
    const Evaluation e = at(s, 1.0);
    std::vector<Mode> shorter(s.basis.begin(), s.basis.end() - 1);
    CHECK_THROWS_AS(g_function(1.0, e.couplings, shorter), std::invalid_argument);
    std::vector<Mode> swapped = s.basis;
    std::swap(swapped[0], swapped[1]);
    CHECK_THROWS_AS(g_function(1.0, e.couplings, swapped), std::invalid_argument);
    CouplingSet off = e.couplings;
    off.omega_eff = 0.0;
    CHECK_THROWS_AS(g_function(1.0, off, s.basis), std::invalid_argument);
}
