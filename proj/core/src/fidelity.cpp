#include "qtweezer/fidelity.hpp"

#include "qtweezer/quadrature.hpp"
#include "qtweezer/units.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace qtweezer {

double delta_window(double x, double tau) {
    const double half = 0.5 * x * tau;
    if (std::abs(x) * tau < 1e-4) {
        // sin(y) / y = 1 - y^2/6 + O(y^4)
        return tau / (2.0 * constants::pi) * (1.0 - half * half / 6.0);
    }
    return std::sin(half) / (constants::pi * x);
}

ACoefficients a_coefficients(double omega, double alpha_x, double alpha_y, double alpha_z, double omega_eff,
                             double tau0) {
    const double alpha_plus = alpha_y + 2.0 * alpha_z;
    const double alpha_minus = alpha_y - 2.0 * alpha_z;
    const double d0 = delta_window(omega, tau0);
    const double dm = delta_window(omega - omega_eff, tau0);
    const double dp = delta_window(omega + omega_eff, tau0);
    const double minus_term = alpha_minus * dm;
    const double plus_term = alpha_plus * dp;

    ACoefficients a;
    a.a1 = -alpha_x * d0 * (minus_term + plus_term);
    a.a2 = 0.5 * alpha_plus * alpha_minus * dm * dp;
    a.a3 = 0.25 * (minus_term * minus_term + plus_term * plus_term);
    a.a4 = alpha_x * alpha_x * d0 * d0;
    return a;
}

ACoefficients a_coefficients(const CouplingRecord& record, double omega_eff, double tau0) {
    return a_coefficients(record.omega, record.alpha_x, record.alpha_y, record.alpha_z, omega_eff, tau0);
}

QuenchResidual quench_residual(double omega, double alpha_y, double alpha_z, double omega_eff) {
    QuenchResidual q;
    const double laser = omega * alpha_y;
    const double collision = 2.0 * omega_eff * alpha_z;
    q.residual = laser - collision;
    const double scale = std::abs(laser) + std::abs(collision);
    q.ratio = scale > 0.0 ? std::abs(q.residual) / scale : 0.0;
    return q;
}

double ideal_transfer_time(double theta, double omega_eff) {
    return 2.0 * theta / omega_eff;
}

namespace {

// cos evaluated so that odd multiples of pi/2 give exactly zero.
double snapped_cos(double x) {
    const double c = std::cos(x);
    return std::abs(c) < 1e-15 ? 0.0 : c;
}

std::vector<std::size_t> canonical_order(const CouplingSet& couplings) {
    std::vector<std::size_t> order(couplings.records.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        const auto& ia = couplings.records[a].index;
        const auto& ib = couplings.records[b].index;
        return ia.ell != ib.ell ? ia.ell < ib.ell : ia.j < ib.j;
    });
    return order;
}

void check_alignment(const CouplingSet& couplings, const std::vector<Mode>& basis) {
    if (couplings.records.size() != basis.size()) {
        throw std::invalid_argument("g_function: coupling set and basis differ in size");
    }
    for (std::size_t i = 0; i < basis.size(); ++i) {
        if (!(couplings.records[i].index == basis[i].index)) {
            throw std::invalid_argument("g_function: " + to_string(basis[i].index) +
                                        " is not aligned with the coupling records");
        }
    }
}

} // namespace

FidelityResult g_function(double theta, const CouplingSet& couplings, const std::vector<Mode>& basis,
                          double g_warn) {
    check_alignment(couplings, basis);
    if (!(couplings.omega_eff > 0.0)) throw std::invalid_argument("g_function: Omega_eff must be positive");

    FidelityResult res;
    res.theta = theta;
    res.omega_eff = couplings.omega_eff;
    res.tau0 = ideal_transfer_time(theta, couplings.omega_eff);
    const double cos1 = snapped_cos(theta);
    const double cos2 = snapped_cos(2.0 * theta);
    const double pi2 = constants::pi * constants::pi;

    res.contributions.resize(basis.size());
    for (std::size_t i = 0; i < basis.size(); ++i) {
        const auto& rec = couplings.records[i];
        auto& c = res.contributions[i];
        c.index = rec.index;
        c.omega = rec.omega;
        c.occupation = basis[i].occupation;
        c.a = a_coefficients(rec, couplings.omega_eff, res.tau0);
        const double weight = 2.0 * c.occupation + 1.0;
        c.term = pi2 * (c.a.a1 * cos1 + weight * (c.a.a2 * cos2 + c.a.a3 + c.a.a4));
        c.quench = quench_residual(rec.omega, rec.alpha_y, rec.alpha_z, couplings.omega_eff);
    }

    CompensatedSum g, floor;
    for (std::size_t i : canonical_order(couplings)) {
        const auto& c = res.contributions[i];
        g.add(c.term);
        floor.add(pi2 * (2.0 * c.occupation + 1.0) * c.a.a4);
    }
    res.g = g.value();
    res.fidelity = 1.0 - res.g;
    res.g_min = floor.value();
    res.perturbative = res.g < g_warn;
    if (!res.perturbative) {
        res.warnings.push_back("g = " + std::to_string(res.g) + " exceeds g_warn = " + std::to_string(g_warn) +
                               "; second-order perturbation theory is not reliable here");
    }
    if (!(res.g > 0.0) && !basis.empty()) {
        res.warnings.push_back("g = " + std::to_string(res.g) + " is not positive");
    }
    return res;
}

double g_min_floor(const CouplingSet& couplings, const std::vector<Mode>& basis, double theta) {
    check_alignment(couplings, basis);
    const double tau0 = ideal_transfer_time(theta, couplings.omega_eff);
    const double pi2 = constants::pi * constants::pi;
    CompensatedSum s;
    for (std::size_t i : canonical_order(couplings)) {
        const auto& rec = couplings.records[i];
        const double d0 = delta_window(rec.omega, tau0);
        s.add(pi2 * (2.0 * basis[i].occupation + 1.0) * rec.alpha_x * rec.alpha_x * d0 * d0);
    }
    return s.value();
}

} // namespace qtweezer
