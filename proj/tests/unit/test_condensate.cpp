#include "doctest.h"
#include "support.hpp"

#include "qtweezer/condensate.hpp"
#include "qtweezer/quadrature.hpp"

#include <cmath>

using namespace qtweezer;

namespace {

double integrated_atoms(const TFProfile& p) {
    QuadratureSpec spec;
    spec.rtol = 1e-12;
    return integrate(0.0, p.radius, [&](double r) { return 4.0 * constants::pi * r * r * density(p, r); }, spec);
}

} // namespace

TEST_CASE("baseline central density and radius") {
    const Setup& s = testing::baseline_setup();
    const auto& u = s.model.units;
    const double n0 = u.density_from_internal(s.profile.central_density);
    CHECK(std::abs(n0 / 2e21 - 1.0) < 0.05);
    const double radius = u.length_from_internal(s.profile.radius);
    CHECK(radius == doctest::Approx(9.6e-6).epsilon(0.01));
    // independent check through N = (8 pi / 15) n0 R^3
    CHECK(8.0 * constants::pi / 15.0 * n0 * radius * radius * radius == doctest::Approx(3e6).epsilon(1e-10));
    CHECK(s.profile.warnings.empty());
}

TEST_CASE("density profile") {
    const TFProfile p = solve_tf(0.007, 3e6, std::nullopt);
    CHECK(density(p, 0.0) == p.central_density);
    CHECK(p.chemical_potential / p.g_b == density(p, 0.0));
    CHECK(density(p, p.radius) == 0.0);
    CHECK(density(p, 2 * p.radius) == 0.0);
    CHECK(density(p, p.radius / std::sqrt(2.0)) == doctest::Approx(p.central_density / 2).epsilon(1e-14));
    CHECK(wavefunction(p, 0.0) == doctest::Approx(std::sqrt(p.central_density)).epsilon(1e-15));
    CHECK(wavefunction(p, p.radius * 1.5) == 0.0);
    CHECK(p.radius == doctest::Approx(std::sqrt(2 * p.chemical_potential)).epsilon(1e-15));

    double prev = density(p, 0.0);
    for (int i = 1; i <= 200; ++i) {
        double n = density(p, p.radius * i / 190.0);
        CHECK(n <= prev);
        CHECK(n >= 0.0);
        prev = n;
    }
    // continuity at the edge
    CHECK(density(p, p.radius * (1 - 1e-9)) < 1e-8 * p.central_density);
}

TEST_CASE("integrated density equals N") {
    for (double n : {1e4, 3e6, 1e8}) {
        const TFProfile p = solve_tf(0.007, n, std::nullopt);
        CHECK(std::abs(integrated_atoms(p) / n - 1.0) < 1e-6);
        CHECK(p.atom_number == doctest::Approx(n).epsilon(1e-12));
    }
}

TEST_CASE("phi_b squared integrates to N") {
    const TFProfile p = solve_tf(0.007, 3e6, std::nullopt);
    QuadratureSpec spec;
    spec.rtol = 1e-12;
    const double total = integrate(0.0, p.radius, [&](double r) {
        const double phi = wavefunction(p, r);
        return 4.0 * constants::pi * r * r * phi * phi;
    }, spec);
    CHECK(total == doctest::Approx(3e6).epsilon(1e-6));
}

TEST_CASE("central density input inverts to the same profile") {
    const TFProfile from_n = solve_tf(0.007, 3e6, std::nullopt);
    const TFProfile from_n0 = solve_tf(0.007, std::nullopt, from_n.central_density);
    CHECK(from_n0.atom_number == doctest::Approx(3e6).epsilon(1e-12));
    CHECK(from_n0.chemical_potential == doctest::Approx(from_n.chemical_potential).epsilon(1e-12));
    CHECK(from_n0.radius == doctest::Approx(from_n.radius).epsilon(1e-12));
}

TEST_CASE("chemical potential exponent") {
    const double a = 0.007;
    const double ratio = tf_chemical_potential(6e6, a) / tf_chemical_potential(3e6, a);
    CHECK(std::abs(ratio / std::pow(2.0, 0.4) - 1.0) < 1e-10);
    CHECK(tf_chemical_potential(3e6, a) == doctest::Approx(0.5 * std::pow(15 * 3e6 * a, 0.4)).epsilon(1e-15));
}

TEST_CASE("weak interaction raises the validity warning") {
    const TFProfile p = solve_tf(1e-12, 3e6, std::nullopt);
    CHECK(p.chemical_potential < 1e-2);
    REQUIRE_FALSE(p.warnings.empty());
    const TFProfile deep = solve_tf(0.007, 3e6, std::nullopt);
    CHECK(deep.warnings.empty());
}

TEST_CASE("invalid inputs") {
    CHECK_THROWS(solve_tf(0.007, std::nullopt, std::nullopt));
    CHECK_THROWS(solve_tf(0.007, 3e6, 1e3));
    CHECK_THROWS(solve_tf(0.007, -1.0, std::nullopt));
}
