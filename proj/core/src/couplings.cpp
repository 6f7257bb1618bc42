#include "qtweezer/couplings.hpp"

#include "qtweezer/errors.hpp"
#include "qtweezer/fidelity.hpp"
#include "qtweezer/units.hpp"

#include <algorithm>
#include <cmath>
#include <map>

namespace qtweezer {

double angular_cos_moment(int ell, double x, const GaussRule& rule) {
    if (ell % 2 != 0) return 0.0;
    CompensatedSum s;
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
        const double c = rule.nodes[i];
        s.add(rule.weights[i] * std::cos(x * c) * spherical_harmonic_m0(ell, c));
    }
    return s.value();
}

int angular_order_for(double wave_number, double r_max, const QuadratureSpec& spec) {
    if (spec.angular_order > 0) return spec.angular_order;
    return 16 + 2 * static_cast<int>(std::ceil(wave_number * r_max));
}

namespace {

/// Evaluates the overlap integrand and, per mode, the three coupling integrands at radius r.
/// Layout of the output: [overlap, (minus, plus, collision) x modes].
class TweezerIntegrand {
public:
    TweezerIntegrand(const std::vector<Mode>& basis, const TFProfile& profile, const TweezerState& tweezer,
                     double wave_number, const GaussRule& angular)
        : basis_(basis), profile_(profile), tweezer_(tweezer), k_(wave_number), angular_(angular) {
        for (std::size_t i = 0; i < basis.size(); ++i) {
            auto& group = groups_[basis[i].index.ell];
            group.j_max = std::max(group.j_max, basis[i].index.j);
            group.members.push_back(i);
        }
        for (auto& [ell, group] : groups_) group.jacobi.resize(group.j_max + 1);
    }

    std::size_t size() const { return 1 + 3 * basis_.size(); }

    void operator()(double r, std::span<double> out) {
        const double shell = 2.0 * constants::pi * r * r;
        const double phi_a = tweezer_wavefunction(tweezer_, r);
        const double n = density(profile_, r);
        const double sqrt_n = std::sqrt(n);
        const double s = r / profile_.radius;
        const double z = 1.0 - 2.0 * s * s;
        const double kr = k_ * r;

        // int cos(k r c) dc over the sphere, written through Y_00.
        out[0] = shell * phi_a * sqrt_n * angular_cos_moment(0, kr, angular_) * std::sqrt(4.0 * constants::pi);

        for (auto& [ell, group] : groups_) {
            jacobi_family(ell + 0.5, z, group.jacobi);
            const double s_pow = std::pow(s, ell);
            const double ang = angular_cos_moment(ell, kr, angular_);
            // int Y_l0 dc = sqrt(4 pi) / (2 pi) for l = 0 and zero otherwise; collision term only for l = 0.
            const double ang_coll = ell == 0 ? 1.0 / std::sqrt(constants::pi) : 0.0;
            for (std::size_t idx : group.members) {
                const Mode& m = basis_[idx];
                const double radial = m.norm * s_pow * group.jacobi[m.index.j];
                const double fm = radial / sqrt_n;
                const double fp = 2.0 * profile_.g_b * n / m.omega * fm;
                out[1 + 3 * idx] = shell * phi_a * fm * ang;
                out[2 + 3 * idx] = shell * phi_a * fp * ang;
                out[3 + 3 * idx] = shell * phi_a * phi_a * radial * ang_coll;
            }
        }
    }

private:
    struct Group {
        int j_max = 0;
        std::vector<std::size_t> members;
        std::vector<double> jacobi;
    };

    const std::vector<Mode>& basis_;
    const TFProfile& profile_;
    const TweezerState& tweezer_;
    double k_;
    const GaussRule& angular_;
    std::map<int, Group> groups_;
};

double radial_cutoff(const TFProfile& profile, const TweezerState& tweezer, const QuadratureSpec& spec) {
    const double r_max = spec.extent * tweezer.oscillator_length;
    if (r_max >= profile.radius * (1.0 - 1e-3)) {
        throw NumericalError("geometry", "tweezer integration range " + std::to_string(r_max) +
                                             " a_ho reaches the condensate surface R = " +
                                             std::to_string(profile.radius) + " a_ho");
    }
    return r_max;
}

} // namespace

CouplingGeometry build_geometry(const std::vector<Mode>& basis, const TFProfile& profile,
                                const TweezerState& tweezer, double wave_number, const QuadratureSpec& spec) {
    CouplingGeometry geo;
    geo.radial_cutoff = radial_cutoff(profile, tweezer, spec);
    geo.angular_order = angular_order_for(wave_number, geo.radial_cutoff, spec);
    const GaussRule angular = gauss_legendre(geo.angular_order);

    TweezerIntegrand integrand(basis, profile, tweezer, wave_number, angular);
    auto result = integrate_family(
        integrand.size(), 0.0, geo.radial_cutoff,
        [&](double r, std::span<double> out) { integrand(r, out); }, spec);
    if (!result.unconverged.empty()) {
        const int first = result.unconverged.front();
        const std::string subject = first == 0 ? std::string("Omega_eff overlap")
                                               : to_string(basis[(first - 1) / 3].index);
        throw NumericalError(subject, "coupling integral did not reach relative tolerance " +
                                          std::to_string(spec.rtol));
    }

    geo.rabi_overlap = result.values[0];
    geo.achieved_rtol = result.achieved[0];
    geo.modes.reserve(basis.size());
    for (std::size_t i = 0; i < basis.size(); ++i) {
        ModeIntegrals mi;
        mi.index = basis[i].index;
        mi.omega = basis[i].omega;
        mi.laser_minus = result.values[1 + 3 * i];
        mi.laser_plus = result.values[2 + 3 * i];
        mi.collision = basis[i].index.ell == 0 ? result.values[3 + 3 * i] : 0.0;
        mi.achieved = std::max({result.achieved[1 + 3 * i], result.achieved[2 + 3 * i], result.achieved[3 + 3 * i]});
        geo.achieved_rtol = std::max(geo.achieved_rtol, mi.achieved);
        geo.modes.push_back(mi);
    }
    return geo;
}

double rabi_eff(double omega_0, const TweezerState& tweezer, const std::function<double(double)>& phi_b,
                double wave_number, const QuadratureSpec& spec) {
    const double r_max = spec.extent * tweezer.oscillator_length;
    const GaussRule angular = gauss_legendre(angular_order_for(wave_number, r_max, spec));
    const double y00 = std::sqrt(4.0 * constants::pi);
    double overlap = integrate(
        0.0, r_max,
        [&](double r) {
            return 2.0 * constants::pi * r * r * tweezer_wavefunction(tweezer, r) * phi_b(r) *
                   angular_cos_moment(0, wave_number * r, angular) * y00;
        },
        spec);
    return omega_0 * overlap;
}

std::pair<double, double> alpha_xy(const Mode& mode, double omega_0, const TweezerState& tweezer,
                                   const TFProfile& profile, double wave_number, const QuadratureSpec& spec) {
    if (mode.index.ell % 2 != 0) return {0.0, 0.0};
    auto geo = build_geometry({mode}, profile, tweezer, wave_number, spec);
    return {0.5 * omega_0 * geo.modes[0].laser_minus, 0.5 * omega_0 * geo.modes[0].laser_plus};
}

double alpha_z(const Mode& mode, double g_ab, const TweezerState& tweezer, const TFProfile& profile,
               const QuadratureSpec& spec) {
    if (mode.index.ell != 0 || g_ab == 0.0) return 0.0;
    auto geo = build_geometry({mode}, profile, tweezer, 0.0, spec);
    return 0.5 * g_ab * geo.modes[0].collision;
}

CouplingSet build_couplings(const CouplingGeometry& geometry, double omega_0, double g_ab) {
    CouplingSet set;
    set.omega_0 = omega_0;
    set.omega_eff = omega_0 * geometry.rabi_overlap;
    set.achieved_rtol = geometry.achieved_rtol;
    set.records.reserve(geometry.modes.size());
    for (const auto& mi : geometry.modes) {
        CouplingRecord rec;
        rec.index = mi.index;
        rec.omega = mi.omega;
        rec.alpha_x = 0.5 * omega_0 * mi.laser_minus;
        rec.alpha_y = 0.5 * omega_0 * mi.laser_plus;
        rec.alpha_z = 0.5 * g_ab * mi.collision;
        const auto q = quench_residual(rec.omega, rec.alpha_y, rec.alpha_z, set.omega_eff);
        rec.residual = q.residual;
        rec.residual_ratio = q.ratio;
        set.records.push_back(rec);
    }
    return set;
}

} // namespace qtweezer
