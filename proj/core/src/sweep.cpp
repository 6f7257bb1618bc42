#include "qtweezer/sweep.hpp"

#include "qtweezer/errors.hpp"
#include "qtweezer/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace qtweezer {

std::string_view to_string(SweepParameter p) {
    switch (p) {
    case SweepParameter::omega_eff: return "Omega_eff";
    case SweepParameter::g_ab_over_g_b: return "g_ab_over_g_b";
    case SweepParameter::temperature: return "T";
    case SweepParameter::omega_b: return "omega_b";
    case SweepParameter::theta: return "theta";
    }
    return "?";
}

SweepParameter parse_sweep_parameter(std::string_view name) {
    for (auto p : {SweepParameter::omega_eff, SweepParameter::g_ab_over_g_b, SweepParameter::temperature,
                   SweepParameter::omega_b, SweepParameter::theta}) {
        if (name == to_string(p)) return p;
    }
    throw ConfigError("param", "unknown sweep parameter '" + std::string(name) +
                                   "' (expected Omega_eff, g_ab_over_g_b, T, omega_b or theta)");
}

Dimension dimension_of(SweepParameter p) {
    switch (p) {
    case SweepParameter::omega_eff:
    case SweepParameter::omega_b: return Dimension::frequency;
    case SweepParameter::temperature: return Dimension::temperature;
    case SweepParameter::theta: return Dimension::angle;
    case SweepParameter::g_ab_over_g_b: return Dimension::dimensionless;
    }
    return Dimension::dimensionless;
}

std::string_view to_string(DensityConstraint c) {
    return c == DensityConstraint::fixed_atom_number ? "fixed-N" : "fixed-n0";
}

DensityConstraint parse_density_constraint(std::string_view name) {
    if (name == "fixed-N") return DensityConstraint::fixed_atom_number;
    if (name == "fixed-n0") return DensityConstraint::fixed_central_density;
    throw ConfigError("mode", "unknown constraint '" + std::string(name) + "' (expected fixed-N or fixed-n0)");
}

void check_grid(const std::vector<double>& grid) {
    if (grid.empty()) throw ConfigError("grid", "sweep grid is empty");
    for (double v : grid) {
        if (!std::isfinite(v)) throw ConfigError("grid", "grid values must be finite");
    }
    if (grid.size() < 2) return;
    const bool up = grid[1] > grid[0];
    for (std::size_t i = 1; i < grid.size(); ++i) {
        if (up ? !(grid[i] > grid[i - 1]) : !(grid[i] < grid[i - 1])) {
            throw ConfigError("grid", "sweep grid must be strictly monotone");
        }
    }
}

std::string describe_basis(const ModeBasisConfig& basis) {
    std::string s = "j=" + std::to_string(basis.j_min) + ".." + std::to_string(basis.j_max) + " l=";
    for (std::size_t i = 0; i < basis.ells.size(); ++i) {
        if (i) s += ',';
        s += std::to_string(basis.ells[i]);
    }
    return s;
}

namespace {

// Applies one grid value to a copy of the config so the point can be validated on its own.
Config with_value(const Config& base, SweepParameter p, double v) {
    Config c = base;
    switch (p) {
    case SweepParameter::omega_eff:
        c.drive.omega_0.reset();
        c.drive.omega_eff = v;
        break;
    case SweepParameter::g_ab_over_g_b: c.species.g_ab_over_g_b = v; break;
    case SweepParameter::temperature: c.condensate.temperature = v; break;
    case SweepParameter::omega_b: c.condensate.omega_b = v; break;
    case SweepParameter::theta: c.drive.theta = v; break;
    }
    return c;
}

void fill_derived(SweepRow& row, const Setup& s, const Evaluation& e) {
    const auto& u = s.model.units;
    row.fidelity = e.fidelity.fidelity;
    row.g = e.fidelity.g;
    row.g_min = e.fidelity.g_min;
    row.perturbative = e.fidelity.perturbative;
    row.regime_ok = e.regime.pass();
    row.valid = e.valid();
    row.omega_eff = u.frequency_from_internal(e.drive.omega_eff);
    row.tau0 = u.time_from_internal(e.fidelity.tau0);
    row.central_density = u.density_from_internal(s.profile.central_density);
    row.atom_number = s.profile.atom_number;
    row.radius = u.length_from_internal(s.profile.radius);
}

// omega_b sweeps hold either N or n0 at its base value, whichever the base config specifies.
Config constrained_base(const Config& base, DensityConstraint constraint) {
    Config c = base;
    const InternalModel m = to_internal(base);
    const TFProfile p = solve_tf(m.scattering_length, m.atom_number, m.central_density);
    if (constraint == DensityConstraint::fixed_atom_number) {
        c.condensate.atom_number = p.atom_number;
        c.condensate.central_density.reset();
    } else {
        c.condensate.central_density = m.units.density_from_internal(p.central_density);
        c.condensate.atom_number.reset();
    }
    return c;
}

} // namespace

SweepTable run_sweep(const SweepRequest& req) {
    check_grid(req.grid);
    validate(req.base);

    SweepTable table;
    table.parameter = req.parameter;
    table.constraint = req.constraint;
    table.config_snapshot = to_text(req.base);
    table.basis = describe_basis(req.base.basis);
    table.rows.resize(req.grid.size());

    if (req.parameter == SweepParameter::omega_b) {
        const Config base = constrained_base(req.base, req.constraint);
        parallel_for(req.grid.size(), req.threads, [&](std::size_t i) {
            SweepRow& row = table.rows[i];
            row.series = req.series;
            row.value = req.grid[i];
            try {
                const Setup s = prepare(with_value(base, req.parameter, row.value));
                fill_derived(row, s, evaluate(s, configured_drive(s)));
            } catch (const std::exception& ex) {
                row.error = ex.what();
            }
        });
        return table;
    }

    const Setup setup = prepare(req.base);
    const DriveState drive0 = configured_drive(setup);
    parallel_for(req.grid.size(), req.threads, [&](std::size_t i) {
        SweepRow& row = table.rows[i];
        row.series = req.series;
        row.value = req.grid[i];
        try {
            validate(with_value(req.base, req.parameter, row.value));
            DriveState d = drive0;
            const auto& u = setup.model.units;
            switch (req.parameter) {
            case SweepParameter::omega_eff: d.omega_eff = u.frequency_to_internal(row.value); break;
            case SweepParameter::g_ab_over_g_b: d.g_ab_over_g_b = row.value; break;
            case SweepParameter::theta: d.theta = row.value; break;
            case SweepParameter::temperature: {
                Setup local = setup;
                set_thermal_energy(local, u.temperature_to_internal(row.value));
                fill_derived(row, local, evaluate(local, d));
                return;
            }
            case SweepParameter::omega_b: break;
            }
            fill_derived(row, setup, evaluate(setup, d));
        } catch (const std::exception& ex) {
            row.error = ex.what();
        }
    });
    return table;
}

SweepTable run_sweeps(const std::vector<SweepRequest>& requests) {
    if (requests.empty()) throw std::invalid_argument("run_sweeps: no requests");
    SweepTable all;
    for (std::size_t i = 0; i < requests.size(); ++i) {
        SweepTable t = run_sweep(requests[i]);
        if (i == 0) {
            all.parameter = t.parameter;
            all.constraint = t.constraint;
            all.config_snapshot = t.config_snapshot;
            all.basis = t.basis;
        } else if (all.basis.find(t.basis) == std::string::npos) {
            all.basis += "; " + t.basis;
        }
        all.rows.insert(all.rows.end(), t.rows.begin(), t.rows.end());
    }
    return all;
}

OptimizeResult optimize_gab(const Config& base, double lo, double hi, double tol) {
    if (!(lo >= 0.0 && hi > lo)) throw ConfigError("g_ab", "optimizer bracket must satisfy 0 <= lo < hi");
    if (!(tol > 0.0)) throw std::invalid_argument("optimize_gab: tolerance must be positive");
    const Setup setup = prepare(base);
    const DriveState drive0 = configured_drive(setup);

    OptimizeResult res;
    auto fidelity_at = [&](double x) {
        DriveState d = drive0;
        d.g_ab_over_g_b = x;
        return evaluate(setup, d).fidelity.fidelity;
    };

    constexpr int scan_points = 21;
    for (int i = 0; i < scan_points; ++i) {
        const double x = lo + (hi - lo) * i / (scan_points - 1);
        res.prescan.emplace_back(x, fidelity_at(x));
    }
    std::size_t best = 0;
    for (std::size_t i = 1; i < res.prescan.size(); ++i) {
        if (res.prescan[i].second > res.prescan[best].second) best = i;
    }
    for (std::size_t i = 1; i < res.prescan.size(); ++i) {
        const bool rising = res.prescan[i].second > res.prescan[i - 1].second;
        if ((i <= best && !rising && res.prescan[i].second != res.prescan[i - 1].second) ||
            (i > best && rising)) {
            res.unimodal = false;
        }
    }

    double best_x = res.prescan[best].first;
    double best_p = res.prescan[best].second;
    if (!res.unimodal) {
        res.warnings.push_back("P(g_ab) is not unimodal on [" + std::to_string(lo) + ", " + std::to_string(hi) +
                               "]; returning the pre-scan argmax");
    } else {
        // Golden-section search on the bracket around the best scan point.
        double a = res.prescan[best == 0 ? 0 : best - 1].first;
        double b = res.prescan[std::min(best + 1, res.prescan.size() - 1)].first;
        const double r = (std::sqrt(5.0) - 1.0) / 2.0;
        double c = b - r * (b - a);
        double d = a + r * (b - a);
        double fc = fidelity_at(c);
        double fd = fidelity_at(d);
        res.iterates.emplace_back(c, fc);
        res.iterates.emplace_back(d, fd);
        while (b - a > tol) {
            if (fc >= fd) {
                b = d;
                d = c;
                fd = fc;
                c = b - r * (b - a);
                fc = fidelity_at(c);
                res.iterates.emplace_back(c, fc);
            } else {
                a = c;
                c = d;
                fc = fd;
                d = a + r * (b - a);
                fd = fidelity_at(d);
                res.iterates.emplace_back(d, fd);
            }
        }
        for (const auto& [x, p] : res.iterates) {
            if (p > best_p) {
                best_x = x;
                best_p = p;
            }
        }
    }

    DriveState d = drive0;
    d.g_ab_over_g_b = best_x;
    const Evaluation e = evaluate(setup, d);
    res.g_ab_over_g_b = best_x;
    res.fidelity = e.fidelity.fidelity;
    res.g = e.fidelity.g;
    return res;
}

std::vector<BasisConvergenceRow> convergence_vs_basis(const Config& base, const std::vector<int>& j_max_grid) {
    if (j_max_grid.empty()) throw ConfigError("j_max", "convergence grid is empty");
    for (std::size_t i = 1; i < j_max_grid.size(); ++i) {
        if (j_max_grid[i] <= j_max_grid[i - 1]) throw ConfigError("j_max", "convergence grid must increase");
    }
    Config c = base;
    c.basis.j_max = j_max_grid.back();
    const Setup full = prepare(c);
    const DriveState drive = configured_drive(full);

    std::vector<BasisConvergenceRow> rows;
    for (int j_max : j_max_grid) {
        Setup s = full;
        s.basis.clear();
        s.geometry.modes.clear();
        for (std::size_t i = 0; i < full.basis.size(); ++i) {
            if (full.basis[i].index.j > j_max) continue;
            s.basis.push_back(full.basis[i]);
            s.geometry.modes.push_back(full.geometry.modes[i]);
        }
        BasisConvergenceRow row;
        row.j_max = j_max;
        row.g = evaluate(s, drive).fidelity.g;
        if (!rows.empty()) {
            row.increment = row.g - rows.back().g;
            row.relative = row.g != 0.0 ? std::abs(row.increment) / std::abs(row.g) : INFINITY;
            row.converged = row.relative < 1e-3;
        }
        rows.push_back(row);
    }
    return rows;
}

namespace {

std::vector<double> linspace(double a, double b, int n) {
    std::vector<double> v(n);
    for (int i = 0; i < n; ++i) v[i] = n == 1 ? a : a + (b - a) * i / (n - 1);
    return v;
}

std::vector<double> logspace(double a, double b, int n) {
    auto v = linspace(std::log(a), std::log(b), n);
    for (auto& x : v) x = std::exp(x);
    return v;
}

constexpr double two_pi = 2.0 * constants::pi;

} // namespace

std::vector<SweepRequest> figure_requests(std::string_view figure, const Config& base, unsigned threads) {
    std::vector<SweepRequest> out;
    auto make = [&](SweepParameter p, std::vector<double> grid, Config c, std::string label) {
        SweepRequest r;
        r.parameter = p;
        r.grid = std::move(grid);
        r.base = std::move(c);
        r.series = std::move(label);
        r.threads = threads;
        return r;
    };
    // Temperature and angular-momentum content of the four curves in each 2a-2d preset.
    struct Curve {
        const char* label;
        double temperature;
        std::vector<int> ells;
    };
    const std::vector<Curve> curves = {
        {"T=0 l=0", 0.0, {0}},
        {"T=300nK l=0", 300e-9, {0}},
        {"T=0 l=0,2", 0.0, {0, 2}},
        {"T=300nK l=0,2", 300e-9, {0, 2}},
    };
    auto panel = [&](SweepParameter p, const std::vector<double>& grid, double omega_eff, double theta,
                     double g_ab) {
        for (const auto& cv : curves) {
            Config c = base;
            c.condensate.temperature = cv.temperature;
            c.basis.ells = cv.ells;
            c.drive.omega_0.reset();
            c.drive.omega_eff = omega_eff;
            c.drive.theta = theta;
            c.species.g_ab_over_g_b = g_ab;
            out.push_back(make(p, grid, c, cv.label));
        }
    };

    const double half_pi = constants::pi / 2.0;
    const auto gab_grid = linspace(0.0, 2.0, 41);
    if (figure == "2a") {
        panel(SweepParameter::omega_eff, logspace(two_pi * 100.0, two_pi * 1e5, 31), two_pi * 1.7e3, half_pi, 1.0);
    } else if (figure == "2b") {
        panel(SweepParameter::g_ab_over_g_b, gab_grid, two_pi * 1.7e3, half_pi, 1.0);
    } else if (figure == "2c") {
        panel(SweepParameter::g_ab_over_g_b, gab_grid, two_pi * 17e3, half_pi, 1.0);
    } else if (figure == "2d") {
        panel(SweepParameter::g_ab_over_g_b, gab_grid, two_pi * 1.7e3, constants::pi / 4.0, 1.0);
        Config ref = base;
        ref.condensate.temperature = 0.0;
        ref.basis.ells = {0, 2};
        ref.drive.omega_0.reset();
        ref.drive.omega_eff = two_pi * 1.7e3;
        ref.drive.theta = half_pi;
        out.push_back(make(SweepParameter::g_ab_over_g_b, gab_grid, ref, "theta=pi/2 T=0 l=0,2"));
    } else if (figure == "3") {
        const auto grid = linspace(two_pi * 100.0, two_pi * 600.0, 26);
        for (auto constraint : {DensityConstraint::fixed_atom_number, DensityConstraint::fixed_central_density}) {
            for (double g_ab : {4.0, 1.0}) {
                Config c = base;
                c.condensate.temperature = 0.0;
                c.drive.omega_0.reset();
                c.drive.omega_eff = two_pi * 1.7e3;
                c.drive.theta = half_pi;
                c.species.g_ab_over_g_b = g_ab;
                char label[64];
                std::snprintf(label, sizeof label, "%s g_ab=%gg_b", std::string(to_string(constraint)).c_str(), g_ab);
                auto r = make(SweepParameter::omega_b, grid, c, label);
                r.constraint = constraint;
                out.push_back(std::move(r));
            }
        }
    } else {
        throw ConfigError("figure", "unknown figure '" + std::string(figure) + "' (expected 2a, 2b, 2c, 2d or 3)");
    }
    return out;
}

} // namespace qtweezer
