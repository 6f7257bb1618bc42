#include "cli.hpp"

#include "qtweezer/config.hpp"
#include "qtweezer/errors.hpp"
#include "qtweezer/io.hpp"
#include "qtweezer/model.hpp"
#include "qtweezer/oracle.hpp"
#include "qtweezer/sweep.hpp"

#include "CLI11.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>

namespace qtweezer::cli {

namespace {

const std::map<std::string, std::string> presets = {
    {"baseline",
     "species = Rb87\n"
     "omega_b = 200 Hz_x2pi\n"
     "N = 3e6\n"
     "T = 0 nK\n"
     "omega_a = 1 MHz_x2pi\n"
     "drive_wavelength = 780 nm\n"
     "Omega_eff = 1.7 kHz_x2pi\n"
     "theta = pi/2\n"
     "g_ab_over_g_b = 1.0\n"
     "j_max = 500\n"
     "ell = 0\n"},
};

struct Common {
    std::string config;
    std::vector<std::string> overrides;
    std::string format = "json";
    std::string output;
    bool strict = false;
    unsigned threads = 0;
};

void add_common(CLI::App* sub, Common& c, const std::string& default_format) {
    c.format = default_format;
    sub->add_option("--config,-c", c.config, "configuration file or built-in preset (baseline)")->required();
    sub->add_option("--set", c.overrides, "key=value override, repeatable");
    sub->add_option("--format,-f", c.format, "output format")->check(CLI::IsMember({"csv", "json"}));
    sub->add_option("--output,-o", c.output, "write data here instead of stdout");
    sub->add_flag("--strict", c.strict, "exit 4 when a validity flag fails");
    sub->add_option("--threads,-j", c.threads, "worker cap, 0 = all cores");
}

Config load(const Common& c) {
    if (!std::filesystem::exists(c.config)) {
        if (const std::string* text = builtin_config(c.config)) {
            RawConfig raw = parse_config_text(*text);
            apply_overrides(raw, c.overrides);
            return interpret(raw);
        }
    }
    return load_config_file(c.config, c.overrides);
}

void emit(const Common& c, const std::string& data, std::ostream& out) {
    if (c.output.empty()) {
        out << data;
        return;
    }
    std::ofstream f(c.output, std::ios::binary);
    if (!f) throw ConfigError("output", "cannot open '" + c.output + "' for writing");
    f << data;
}

void warn_all(const std::vector<std::string>& warnings, std::ostream& err) {
    for (const auto& w : warnings) err << "warning: " << w << '\n';
}

// Splits "a,b,c", keeping parenthesis-free expressions such as "pi/4" intact.
std::vector<std::string> split_list(const std::string& s) {
    std::vector<std::string> out;
    std::stringstream in(s);
    for (std::string item; std::getline(in, item, ',');) {
        if (!item.empty()) out.push_back(item);
    }
    return out;
}

double scaled(const std::string& number, const std::string& unit, Dimension d) {
    try {
        return evaluate_number(number) * unit_factor(unit, d);
    } catch (const std::invalid_argument& e) {
        throw ConfigError("grid", e.what());
    }
}

std::vector<double> build_grid(const std::string& range, const std::string& values, bool log_spacing,
                               const std::string& unit, Dimension d) {
    if (range.empty() == values.empty()) throw ConfigError("grid", "give exactly one of --range and --values");
    std::vector<double> grid;
    if (!values.empty()) {
        for (const auto& v : split_list(values)) grid.push_back(scaled(v, unit, d));
        return grid;
    }
    std::vector<std::string> parts;
    std::stringstream in(range);
    for (std::string p; std::getline(in, p, ':');) parts.push_back(p);
    if (parts.size() != 3) throw ConfigError("grid", "--range expects start:stop:count, got '" + range + "'");
    const double a = scaled(parts[0], unit, d);
    const double b = scaled(parts[1], unit, d);
    int n = 0;
    try {
        n = std::stoi(parts[2]);
    } catch (const std::exception&) {
        throw ConfigError("grid", "point count '" + parts[2] + "' is not an integer");
    }
    if (n < 1) throw ConfigError("grid", "point count must be positive");
    if (log_spacing && !(a > 0.0 && b > 0.0)) throw ConfigError("grid", "--log needs positive endpoints");
    for (int i = 0; i < n; ++i) {
        const double t = n == 1 ? 0.0 : static_cast<double>(i) / (n - 1);
        grid.push_back(log_spacing ? std::exp(std::log(a) + t * (std::log(b) - std::log(a))) : a + t * (b - a));
    }
    return grid;
}

int sweep_status(const SweepTable& t, bool strict, std::ostream& err) {
    bool all_valid = true;
    for (std::size_t i = 0; i < t.rows.size(); ++i) {
        const auto& r = t.rows[i];
        if (!r.ok()) {
            err << "warning: row " << i << " (" << to_string(t.parameter) << " = " << format_number(r.value)
                << "): " << r.error << '\n';
            all_valid = false;
        } else if (!r.valid) {
            all_valid = false;
        }
    }
    if (!all_valid) err << "warning: some rows fail a validity flag\n";
    return strict && !all_valid ? exit_validity : exit_ok;
}

} // namespace

const std::string* builtin_config(const std::string& name) {
    auto it = presets.find(name);
    return it == presets.end() ? nullptr : &it->second;
}

int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Single-atom extraction from a condensate into a quantum tweezer: fidelity, sweeps, checks"};
    app.name("qtweezer");
    app.require_subcommand(1);

    Common fid, swp, opt, orc, mds, val;

    auto* fidelity = app.add_subcommand("fidelity", "fidelity P = 1 - g at the configured drive");
    add_common(fidelity, fid, "json");

    auto* sweep = app.add_subcommand("sweep", "evaluate P over a parameter grid");
    add_common(sweep, swp, "csv");
    std::string param, range, values, unit, mode = "fixed-N", figure;
    bool log_spacing = false;
    sweep->add_option("--param,-p", param, "Omega_eff, g_ab_over_g_b, T, omega_b, theta or j_max");
    sweep->add_option("--range", range, "start:stop:count");
    sweep->add_option("--values", values, "comma-separated grid");
    sweep->add_flag("--log", log_spacing, "geometric spacing for --range");
    sweep->add_option("--unit", unit, "unit of the grid values, e.g. kHz_x2pi or nK");
    sweep->add_option("--mode", mode, "constraint for omega_b sweeps")->check(CLI::IsMember({"fixed-N", "fixed-n0"}));
    sweep->add_option("--figure", figure, "preset figure sweep")->check(CLI::IsMember({"2a", "2b", "2c", "2d", "3"}));

    auto* optimize = app.add_subcommand("optimize", "maximize P over g_ab / g_b");
    add_common(optimize, opt, "json");
    double lo = 0.0, hi = 4.0, tol = 1e-3;
    optimize->add_option("--lo", lo, "lower end of the g_ab / g_b bracket");
    optimize->add_option("--hi", hi, "upper end of the g_ab / g_b bracket");
    optimize->add_option("--tol", tol, "absolute tolerance in g_ab / g_b");

    auto* oracle = app.add_subcommand("oracle-check", "compare exact spin-boson dynamics with the perturbative g");
    add_common(oracle, orc, "json");
    int oracle_modes_count = 2, n_max = 6;
    double oracle_gab = 0.0;
    std::string lambdas = "0.01,0.02,0.05,0.1,0.2,0.3";
    bool no_normalize = false;
    oracle->add_option("--modes", oracle_modes_count, "number of lowest l = 0 modes")->check(CLI::Range(1, 3));
    oracle->add_option("--n-max", n_max, "per-mode truncation")->check(CLI::Range(1, 63));
    oracle->add_option("--g-ab", oracle_gab, "g_ab / g_b used for the oracle couplings");
    oracle->add_option("--lambdas", lambdas, "comma-separated coupling scales, ascending");
    oracle->add_flag("--no-normalize", no_normalize, "use the physical coupling magnitudes");

    auto* modes = app.add_subcommand("modes", "list the Bogoliubov mode basis");
    add_common(modes, mds, "csv");
    bool with_couplings = false;
    modes->add_flag("--couplings", with_couplings, "include alpha_x, alpha_y, alpha_z");

    auto* validate_cmd = app.add_subcommand("validate-config", "check a configuration and print it in canonical form");
    add_common(validate_cmd, val, "json");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return exit_ok;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return exit_ok;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return exit_config;
    }

    try {
        if (*validate_cmd) {
            const Config c = load(val);
            warn_all(validate(c), err);
            emit(val, to_text(c), out);
            return exit_ok;
        }

        if (*fidelity) {
            const Setup s = prepare(load(fid));
            warn_all(s.warnings, err);
            const Evaluation e = evaluate(s, configured_drive(s));
            warn_all(e.fidelity.warnings, err);
            if (!e.regime.pass()) {
                err << "warning: collisional-blockade regime check failed (omega_gap tau = " << e.regime.gap_times_tau
                    << ", Omega_eff / omega_gap = " << e.regime.rabi_over_gap << ")\n";
            }
            emit(fid, fid.format == "json" ? fidelity_to_json(s, e) : fidelity_to_csv(s, e), out);
            return fid.strict && !e.valid() ? exit_validity : exit_ok;
        }

        if (*sweep) {
            const Config base = load(swp);
            warn_all(validate(base), err);
            if (!figure.empty()) {
                if (!param.empty()) throw ConfigError("figure", "--figure and --param are exclusive");
                const SweepTable t = run_sweeps(figure_requests(figure, base, swp.threads));
                const int status = sweep_status(t, swp.strict, err);
                emit(swp, swp.format == "json" ? sweep_to_json(t) : sweep_to_csv(t), out);
                return status;
            }
            if (param.empty()) throw ConfigError("param", "--param or --figure is required");
            if (param == "j_max") {
                std::vector<int> grid;
                for (double v : build_grid(range, values, log_spacing, unit, Dimension::dimensionless)) {
                    grid.push_back(static_cast<int>(std::lround(v)));
                }
                const auto rows = convergence_vs_basis(base, grid);
                emit(swp, swp.format == "json" ? basis_convergence_to_json(rows) : basis_convergence_to_csv(rows), out);
                return exit_ok;
            }
            SweepRequest req;
            req.parameter = parse_sweep_parameter(param);
            req.grid = build_grid(range, values, log_spacing, unit, dimension_of(req.parameter));
            req.constraint = parse_density_constraint(mode);
            req.base = base;
            req.threads = swp.threads;
            const SweepTable t = run_sweep(req);
            const int status = sweep_status(t, swp.strict, err);
            emit(swp, swp.format == "json" ? sweep_to_json(t) : sweep_to_csv(t), out);
            return status;
        }

        if (*optimize) {
            const OptimizeResult r = optimize_gab(load(opt), lo, hi, tol);
            warn_all(r.warnings, err);
            emit(opt, opt.format == "json" ? optimize_to_json(r) : optimize_to_csv(r), out);
            return opt.strict && !r.unimodal ? exit_validity : exit_ok;
        }

        if (*oracle) {
            Config c = load(orc);
            c.species.g_ab_over_g_b = oracle_gab;
            c.basis.ells = {0};
            c.basis.j_min = std::max(c.basis.j_min, 1);
            c.basis.j_max = c.basis.j_min + oracle_modes_count - 1;
            const Setup s = prepare(c);
            warn_all(s.warnings, err);
            const Evaluation e = evaluate(s, configured_drive(s));
            std::vector<ModeIndex> selection;
            for (const auto& m : s.basis) selection.push_back(m.index);
            OracleConfig oc;
            oc.modes = oracle_modes(e.couplings.records, s.basis, selection, !no_normalize);
            oc.n_max = n_max;
            oc.omega_eff = e.drive.omega_eff;
            oc.theta = e.drive.theta;
            std::vector<double> grid;
            for (const auto& v : split_list(lambdas)) grid.push_back(scaled(v, "", Dimension::dimensionless));
            OracleReport rep;
            try {
                rep = convergence_check(oc, grid, orc.threads);
            } catch (const std::invalid_argument& ex) {
                throw ConfigError("oracle", ex.what());
            }
            for (const auto& n : rep.notes) err << "warning: " << n << '\n';
            emit(orc, orc.format == "json" ? oracle_to_json(rep, oc) : oracle_to_csv(rep), out);
            if (!rep.converged) return exit_numerical;
            return exit_ok;
        }

        if (*modes) {
            const Setup s = prepare(load(mds));
            warn_all(s.warnings, err);
            std::optional<Evaluation> e;
            if (with_couplings) e = evaluate(s, configured_drive(s));
            const Evaluation* ep = e ? &*e : nullptr;
            emit(mds, mds.format == "json" ? modes_to_json(s, ep) : modes_to_csv(s, ep), out);
            return exit_ok;
        }
    } catch (const ConfigError& e) {
        err << "error: " << e.what() << '\n';
        return exit_config;
    } catch (const NumericalError& e) {
        err << "error: numerical failure: " << e.what() << '\n';
        return exit_numerical;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << '\n';
        return exit_config;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return exit_internal;
    }
    return exit_internal;
}

} // namespace qtweezer::cli
