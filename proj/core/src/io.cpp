#include "qtweezer/io.hpp"

#include "json.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <optional>
#include <sstream>
#include <stdexcept>

namespace qtweezer {

using json = nlohmann::ordered_json;

std::string format_number(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.11e", v);
    return buf;
}

namespace {

// JSON has no NaN or infinity; those become null.
json number(double v) {
    return std::isfinite(v) ? json(v) : json(nullptr);
}

std::string quote(const std::string& s) {
    if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += "\"\"";
        else if (c == '\n' || c == '\r') out += ' ';
        else out += c;
    }
    return out + "\"";
}

std::vector<std::string> split_csv_line(std::string_view line) {
    std::vector<std::string> fields(1);
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        const char c = line[i];
        if (quoted) {
            if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
                fields.back() += '"';
                ++i;
            } else if (c == '"') {
                quoted = false;
            } else {
                fields.back() += c;
            }
        } else if (c == '"') {
            quoted = true;
        } else if (c == ',') {
            fields.emplace_back();
        } else {
            fields.back() += c;
        }
    }
    if (quoted) throw std::invalid_argument("csv: unterminated quoted field");
    return fields;
}

double parse_double(const std::string& s, const char* column) {
    if (s.empty()) return 0.0;
    char* end = nullptr;
    const double v = std::strtod(s.c_str(), &end);
    if (end == s.c_str() || *end != '\0') {
        throw std::invalid_argument(std::string("csv: column ") + column + " holds '" + s + "', not a number");
    }
    return v;
}

bool parse_flag(const std::string& s, const char* column) {
    if (s.empty() || s == "0") return false;
    if (s == "1") return true;
    throw std::invalid_argument(std::string("csv: column ") + column + " holds '" + s + "', expected 0 or 1");
}

const std::vector<std::string> sweep_columns = {"P", "g", "g_min", "perturbative", "regime_ok", "valid",
                                                "Omega_eff", "tau0", "n0", "N", "R", "error"};

json sweep_row_json(const SweepRow& r, bool with_series) {
    json j;
    if (with_series) j["series"] = r.series;
    j["value"] = number(r.value);
    if (!r.ok()) {
        j["error"] = r.error;
        return j;
    }
    j["P"] = number(r.fidelity);
    j["g"] = number(r.g);
    j["g_min"] = number(r.g_min);
    j["perturbative"] = r.perturbative;
    j["regime_ok"] = r.regime_ok;
    j["valid"] = r.valid;
    j["Omega_eff"] = number(r.omega_eff);
    j["tau0"] = number(r.tau0);
    j["n0"] = number(r.central_density);
    j["N"] = number(r.atom_number);
    j["R"] = number(r.radius);
    return j;
}

bool has_series(const SweepTable& t) {
    for (const auto& r : t.rows) {
        if (!r.series.empty()) return true;
    }
    return false;
}

} // namespace

std::string sweep_to_csv(const SweepTable& t) {
    std::ostringstream out;
    out << "# qtweezer sweep\n";
    out << "# parameter = " << to_string(t.parameter) << '\n';
    out << "# unit = " << canonical_unit(dimension_of(t.parameter)) << '\n';
    out << "# constraint = " << to_string(t.constraint) << '\n';
    out << "# basis = " << t.basis << '\n';
    std::istringstream snap(t.config_snapshot);
    for (std::string line; std::getline(snap, line);) {
        if (!line.empty()) out << "# config: " << line << '\n';
    }

    const bool series = has_series(t);
    if (series) out << "series,";
    out << to_string(t.parameter);
    for (const auto& c : sweep_columns) out << ',' << c;
    out << '\n';

    for (const auto& r : t.rows) {
        if (series) out << quote(r.series) << ',';
        out << format_number(r.value);
        if (r.ok()) {
            for (double v : {r.fidelity, r.g, r.g_min}) out << ',' << format_number(v);
            for (bool b : {r.perturbative, r.regime_ok, r.valid}) out << ',' << (b ? '1' : '0');
            for (double v : {r.omega_eff, r.tau0, r.central_density, r.atom_number, r.radius}) {
                out << ',' << format_number(v);
            }
            out << ",\n";
        } else {
            out << std::string(sweep_columns.size(), ',') << quote(r.error) << '\n';
        }
    }
    return out.str();
}

SweepTable sweep_from_csv(std::string_view text) {
    SweepTable t;
    std::istringstream in{std::string(text)};
    std::string line;
    bool header_seen = false;
    bool series = false;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        if (line[0] == '#') {
            const std::string body = line.substr(1 + (line.size() > 1 && line[1] == ' '));
            auto value_of = [&](std::string_view key) -> std::optional<std::string> {
                const std::string prefix = std::string(key) + " = ";
                if (body.rfind(prefix, 0) == 0) return body.substr(prefix.size());
                return std::nullopt;
            };
            if (auto v = value_of("parameter")) t.parameter = parse_sweep_parameter(*v);
            else if (auto v = value_of("constraint")) t.constraint = parse_density_constraint(*v);
            else if (auto v = value_of("basis")) t.basis = *v;
            else if (body.rfind("config: ", 0) == 0) t.config_snapshot += body.substr(8) + "\n";
            continue;
        }
        auto fields = split_csv_line(line);
        if (!header_seen) {
            series = !fields.empty() && fields[0] == "series";
            const std::size_t expected = sweep_columns.size() + 1 + (series ? 1 : 0);
            if (fields.size() != expected) throw std::invalid_argument("csv: header has the wrong number of columns");
            if (fields[series ? 1 : 0] != to_string(t.parameter)) {
                throw std::invalid_argument("csv: value column '" + fields[series ? 1 : 0] +
                                            "' does not match the parameter metadata");
            }
            header_seen = true;
            continue;
        }
        const std::size_t expected = sweep_columns.size() + 1 + (series ? 1 : 0);
        if (fields.size() != expected) {
            throw std::invalid_argument("csv: row " + std::to_string(t.rows.size() + 1) + " has " +
                                        std::to_string(fields.size()) + " fields, expected " + std::to_string(expected));
        }
        std::size_t k = 0;
        SweepRow r;
        if (series) r.series = fields[k++];
        r.value = parse_double(fields[k++], "value");
        r.fidelity = parse_double(fields[k++], "P");
        r.g = parse_double(fields[k++], "g");
        r.g_min = parse_double(fields[k++], "g_min");
        r.perturbative = parse_flag(fields[k++], "perturbative");
        r.regime_ok = parse_flag(fields[k++], "regime_ok");
        r.valid = parse_flag(fields[k++], "valid");
        r.omega_eff = parse_double(fields[k++], "Omega_eff");
        r.tau0 = parse_double(fields[k++], "tau0");
        r.central_density = parse_double(fields[k++], "n0");
        r.atom_number = parse_double(fields[k++], "N");
        r.radius = parse_double(fields[k++], "R");
        r.error = fields[k++];
        t.rows.push_back(std::move(r));
    }
    if (!header_seen) throw std::invalid_argument("csv: no header row");
    return t;
}

std::string sweep_to_json(const SweepTable& t) {
    json j;
    j["parameter"] = std::string(to_string(t.parameter));
    j["unit"] = std::string(canonical_unit(dimension_of(t.parameter)));
    j["constraint"] = std::string(to_string(t.constraint));
    j["basis"] = t.basis;
    j["config"] = t.config_snapshot;
    const bool series = has_series(t);
    json rows = json::array();
    for (const auto& r : t.rows) rows.push_back(sweep_row_json(r, series));
    j["rows"] = std::move(rows);
    return j.dump(2) + "\n";
}

namespace {

json regime_json(const RegimeDiagnostics& r) {
    return json{{"gap_times_tau", number(r.gap_times_tau)},
                {"rabi_over_gap", number(r.rabi_over_gap)},
                {"gap_tau_ok", r.gap_tau_ok},
                {"rabi_gap_ok", r.rabi_gap_ok}};
}

} // namespace

std::string fidelity_to_json(const Setup& s, const Evaluation& e) {
    const auto& u = s.model.units;
    json j;
    j["P"] = number(e.fidelity.fidelity);
    j["g"] = number(e.fidelity.g);
    j["g_min"] = number(e.fidelity.g_min);
    j["tau0"] = number(u.time_from_internal(e.fidelity.tau0));
    j["theta"] = number(e.drive.theta);
    j["Omega_eff"] = number(u.frequency_from_internal(e.drive.omega_eff));
    j["Omega_0"] = number(u.frequency_from_internal(e.couplings.omega_0));
    j["g_ab_over_g_b"] = number(e.drive.g_ab_over_g_b);
    j["omega_gap"] = number(u.frequency_from_internal(s.omega_gap));
    j["n0"] = number(u.density_from_internal(s.profile.central_density));
    j["N"] = number(s.profile.atom_number);
    j["R"] = number(u.length_from_internal(s.profile.radius));
    j["basis"] = describe_basis(s.model.basis);
    j["modes"] = s.basis.size();
    j["quadrature_rtol_achieved"] = number(s.geometry.achieved_rtol);
    j["validity"] = json{{"perturbative", e.fidelity.perturbative}, {"regime", regime_json(e.regime)}, {"valid", e.valid()}};
    json warnings = json::array();
    for (const auto& w : s.warnings) warnings.push_back(w);
    for (const auto& w : e.fidelity.warnings) warnings.push_back(w);
    j["warnings"] = std::move(warnings);
    return j.dump(2) + "\n";
}

std::string fidelity_to_csv(const Setup& s, const Evaluation& e) {
    const auto& u = s.model.units;
    std::ostringstream out;
    out << "# basis = " << describe_basis(s.model.basis) << '\n';
    out << "# P = " << format_number(e.fidelity.fidelity) << '\n';
    out << "# g = " << format_number(e.fidelity.g) << '\n';
    out << "# g_min = " << format_number(e.fidelity.g_min) << '\n';
    out << "# tau0 = " << format_number(u.time_from_internal(e.fidelity.tau0)) << '\n';
    out << "# theta = " << format_number(e.drive.theta) << '\n';
    out << "# Omega_eff = " << format_number(u.frequency_from_internal(e.drive.omega_eff)) << '\n';
    out << "# Omega_0 = " << format_number(u.frequency_from_internal(e.couplings.omega_0)) << '\n';
    out << "# g_ab_over_g_b = " << format_number(e.drive.g_ab_over_g_b) << '\n';
    out << "# omega_gap = " << format_number(u.frequency_from_internal(s.omega_gap)) << '\n';
    out << "# perturbative = " << e.fidelity.perturbative << '\n';
    out << "# regime_ok = " << e.regime.pass() << '\n';
    out << "# valid = " << e.valid() << '\n';
    out << "j,l,omega,occupation,A1,A2,A3,A4,term,quench_ratio\n";
    for (const auto& c : e.fidelity.contributions) {
        out << c.index.j << ',' << c.index.ell << ',' << format_number(c.omega) << ',' << format_number(c.occupation)
            << ',' << format_number(c.a.a1) << ',' << format_number(c.a.a2) << ',' << format_number(c.a.a3) << ','
            << format_number(c.a.a4) << ',' << format_number(c.term) << ',' << format_number(c.quench.ratio) << '\n';
    }
    return out.str();
}

std::string modes_to_csv(const Setup& s, const Evaluation* e) {
    std::ostringstream out;
    out << "# omega in units of omega_b; alphas in units of omega_b\n";
    out << "j,l,m,omega,occupation";
    if (e) out << ",alpha_x,alpha_y,alpha_z,residual_ratio";
    out << '\n';
    for (std::size_t i = 0; i < s.basis.size(); ++i) {
        const auto& m = s.basis[i];
        out << m.index.j << ',' << m.index.ell << ',' << m.index.m << ',' << format_number(m.omega) << ','
            << format_number(m.occupation);
        if (e) {
            const auto& r = e->couplings.records[i];
            out << ',' << format_number(r.alpha_x) << ',' << format_number(r.alpha_y) << ','
                << format_number(r.alpha_z) << ',' << format_number(r.residual_ratio);
        }
        out << '\n';
    }
    return out.str();
}

std::string modes_to_json(const Setup& s, const Evaluation* e) {
    json j;
    j["basis"] = describe_basis(s.model.basis);
    j["frequency_unit"] = "omega_b";
    j["omega_b"] = number(s.model.units.omega_b());
    json modes = json::array();
    for (std::size_t i = 0; i < s.basis.size(); ++i) {
        const auto& m = s.basis[i];
        json row{{"j", m.index.j}, {"l", m.index.ell}, {"m", m.index.m}, {"omega", number(m.omega)},
                 {"occupation", number(m.occupation)}};
        if (e) {
            const auto& r = e->couplings.records[i];
            row["alpha_x"] = number(r.alpha_x);
            row["alpha_y"] = number(r.alpha_y);
            row["alpha_z"] = number(r.alpha_z);
            row["residual_ratio"] = number(r.residual_ratio);
        }
        modes.push_back(std::move(row));
    }
    j["modes"] = std::move(modes);
    return j.dump(2) + "\n";
}

std::string optimize_to_json(const OptimizeResult& r) {
    json j;
    j["g_ab_over_g_b"] = number(r.g_ab_over_g_b);
    j["P"] = number(r.fidelity);
    j["g"] = number(r.g);
    j["unimodal"] = r.unimodal;
    auto pairs = [](const std::vector<std::pair<double, double>>& v) {
        json a = json::array();
        for (const auto& [x, p] : v) a.push_back(json{{"g_ab_over_g_b", number(x)}, {"P", number(p)}});
        return a;
    };
    j["prescan"] = pairs(r.prescan);
    j["iterates"] = pairs(r.iterates);
    j["warnings"] = r.warnings;
    return j.dump(2) + "\n";
}

std::string optimize_to_csv(const OptimizeResult& r) {
    std::ostringstream out;
    out << "# optimum g_ab_over_g_b = " << format_number(r.g_ab_over_g_b) << '\n';
    out << "# optimum P = " << format_number(r.fidelity) << '\n';
    out << "# unimodal = " << r.unimodal << '\n';
    out << "stage,g_ab_over_g_b,P\n";
    for (const auto& [x, p] : r.prescan) out << "prescan," << format_number(x) << ',' << format_number(p) << '\n';
    for (const auto& [x, p] : r.iterates) out << "golden," << format_number(x) << ',' << format_number(p) << '\n';
    return out.str();
}

std::string oracle_to_json(const OracleReport& rep, const OracleConfig& cfg) {
    json j;
    json modes = json::array();
    for (const auto& m : cfg.modes) {
        modes.push_back(json{{"omega", number(m.omega)}, {"alpha_x", number(m.alpha_x)}, {"alpha_y", number(m.alpha_y)},
                             {"alpha_z", number(m.alpha_z)}, {"occupation", number(m.occupation)}});
    }
    j["modes"] = std::move(modes);
    j["n_max"] = cfg.n_max;
    j["Omega_eff"] = number(cfg.omega_eff);
    j["theta"] = number(cfg.theta);
    json rows = json::array();
    for (const auto& r : rep.rows) {
        rows.push_back(json{{"lambda", number(r.lambda)},
                            {"P_exact", number(r.exact_p)},
                            {"P_perturbative", number(r.perturbative_p)},
                            {"g", number(r.g)},
                            {"discrepancy", number(r.discrepancy)},
                            {"relative", number(r.relative)},
                            {"trace", number(r.trace)}});
    }
    j["rows"] = std::move(rows);
    j["fitted_order"] = number(rep.fitted_order);
    j["max_trace_error"] = number(rep.max_trace_error);
    j["converged"] = rep.converged;
    j["notes"] = rep.notes;
    return j.dump(2) + "\n";
}

std::string oracle_to_csv(const OracleReport& rep) {
    std::ostringstream out;
    out << "# fitted_order = " << format_number(rep.fitted_order) << '\n';
    out << "# converged = " << rep.converged << '\n';
    out << "lambda,P_exact,P_perturbative,g,discrepancy,relative,trace\n";
    for (const auto& r : rep.rows) {
        out << format_number(r.lambda) << ',' << format_number(r.exact_p) << ',' << format_number(r.perturbative_p)
            << ',' << format_number(r.g) << ',' << format_number(r.discrepancy) << ',' << format_number(r.relative)
            << ',' << format_number(r.trace) << '\n';
    }
    return out.str();
}

std::string basis_convergence_to_json(const std::vector<BasisConvergenceRow>& rows) {
    json a = json::array();
    for (const auto& r : rows) {
        a.push_back(json{{"j_max", r.j_max}, {"g", number(r.g)}, {"increment", number(r.increment)},
                         {"relative", number(r.relative)}, {"converged", r.converged}});
    }
    return json{{"rows", a}}.dump(2) + "\n";
}

std::string basis_convergence_to_csv(const std::vector<BasisConvergenceRow>& rows) {
    std::ostringstream out;
    out << "j_max,g,increment,relative,converged\n";
    for (const auto& r : rows) {
        out << r.j_max << ',' << format_number(r.g) << ',' << format_number(r.increment) << ','
            << format_number(r.relative) << ',' << r.converged << '\n';
    }
    return out.str();
}

} // namespace qtweezer
