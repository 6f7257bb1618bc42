#include "qtweezer/config.hpp"

#include "qtweezer/errors.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>

namespace qtweezer {

namespace {

std::string trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return std::string(s);
}

bool valid_key(std::string_view key) {
    if (key.empty()) return false;
    return std::all_of(key.begin(), key.end(), [](char c) {
        return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
    });
}

const std::set<std::string, std::less<>>& special_keys() {
    static const std::set<std::string, std::less<>> keys{"species", "j_min", "j_max", "ell"};
    return keys;
}

std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

class Interpreter {
public:
    explicit Interpreter(const RawConfig& raw) : raw_(raw) {
        for (const auto& [key, entry] : raw.entries()) {
            if (!config_schema().count(key) && !special_keys().count(key)) {
                throw ConfigError(key, "unknown key" + where(entry));
            }
        }
    }

    std::optional<double> quantity(const std::string& key) const {
        auto it = raw_.entries().find(key);
        if (it == raw_.entries().end()) return std::nullopt;
        Dimension d = config_schema().find(key)->second;
        double v = 0.0;
        try {
            v = parse_quantity(it->second.value, d);
        } catch (const std::invalid_argument& e) {
            throw ConfigError(key, std::string(e.what()) + where(it->second));
        }
        if (!std::isfinite(v)) throw ConfigError(key, "value is not finite" + where(it->second));
        return v;
    }

    std::optional<int> integer(const std::string& key) const {
        auto it = raw_.entries().find(key);
        if (it == raw_.entries().end()) return std::nullopt;
        return parse_int(key, it->second.value, it->second);
    }

    std::optional<std::string> text(const std::string& key) const {
        auto it = raw_.entries().find(key);
        if (it == raw_.entries().end()) return std::nullopt;
        return trim(it->second.value);
    }

    std::optional<std::vector<int>> int_list(const std::string& key) const {
        auto it = raw_.entries().find(key);
        if (it == raw_.entries().end()) return std::nullopt;
        std::vector<int> out;
        std::stringstream ss(it->second.value);
        std::string item;
        while (std::getline(ss, item, ',')) out.push_back(parse_int(key, item, it->second));
        if (out.empty()) throw ConfigError(key, "empty list" + where(it->second));
        return out;
    }

    template <typename T>
    void exclusive(const std::string& a, const std::optional<T>& va, const std::string& b,
                   const std::optional<T>& vb, bool required) const {
        if (va && vb) {
            throw ConfigError(a + "/" + b, "exactly one of '" + a + "' and '" + b + "' must be given, not both");
        }
        if (required && !va && !vb) {
            throw ConfigError(a + "/" + b, "exactly one of '" + a + "' and '" + b + "' is required");
        }
    }

private:
    static std::string where(const RawConfig::Entry& e) {
        return e.line > 0 ? " (line " + std::to_string(e.line) + ")" : " (override)";
    }

    static int parse_int(const std::string& key, const std::string& s, const RawConfig::Entry& e) {
        std::string t = trim(s);
        try {
            std::size_t pos = 0;
            long v = std::stol(t, &pos);
            if (pos != t.size()) throw std::invalid_argument("trailing characters");
            return static_cast<int>(v);
        } catch (const std::exception&) {
            throw ConfigError(key, "expected an integer, got '" + t + "'" + where(e));
        }
    }

    const RawConfig& raw_;
};

} // namespace

void RawConfig::set(const std::string& key, std::string value, int line) {
    entries_[key] = Entry{std::move(value), line};
}

const std::map<std::string, Dimension, std::less<>>& config_schema() {
    static const std::map<std::string, Dimension, std::less<>> schema{
        {"mass", Dimension::mass},
        {"a_b", Dimension::length},
        {"g_a_over_g_b", Dimension::dimensionless},
        {"g_a", Dimension::coupling},
        {"g_ab_over_g_b", Dimension::dimensionless},
        {"g_ab", Dimension::coupling},
        {"omega_b", Dimension::frequency},
        {"N", Dimension::dimensionless},
        {"n0", Dimension::density},
        {"T", Dimension::temperature},
        {"omega_a", Dimension::frequency},
        {"k", Dimension::wave_number},
        {"drive_wavelength", Dimension::length},
        {"Omega_0", Dimension::frequency},
        {"Omega_eff", Dimension::frequency},
        {"theta", Dimension::angle},
        {"quad_rtol", Dimension::dimensionless},
        {"g_warn", Dimension::dimensionless},
        {"regime_gap_tau_min", Dimension::dimensionless},
        {"regime_rabi_gap_max", Dimension::dimensionless},
    };
    return schema;
}

RawConfig parse_config_text(std::string_view text) {
    RawConfig raw;
    std::istringstream in{std::string(text)};
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        std::string body = trim(line);
        if (body.empty()) continue;
        auto eq = body.find('=');
        if (eq == std::string::npos) {
            throw ConfigError("", "line " + std::to_string(lineno) + ": expected 'key = value', got '" + body + "'");
        }
        std::string key = trim(std::string_view(body).substr(0, eq));
        std::string value = trim(std::string_view(body).substr(eq + 1));
        if (!valid_key(key)) {
            throw ConfigError(key, "line " + std::to_string(lineno) + ": malformed key");
        }
        if (value.empty()) {
            throw ConfigError(key, "line " + std::to_string(lineno) + ": missing value");
        }
        if (raw.contains(key)) {
            throw ConfigError(key, "line " + std::to_string(lineno) + ": duplicate key");
        }
        raw.set(key, value, lineno);
    }
    return raw;
}

void apply_overrides(RawConfig& raw, const std::vector<std::string>& overrides) {
    std::set<std::string> seen;
    for (const auto& item : overrides) {
        auto eq = item.find('=');
        if (eq == std::string::npos) {
            throw ConfigError("", "override '" + item + "' is not of the form key=value");
        }
        std::string key = trim(std::string_view(item).substr(0, eq));
        std::string value = trim(std::string_view(item).substr(eq + 1));
        if (!valid_key(key) || value.empty()) {
            throw ConfigError(key, "malformed override '" + item + "'");
        }
        if (!seen.insert(key).second) {
            throw ConfigError(key, "duplicate override key");
        }
        raw.set(key, value, 0);
    }
}

Config interpret(const RawConfig& raw) {
    Interpreter in(raw);
    Config c;

    if (auto species = in.text("species")) {
        if (*species != "Rb87" && *species != "87Rb") {
            throw ConfigError("species", "unknown species '" + *species + "' (only Rb87 has built-in defaults; "
                                         "give mass and a_b explicitly instead)");
        }
    }
    if (auto v = in.quantity("mass")) c.species.mass = *v;
    if (auto v = in.quantity("a_b")) c.species.scattering_length = *v;

    auto g_a_ratio = in.quantity("g_a_over_g_b");
    auto g_a_abs = in.quantity("g_a");
    in.exclusive("g_a", g_a_abs, "g_a_over_g_b", g_a_ratio, false);
    auto g_ab_ratio = in.quantity("g_ab_over_g_b");
    auto g_ab_abs = in.quantity("g_ab");
    in.exclusive("g_ab", g_ab_abs, "g_ab_over_g_b", g_ab_ratio, false);

    if (c.species.mass <= 0.0) throw ConfigError("mass", "must be positive");
    if (c.species.scattering_length <= 0.0) throw ConfigError("a_b", "must be positive");
    const double g_b = c.species.g_b();
    if (g_a_ratio) c.species.g_a_over_g_b = *g_a_ratio;
    if (g_a_abs) c.species.g_a_over_g_b = *g_a_abs / g_b;
    if (g_ab_ratio) c.species.g_ab_over_g_b = *g_ab_ratio;
    if (g_ab_abs) c.species.g_ab_over_g_b = *g_ab_abs / g_b;

    auto omega_b = in.quantity("omega_b");
    if (!omega_b) throw ConfigError("omega_b", "required key missing");
    c.condensate.omega_b = *omega_b;
    c.condensate.atom_number = in.quantity("N");
    c.condensate.central_density = in.quantity("n0");
    in.exclusive("N", c.condensate.atom_number, "n0", c.condensate.central_density, true);
    if (auto v = in.quantity("T")) c.condensate.temperature = *v;

    auto omega_a = in.quantity("omega_a");
    if (!omega_a) throw ConfigError("omega_a", "required key missing");
    c.tweezer.omega_a = *omega_a;
    auto k = in.quantity("k");
    auto wavelength = in.quantity("drive_wavelength");
    in.exclusive("k", k, "drive_wavelength", wavelength, false);
    if (k) c.tweezer.wave_number = *k;
    if (wavelength) {
        if (*wavelength <= 0.0) throw ConfigError("drive_wavelength", "must be positive");
        c.tweezer.wave_number = 2.0 * constants::pi / *wavelength;
    }

    c.drive.omega_0 = in.quantity("Omega_0");
    c.drive.omega_eff = in.quantity("Omega_eff");
    in.exclusive("Omega_0", c.drive.omega_0, "Omega_eff", c.drive.omega_eff, true);
    if (auto v = in.quantity("theta")) c.drive.theta = *v;

    if (auto v = in.integer("j_min")) c.basis.j_min = *v;
    if (auto v = in.integer("j_max")) c.basis.j_max = *v;
    if (auto v = in.int_list("ell")) c.basis.ells = *v;

    if (auto v = in.quantity("quad_rtol")) c.numerics.quad_rtol = *v;
    if (auto v = in.quantity("g_warn")) c.numerics.g_warn = *v;
    if (auto v = in.quantity("regime_gap_tau_min")) c.numerics.gap_tau_min = *v;
    if (auto v = in.quantity("regime_rabi_gap_max")) c.numerics.rabi_gap_max = *v;

    validate(c);
    return c;
}

Config load_config(std::string_view text) {
    return interpret(parse_config_text(text));
}

Config load_config_file(const std::string& path, const std::vector<std::string>& overrides) {
    std::ifstream in(path);
    if (!in) throw ConfigError("config", "cannot open '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    RawConfig raw = parse_config_text(ss.str());
    apply_overrides(raw, overrides);
    return interpret(raw);
}

std::vector<std::string> validate(const Config& c) {
    std::vector<std::string> warnings;
    auto finite_positive = [](double v) { return std::isfinite(v) && v > 0.0; };

    if (!finite_positive(c.species.mass)) throw ConfigError("mass", "must be positive");
    if (!finite_positive(c.species.scattering_length)) throw ConfigError("a_b", "must be positive");
    if (!finite_positive(c.species.g_a_over_g_b)) throw ConfigError("g_a", "must be positive");
    if (!std::isfinite(c.species.g_ab_over_g_b) || c.species.g_ab_over_g_b < 0.0) {
        throw ConfigError("g_ab", "must be non-negative");
    }

    if (!finite_positive(c.condensate.omega_b)) throw ConfigError("omega_b", "must be positive");
    if (c.condensate.atom_number && c.condensate.central_density) {
        throw ConfigError("N/n0", "exactly one of 'N' and 'n0' must be given, not both");
    }
    if (!c.condensate.atom_number && !c.condensate.central_density) {
        throw ConfigError("N/n0", "exactly one of 'N' and 'n0' is required");
    }
    if (c.condensate.atom_number && !finite_positive(*c.condensate.atom_number)) {
        throw ConfigError("N", "must be positive");
    }
    if (c.condensate.central_density && !finite_positive(*c.condensate.central_density)) {
        throw ConfigError("n0", "must be positive");
    }
    if (!std::isfinite(c.condensate.temperature) || c.condensate.temperature < 0.0) {
        throw ConfigError("T", "must be non-negative");
    }

    if (!finite_positive(c.tweezer.omega_a)) throw ConfigError("omega_a", "must be positive");
    if (!std::isfinite(c.tweezer.wave_number) || c.tweezer.wave_number < 0.0) {
        throw ConfigError("k", "must be non-negative");
    }
    if (c.tweezer.omega_a / c.condensate.omega_b < 100.0) {
        warnings.push_back("omega_a: tweezer frequency is less than 100 omega_b; the tweezer is not tight "
                           "compared with the condensate");
    }

    if (c.drive.omega_0 && c.drive.omega_eff) {
        throw ConfigError("Omega_0/Omega_eff", "exactly one of 'Omega_0' and 'Omega_eff' must be given, not both");
    }
    if (!c.drive.omega_0 && !c.drive.omega_eff) {
        throw ConfigError("Omega_0/Omega_eff", "exactly one of 'Omega_0' and 'Omega_eff' is required");
    }
    if (c.drive.omega_0 && !finite_positive(*c.drive.omega_0)) throw ConfigError("Omega_0", "must be positive");
    if (c.drive.omega_eff && !finite_positive(*c.drive.omega_eff)) throw ConfigError("Omega_eff", "must be positive");
    if (!std::isfinite(c.drive.theta) || c.drive.theta <= 0.0 || c.drive.theta > constants::pi * (1.0 + 1e-15)) {
        throw ConfigError("theta", "must lie in (0, pi]");
    }

    if (c.basis.j_max < 1) throw ConfigError("j_max", "must be at least 1");
    if (c.basis.j_min < 0 || c.basis.j_min > c.basis.j_max) {
        throw ConfigError("j_min", "must lie in [0, j_max]");
    }
    if (c.basis.ells.empty()) throw ConfigError("ell", "must list at least one angular momentum");
    std::set<int> seen;
    for (int l : c.basis.ells) {
        if (l < 0 || l % 2 != 0) throw ConfigError("ell", "angular momenta must be even and non-negative, got " +
                                                              std::to_string(l));
        if (!seen.insert(l).second) throw ConfigError("ell", "duplicate angular momentum " + std::to_string(l));
    }

    auto unit_interval = [](double v) { return std::isfinite(v) && v > 0.0 && v < 1.0; };
    if (!unit_interval(c.numerics.quad_rtol)) throw ConfigError("quad_rtol", "must lie in (0, 1)");
    if (!unit_interval(c.numerics.g_warn)) throw ConfigError("g_warn", "must lie in (0, 1)");
    if (!finite_positive(c.numerics.gap_tau_min)) throw ConfigError("regime_gap_tau_min", "must be positive");
    if (!finite_positive(c.numerics.rabi_gap_max)) throw ConfigError("regime_rabi_gap_max", "must be positive");
    return warnings;
}

std::string to_text(const Config& c) {
    std::ostringstream out;
    auto line = [&](const char* key, double v, std::string_view unit) {
        out << key << " = " << format_double(v);
        if (!unit.empty()) out << ' ' << unit;
        out << '\n';
    };
    line("mass", c.species.mass, "kg");
    line("a_b", c.species.scattering_length, "m");
    line("g_a_over_g_b", c.species.g_a_over_g_b, "");
    line("g_ab_over_g_b", c.species.g_ab_over_g_b, "");
    line("omega_b", c.condensate.omega_b, "rad/s");
    if (c.condensate.atom_number) line("N", *c.condensate.atom_number, "");
    if (c.condensate.central_density) line("n0", *c.condensate.central_density, "m^-3");
    line("T", c.condensate.temperature, "K");
    line("omega_a", c.tweezer.omega_a, "rad/s");
    line("k", c.tweezer.wave_number, "rad/m");
    if (c.drive.omega_0) line("Omega_0", *c.drive.omega_0, "rad/s");
    if (c.drive.omega_eff) line("Omega_eff", *c.drive.omega_eff, "rad/s");
    line("theta", c.drive.theta, "rad");
    out << "j_min = " << c.basis.j_min << '\n';
    out << "j_max = " << c.basis.j_max << '\n';
    out << "ell = ";
    for (std::size_t i = 0; i < c.basis.ells.size(); ++i) out << (i ? "," : "") << c.basis.ells[i];
    out << '\n';
    line("quad_rtol", c.numerics.quad_rtol, "");
    line("g_warn", c.numerics.g_warn, "");
    line("regime_gap_tau_min", c.numerics.gap_tau_min, "");
    line("regime_rabi_gap_max", c.numerics.rabi_gap_max, "");
    return out.str();
}

InternalModel to_internal(const Config& c) {
    InternalModel m;
    m.units = UnitSystem(c.species.mass, c.condensate.omega_b);
    const auto& u = m.units;
    m.scattering_length = u.length_to_internal(c.species.scattering_length);
    m.g_b = u.coupling_to_internal(c.species.g_b());
    m.g_a = m.g_b * c.species.g_a_over_g_b;
    m.g_ab = m.g_b * c.species.g_ab_over_g_b;
    m.atom_number = c.condensate.atom_number;
    if (c.condensate.central_density) m.central_density = u.density_to_internal(*c.condensate.central_density);
    m.thermal_energy = u.temperature_to_internal(c.condensate.temperature);
    m.omega_a = u.frequency_to_internal(c.tweezer.omega_a);
    m.wave_number = u.wave_number_to_internal(c.tweezer.wave_number);
    if (c.drive.omega_0) m.omega_0 = u.frequency_to_internal(*c.drive.omega_0);
    if (c.drive.omega_eff) m.omega_eff = u.frequency_to_internal(*c.drive.omega_eff);
    m.theta = c.drive.theta;
    m.basis = c.basis;
    m.numerics = c.numerics;
    return m;
}

Config from_internal(const InternalModel& m) {
    Config c;
    const auto& u = m.units;
    c.species.mass = u.mass();
    c.species.scattering_length = u.length_from_internal(m.scattering_length);
    c.species.g_a_over_g_b = m.g_a / m.g_b;
    c.species.g_ab_over_g_b = m.g_ab / m.g_b;
    c.condensate.omega_b = u.omega_b();
    c.condensate.atom_number = m.atom_number;
    if (m.central_density) c.condensate.central_density = u.density_from_internal(*m.central_density);
    c.condensate.temperature = u.temperature_from_internal(m.thermal_energy);
    c.tweezer.omega_a = u.frequency_from_internal(m.omega_a);
    c.tweezer.wave_number = u.wave_number_from_internal(m.wave_number);
    if (m.omega_0) c.drive.omega_0 = u.frequency_from_internal(*m.omega_0);
    if (m.omega_eff) c.drive.omega_eff = u.frequency_from_internal(*m.omega_eff);
    c.drive.theta = m.theta;
    c.basis = m.basis;
    c.numerics = m.numerics;
    return c;
}

} // namespace qtweezer
