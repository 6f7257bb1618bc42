#include "qtweezer/units.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <charconv>
#include <cmath>
#include <stdexcept>
#include <string>
#include <utility>

namespace qtweezer {

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

double parse_factor(std::string_view tok) {
    tok = trim(tok);
    if (tok.empty()) throw std::invalid_argument("empty numeric term");
    if (tok == "pi") return constants::pi;
    // Allow "2pi" as shorthand for "2*pi".
    if (tok.size() > 2 && tok.substr(tok.size() - 2) == "pi") {
        return parse_factor(tok.substr(0, tok.size() - 2)) * constants::pi;
    }
    double v = 0.0;
    const char* first = tok.data();
    const char* last = tok.data() + tok.size();
    if (*first == '+') ++first;
    auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec != std::errc{} || ptr != last) {
        throw std::invalid_argument("not a number: '" + std::string(tok) + "'");
    }
    return v;
}

struct UnitEntry {
    std::string_view name;
    double factor;
};

constexpr double two_pi = 2.0 * constants::pi;

constexpr std::array frequency_units{
    UnitEntry{"rad/s", 1.0},
    UnitEntry{"Hz_x2pi", two_pi},
    UnitEntry{"kHz_x2pi", two_pi * 1e3},
    UnitEntry{"MHz_x2pi", two_pi * 1e6},
};
constexpr std::array temperature_units{
    UnitEntry{"K", 1.0},
    UnitEntry{"mK", 1e-3},
    UnitEntry{"uK", 1e-6},
    UnitEntry{"nK", 1e-9},
};
constexpr std::array length_units{
    UnitEntry{"m", 1.0},
    UnitEntry{"um", 1e-6},
    UnitEntry{"nm", 1e-9},
    UnitEntry{"a0", constants::bohr_radius},
};
constexpr std::array mass_units{
    UnitEntry{"kg", 1.0},
    UnitEntry{"amu", constants::atomic_mass_unit},
};
constexpr std::array density_units{
    UnitEntry{"m^-3", 1.0},
    UnitEntry{"cm^-3", 1e6},
};
constexpr std::array wave_number_units{
    UnitEntry{"rad/m", 1.0},
    UnitEntry{"rad/um", 1e6},
};
constexpr std::array coupling_units{
    UnitEntry{"J*m^3", 1.0},
    UnitEntry{"J_m3", 1.0},
};
constexpr std::array angle_units{
    UnitEntry{"rad", 1.0},
    UnitEntry{"deg", constants::pi / 180.0},
};

template <std::size_t N>
const UnitEntry* find_unit(const std::array<UnitEntry, N>& table, std::string_view unit) {
    auto it = std::find_if(table.begin(), table.end(), [&](const UnitEntry& e) { return e.name == unit; });
    return it == table.end() ? nullptr : &*it;
}

template <std::size_t N>
std::string list_units(const std::array<UnitEntry, N>& table) {
    std::string out;
    for (const auto& e : table) {
        if (!out.empty()) out += ", ";
        out += e.name;
    }
    return out;
}

} // namespace

std::string_view to_string(Dimension d) {
    switch (d) {
    case Dimension::dimensionless: return "dimensionless";
    case Dimension::angle: return "angle";
    case Dimension::frequency: return "angular frequency";
    case Dimension::temperature: return "temperature";
    case Dimension::length: return "length";
    case Dimension::mass: return "mass";
    case Dimension::density: return "density";
    case Dimension::wave_number: return "wave number";
    case Dimension::coupling: return "coupling strength";
    }
    return "unknown";
}

std::string_view canonical_unit(Dimension d) {
    switch (d) {
    case Dimension::dimensionless: return "";
    case Dimension::angle: return "rad";
    case Dimension::frequency: return "rad/s";
    case Dimension::temperature: return "K";
    case Dimension::length: return "m";
    case Dimension::mass: return "kg";
    case Dimension::density: return "m^-3";
    case Dimension::wave_number: return "rad/m";
    case Dimension::coupling: return "J*m^3";
    }
    return "";
}

double evaluate_number(std::string_view text) {
    text = trim(text);
    if (text.empty()) throw std::invalid_argument("missing value");
    double value = 1.0;
    char op = '*';
    std::size_t start = 0;
    for (std::size_t i = 0; i <= text.size(); ++i) {
        // Exponent signs such as "1e-3" are not operators; '*' and '/' are the only binary ops.
        if (i == text.size() || text[i] == '*' || text[i] == '/') {
            double f = parse_factor(text.substr(start, i - start));
            if (op == '*') {
                value *= f;
            } else {
                if (f == 0.0) throw std::invalid_argument("division by zero in '" + std::string(text) + "'");
                value /= f;
            }
            if (i < text.size()) op = text[i];
            start = i + 1;
        }
    }
    return value;
}

double unit_factor(std::string_view unit, Dimension d) {
    auto lookup = [&](const auto& table) -> double {
        if (const auto* e = find_unit(table, unit)) return e->factor;
        throw std::invalid_argument("unrecognized unit '" + std::string(unit) + "' for " +
                                    std::string(to_string(d)) + " (expected one of: " + list_units(table) + ")");
    };
    switch (d) {
    case Dimension::dimensionless:
        if (unit.empty() || unit == "1") return 1.0;
        throw std::invalid_argument("dimensionless value must not carry a unit, got '" + std::string(unit) + "'");
    case Dimension::angle:
        if (unit.empty()) return 1.0;
        return lookup(angle_units);
    case Dimension::frequency: return lookup(frequency_units);
    case Dimension::temperature: return lookup(temperature_units);
    case Dimension::length: return lookup(length_units);
    case Dimension::mass: return lookup(mass_units);
    case Dimension::density: return lookup(density_units);
    case Dimension::wave_number: return lookup(wave_number_units);
    case Dimension::coupling: return lookup(coupling_units);
    }
    throw std::invalid_argument("unknown dimension");
}

double parse_quantity(std::string_view text, Dimension d) {
    text = trim(text);
    std::string_view number = text;
    std::string_view unit;
    if (auto pos = text.find_first_of(" \t"); pos != std::string_view::npos) {
        number = trim(text.substr(0, pos));
        unit = trim(text.substr(pos + 1));
    }
    if (unit.empty() && d != Dimension::dimensionless && d != Dimension::angle) {
        throw std::invalid_argument("missing unit for " + std::string(to_string(d)) + " value '" +
                                    std::string(text) + "'");
    }
    return evaluate_number(number) * unit_factor(unit, d);
}

UnitSystem::UnitSystem(double mass_kg, double omega_b_rad_s)
    : mass_(mass_kg)
    , omega_b_(omega_b_rad_s)
    , length_(std::sqrt(constants::hbar / (mass_kg * omega_b_rad_s))) {}

double contact_coupling(double scattering_length_m, double mass_kg) {
    return 4.0 * constants::pi * constants::hbar * constants::hbar * scattering_length_m / mass_kg;
}

} // namespace qtweezer
