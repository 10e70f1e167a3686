#include "accel/units.hpp"

#include <cctype>
#include <charconv>
#include <cstdio>

#include "accel/errors.hpp"

namespace accel {

namespace {

struct UnitEntry {
    Dimension dimension;
    std::string_view name;
    double scale;
};

// First entry per dimension is the canonical SI spelling.
constexpr UnitEntry kUnits[] = {
    {Dimension::Length, "m", 1.0},
    {Dimension::Length, "mm", 1e-3},
    {Dimension::Length, "um", 1e-6},
    {Dimension::Length, "\xC2\xB5m", 1e-6},  // µm
    {Dimension::Density, "kg_per_m3", 1.0},
    {Dimension::Pressure, "Pa", 1.0},
    {Dimension::Pressure, "MPa", 1e6},
    {Dimension::Pressure, "GPa", 1e9},
    {Dimension::Viscosity, "Pa_s", 1.0},
    {Dimension::Permittivity, "F_per_m", 1.0},
    {Dimension::Capacitance, "F", 1.0},
    {Dimension::Capacitance, "pF", 1e-12},
    {Dimension::Stiffness, "N_per_m", 1.0},
    {Dimension::Mass, "kg", 1.0},
    {Dimension::Sensitivity, "m_per_ms2", 1.0},
    {Dimension::Acceleration, "m_per_s2", 1.0},
    {Dimension::Time, "s", 1.0},
    {Dimension::Time, "ms", 1e-3},
    {Dimension::Time, "us", 1e-6},
    {Dimension::Frequency, "Hz", 1.0},
    {Dimension::Frequency, "kHz", 1e3},
};

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

}  // namespace

std::string_view to_string(Dimension d) {
    switch (d) {
        case Dimension::Dimensionless: return "dimensionless";
        case Dimension::Length: return "length";
        case Dimension::Density: return "density";
        case Dimension::Pressure: return "pressure";
        case Dimension::Viscosity: return "viscosity";
        case Dimension::Permittivity: return "permittivity";
        case Dimension::Capacitance: return "capacitance";
        case Dimension::Stiffness: return "stiffness";
        case Dimension::Mass: return "mass";
        case Dimension::Sensitivity: return "sensitivity";
        case Dimension::Acceleration: return "acceleration";
        case Dimension::Time: return "time";
        case Dimension::Frequency: return "frequency";
    }
    return "unknown";
}

std::optional<double> unit_scale(Dimension d, std::string_view unit) {
    for (const auto& u : kUnits) {
        if (u.dimension == d && u.name == unit) return u.scale;
    }
    return std::nullopt;
}

std::string_view si_unit(Dimension d) {
    for (const auto& u : kUnits) {
        if (u.dimension == d) return u.name;
    }
    return "";
}

double parse_quantity(std::string_view text, Dimension d) {
    text = trim(text);
    double value = 0.0;
    const char* first = text.data();
    const char* last = text.data() + text.size();
    if (!text.empty() && *first == '+') ++first;
    const auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc() || ptr == first) {
        throw InvalidArgument("'" + std::string(text) + "' is not a number");
    }
    const std::string_view unit = trim(std::string_view(ptr, static_cast<std::size_t>(last - ptr)));
    if (unit.empty()) return value;
    const auto scale = unit_scale(d, unit);
    if (!scale) {
        throw InvalidArgument("unit '" + std::string(unit) + "' is not a " +
                              std::string(to_string(d)) + " unit");
    }
    return value * *scale;
}

std::string format_double(double value) {
    char buf[32];
    const int n = std::snprintf(buf, sizeof buf, "%.17g", value);
    return std::string(buf, static_cast<std::size_t>(n));
}

std::string format_short(double value) {
    char buf[32];
    const int n = std::snprintf(buf, sizeof buf, "%.6g", value);
    return std::string(buf, static_cast<std::size_t>(n));
}

}  // namespace accel
