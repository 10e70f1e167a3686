// Unit suffixes accepted in config files and on the command line.
#pragma once

#include <optional>
#include <string>
#include <string_view>

namespace accel {

enum class Dimension {
    Dimensionless,
    Length,
    Density,
    Pressure,
    Viscosity,
    Permittivity,
    Capacitance,
    Stiffness,
    Mass,
    Sensitivity,
    Acceleration,
    Time,
    Frequency,
};

std::string_view to_string(Dimension d);

/// Scale factor to SI for unit within dimension d, or nullopt when the unit
/// does not belong to d.
std::optional<double> unit_scale(Dimension d, std::string_view unit);

/// Canonical SI unit name written by the serializer ("m", "Pa", ...).
std::string_view si_unit(Dimension d);

/// Parses "12.5", "12.5um" or "12.5 um" into SI. A bare number is taken as
/// SI already. Throws InvalidArgument on malformed text or a foreign unit.
double parse_quantity(std::string_view text, Dimension d);

/// Full-precision decimal text ("%.17g").
std::string format_double(double value);

/// Short text for messages ("%.6g").
std::string format_short(double value);

}  // namespace accel
