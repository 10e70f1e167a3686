// Line-based configuration files:
//
//   # comment
//   geometry.finger_length = 250 um
//   material.youngs_modulus = 170 GPa
//   geometry.n_movable_fingers = 66
//
// Every dimensioned value carries a unit; counts and ratios carry none.
// Values are converted to SI on load.
#pragma once

#include <string>
#include <string_view>

#include "accel/device_model.hpp"
#include "accel/dynamics.hpp"
#include "accel/freq_response.hpp"

namespace accel {

struct SimulationDefaults {
    double dt = 1e-7;          // s
    double duration = 15e-3;   // s
    double settling_band = 0.02;
    RiseDefinition rise = RiseDefinition::FirstCrossing;

    bool operator==(const SimulationDefaults&) const = default;
};

struct FrequencyDefaults {
    double f_min = 10.0;       // Hz
    double f_max = 100e3;      // Hz
    int points = 512;
    GridSpacing spacing = GridSpacing::Log;

    bool operator==(const FrequencyDefaults&) const = default;
};

struct Config {
    ModelInputs model;
    SimulationDefaults simulation;
    FrequencyDefaults frequency;

    bool operator==(const Config&) const = default;
};

/// Throws ConfigError naming the offending line.
Config parse_config(std::string_view text);

/// Reads and parses a file; an unreadable file is a ConfigError of kind Io.
Config load_config(const std::string& path);

/// Writes every field in SI units at full precision. parse_config of the
/// result reproduces the input exactly.
std::string serialize_config(const Config& config);

/// Replaces g_value with ACCEL_SIM_G when that variable is set; throws
/// ConfigError when it is not a positive number.
void apply_environment(Config& config);

}  // namespace accel
