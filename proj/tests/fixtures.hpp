#pragma once

#include <cmath>
#include <random>
#include <string>

#include "accel/device_model.hpp"
#include "accel/dynamics.hpp"

namespace accel::test {

inline constexpr double um = 1e-6;

/// Layout that reproduces the published analytical values (l_f = 250 um).
inline DeviceGeometry reference_geometry() {
    DeviceGeometry g;
    g.n_proof_masses = 2;
    g.proof_mass_length = 225 * um;
    g.proof_mass_width = 1000 * um;
    g.proof_mass_thickness = 25 * um;
    g.n_movable_fingers = 66;
    g.n_fixed_fingers = 68;
    g.finger_length = 250 * um;
    g.finger_breadth = 10 * um;
    g.finger_gap = 5 * um;
    g.device_thickness = 25 * um;
    g.beam_length = 250 * um;
    g.beam_width = 10 * um;
    return g;
}

inline DeviceGeometry published_layout() {
    auto g = reference_geometry();
    g.finger_length = 245 * um;
    return g;
}

inline MaterialProps silicon() {
    MaterialProps m;
    m.youngs_modulus = 170e9;
    m.density = 2300.0;
    m.permittivity = 8.854e-12;
    m.effective_viscosity = 18.5e-6;
    return m;
}

inline ModelInputs reference_inputs() {
    ModelInputs in;
    in.geometry = reference_geometry();
    in.material = silicon();
    in.overrides.stiffness = 10.0;
    in.g_value = 10.0;
    return in;
}

inline SecondOrderModel reference_model() {
    return SecondOrderModel::from_params(derive_all(reference_inputs()));
}

inline double rel_err(double actual, double expected) {
    return std::abs(actual - expected) / std::abs(expected);
}

inline std::string config_path(const char* name) { return std::string(ACCEL_CONFIG_DIR) + "/" + name; }

/// Fixed-seed generator so property tests are reproducible.
inline std::mt19937_64& rng() {
    static std::mt19937_64 gen(0x5eedULL);
    return gen;
}

inline double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng()); }

inline double log_uniform(double lo, double hi) {
    return std::exp(uniform(std::log(lo), std::log(hi)));
}

}  // namespace accel::test
