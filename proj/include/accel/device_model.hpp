// Analytic model of a comb-drive capacitive accelerometer.
// Pure functions of geometry and material data; all quantities in SI units.
#pragma once

#include <optional>
#include <utility>

namespace accel {

inline constexpr double kStandardGravity = 9.80665;       // m/s^2
inline constexpr double kVacuumPermittivity = 8.854e-12;  // F/m
inline constexpr double kAirViscosity = 18.5e-6;          // Pa*s

/// Layout dimensions of a single-axis comb accelerometer, in meters.
/// Thickness is shared by proof masses, fingers and beams.
struct DeviceGeometry {
    int n_proof_masses = 2;
    double proof_mass_length = 0.0;
    double proof_mass_width = 0.0;
    double proof_mass_thickness = 0.0;

    int n_movable_fingers = 0;
    int n_fixed_fingers = 0;  // metadata only
    double finger_length = 0.0;
    double finger_breadth = 0.0;
    double finger_gap = 0.0;
    /// Rest overlap between fixed and movable fingers; full overlap when unset.
    std::optional<double> initial_overlap;

    double device_thickness = 0.0;
    double beam_length = 0.0;
    double beam_width = 0.0;

    // Pad metal footprint (metadata, unused by any formula).
    double pad_length = 0.0;
    double pad_width = 0.0;
    double pad_thickness = 0.0;

    double overlap() const { return initial_overlap.value_or(finger_length); }

    bool operator==(const DeviceGeometry&) const = default;

    /// Throws InvalidArgument naming the first violated invariant.
    void validate() const;
};

struct MaterialProps {
    double youngs_modulus = 0.0;                  // Pa
    double density = 0.0;                         // kg/m^3
    double permittivity = kVacuumPermittivity;    // F/m
    double effective_viscosity = kAirViscosity;   // Pa*s

    void validate() const;
    bool operator==(const MaterialProps&) const = default;
};

/// Audited replacements for computed quantities. A sensitivity override
/// implies stiffness K = m / S_d so that S_d * omega_n^2 = 1 still holds.
struct ModelOverrides {
    std::optional<double> stiffness;    // N/m
    std::optional<double> sensitivity;  // m per m/s^2
    std::optional<double> mass;         // kg

    bool any() const { return stiffness || sensitivity || mass; }
    void validate() const;
    bool operator==(const ModelOverrides&) const = default;
};

struct OverrideFlags {
    bool mass = false;
    bool stiffness = false;
    bool sensitivity = false;
};

struct DerivedParams {
    double mass = 0.0;                // kg
    double stiffness = 0.0;           // N/m
    double static_capacitance = 0.0;  // F
    double damping = 0.0;             // N*s/m
    double omega_n = 0.0;             // rad/s
    double f_n = 0.0;                 // Hz
    double zeta = 0.0;
    double sensitivity = 0.0;         // m per m/s^2

    /// Values the formulas produce before any override is applied.
    double formula_mass = 0.0;
    double formula_stiffness = 0.0;
    OverrideFlags overridden;
};

/// Inputs shared by every analysis: the device, its material, overrides and
/// the m/s^2-per-g conversion used when accelerations are quoted in g.
struct ModelInputs {
    DeviceGeometry geometry;
    MaterialProps material;
    ModelOverrides overrides;
    double g_value = kStandardGravity;

    bool operator==(const ModelInputs&) const = default;
};

struct NaturalFrequency {
    double omega_n;  // rad/s
    double f_n;      // Hz
};

struct CapacitancePair {
    double c1;
    double c2;

    double difference() const { return c1 - c2; }
    double sum() const { return c1 + c2; }
};

struct AnalyticStepMetrics {
    double rise_time;      // s, 0 -> 100 % first crossing
    double settling_time;  // s, 4 / (zeta omega_n)
};

/// Proof masses plus movable fingers.
double total_mass(const DeviceGeometry& geom, const MaterialProps& mat);

/// Folded-beam stiffness K = E t W^3 / (4 L^3).
double spring_constant(const DeviceGeometry& geom, const MaterialProps& mat);

/// Rest capacitance eps N_f l_f t / d0.
double static_capacitance(const DeviceGeometry& geom, const MaterialProps& mat);

/// (C1, C2) for a proof-mass displacement x; throws DisplacementExceedsOverlap
/// when |x| exceeds the initial overlap.
CapacitancePair differential_capacitance(const DeviceGeometry& geom, const MaterialProps& mat,
                                         double displacement);

/// Squeeze-film damping N_f n_eff l_f (t/d0)^3.
double damping_coefficient(const DeviceGeometry& geom, const MaterialProps& mat);

NaturalFrequency natural_frequency(double mass, double stiffness);

double damping_ratio(double damping, double mass, double omega_n);

/// S_d = m / K.
double displacement_sensitivity(double mass, double stiffness);

inline double static_displacement(double sensitivity, double acceleration) {
    return sensitivity * acceleration;
}

/// Closed-form underdamped rise and settling times.
AnalyticStepMetrics analytic_step_metrics(double omega_n, double zeta);

/// Acceleration (m/s^2) at which the static displacement reaches
/// safety_factor * d0.
double max_safe_acceleration(double sensitivity, double gap, double safety_factor);

/// Runs the whole analytic chain, applying overrides before the dependent
/// quantities are computed. Throws InvalidArgument when both a stiffness and
/// a sensitivity override are given.
DerivedParams derive_all(const DeviceGeometry& geom, const MaterialProps& mat,
                         const ModelOverrides& overrides = {});

inline DerivedParams derive_all(const ModelInputs& inputs) {
    return derive_all(inputs.geometry, inputs.material, inputs.overrides);
}

}  // namespace accel
