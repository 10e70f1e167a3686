#include "accel/device_model.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "accel/errors.hpp"
#include "accel/units.hpp"

namespace accel {

namespace {

void require_positive(double value, const char* name) {
    if (!(value > 0.0) || !std::isfinite(value)) {
        throw InvalidArgument(std::string(name) + " must be positive and finite, got " +
                              format_short(value));
    }
}

void require_non_negative(double value, const char* name) {
    if (!(value >= 0.0) || !std::isfinite(value)) {
        throw InvalidArgument(std::string(name) + " must be non-negative and finite, got " +
                              format_short(value));
    }
}

}  // namespace

void DeviceGeometry::validate() const {
    if (n_proof_masses < 1) throw InvalidArgument("n_proof_masses must be >= 1");
    require_positive(proof_mass_length, "proof_mass_length");
    require_positive(proof_mass_width, "proof_mass_width");
    require_positive(proof_mass_thickness, "proof_mass_thickness");
    if (n_movable_fingers < 1) throw InvalidArgument("n_movable_fingers must be >= 1");
    if (n_fixed_fingers < 0) throw InvalidArgument("n_fixed_fingers must be >= 0");
    require_positive(finger_length, "finger_length");
    require_positive(finger_breadth, "finger_breadth");
    require_positive(finger_gap, "finger_gap");
    require_positive(overlap(), "initial_overlap");
    if (overlap() > finger_length) {
        throw InvalidArgument("initial_overlap must not exceed finger_length");
    }
    require_positive(device_thickness, "device_thickness");
    require_positive(beam_length, "beam_length");
    require_positive(beam_width, "beam_width");
    require_non_negative(pad_length, "pad_length");
    require_non_negative(pad_width, "pad_width");
    require_non_negative(pad_thickness, "pad_thickness");
}

void MaterialProps::validate() const {
    require_positive(youngs_modulus, "youngs_modulus");
    require_positive(density, "density");
    require_positive(permittivity, "permittivity");
    require_positive(effective_viscosity, "effective_viscosity");
}

void ModelOverrides::validate() const {
    if (stiffness) require_positive(*stiffness, "stiffness_override");
    if (sensitivity) require_positive(*sensitivity, "sensitivity_override");
    if (mass) require_positive(*mass, "mass_override");
    if (stiffness && sensitivity) {
        throw InvalidArgument("stiffness and sensitivity overrides are mutually exclusive");
    }
}

double total_mass(const DeviceGeometry& geom, const MaterialProps& mat) {
    const double proof_volume =
        geom.proof_mass_length * geom.proof_mass_width * geom.proof_mass_thickness;
    const double finger_volume = geom.finger_length * geom.finger_breadth * geom.device_thickness;
    return mat.density * (geom.n_proof_masses * proof_volume + geom.n_movable_fingers * finger_volume);
}

double spring_constant(const DeviceGeometry& geom, const MaterialProps& mat) {
    require_positive(geom.beam_length, "beam_length");
    require_positive(geom.beam_width, "beam_width");
    require_positive(geom.device_thickness, "device_thickness");
    require_positive(mat.youngs_modulus, "youngs_modulus");
    const double w = geom.beam_width;
    const double l = geom.beam_length;
    return mat.youngs_modulus * geom.device_thickness * w * w * w / (4.0 * l * l * l);
}

double static_capacitance(const DeviceGeometry& geom, const MaterialProps& mat) {
    require_positive(geom.finger_gap, "finger_gap");
    return mat.permittivity * geom.n_movable_fingers * geom.finger_length * geom.device_thickness /
           geom.finger_gap;
}

CapacitancePair differential_capacitance(const DeviceGeometry& geom, const MaterialProps& mat,
                                         double displacement) {
    require_positive(geom.finger_gap, "finger_gap");
    const double x1 = geom.overlap();
    if (!(std::abs(displacement) <= x1)) {
        throw DisplacementExceedsOverlap("displacement " + format_short(displacement) +
                                         " m exceeds initial overlap " + format_short(x1) + " m");
    }
    const double per_length =
        mat.permittivity * geom.n_movable_fingers * geom.device_thickness / geom.finger_gap;
    return {per_length * (x1 + displacement), per_length * (x1 - displacement)};
}

double damping_coefficient(const DeviceGeometry& geom, const MaterialProps& mat) {
    require_positive(geom.finger_gap, "finger_gap");
    const double ratio = geom.device_thickness / geom.finger_gap;
    return geom.n_movable_fingers * mat.effective_viscosity * geom.finger_length * ratio * ratio *
           ratio;
}

NaturalFrequency natural_frequency(double mass, double stiffness) {
    require_positive(mass, "mass");
    require_positive(stiffness, "stiffness");
    const double omega_n = std::sqrt(stiffness / mass);
    return {omega_n, omega_n / (2.0 * std::numbers::pi)};
}

double damping_ratio(double damping, double mass, double omega_n) {
    require_positive(mass, "mass");
    require_positive(omega_n, "omega_n");
    require_non_negative(damping, "damping");
    return damping / (2.0 * mass * omega_n);
}

double displacement_sensitivity(double mass, double stiffness) {
    require_positive(stiffness, "stiffness");
    require_non_negative(mass, "mass");
    return mass / stiffness;
}

AnalyticStepMetrics analytic_step_metrics(double omega_n, double zeta) {
    require_positive(omega_n, "omega_n");
    if (!(zeta > 0.0 && zeta < 1.0)) {
        throw NotUnderdamped("analytic step metrics need 0 < zeta < 1, got " + format_short(zeta));
    }
    const double root = std::sqrt(1.0 - zeta * zeta);
    const double rise = (std::numbers::pi - std::atan(root / zeta)) / (omega_n * root);
    return {rise, 4.0 / (zeta * omega_n)};
}

double max_safe_acceleration(double sensitivity, double gap, double safety_factor) {
    require_positive(sensitivity, "sensitivity");
    require_non_negative(gap, "gap");
    if (!(safety_factor > 0.0 && safety_factor <= 1.0)) {
        throw InvalidArgument("safety_factor must lie in (0, 1]");
    }
    return safety_factor * gap / sensitivity;
}

DerivedParams derive_all(const DeviceGeometry& geom, const MaterialProps& mat,
                         const ModelOverrides& overrides) {
    overrides.validate();

    DerivedParams out;
    out.formula_mass = total_mass(geom, mat);
    out.formula_stiffness = spring_constant(geom, mat);

    out.mass = overrides.mass.value_or(out.formula_mass);
    out.overridden.mass = overrides.mass.has_value();

    if (overrides.sensitivity) {
        out.stiffness = out.mass / *overrides.sensitivity;
        out.overridden.sensitivity = true;
    } else {
        out.stiffness = overrides.stiffness.value_or(out.formula_stiffness);
        out.overridden.stiffness = overrides.stiffness.has_value();
    }

    out.static_capacitance = static_capacitance(geom, mat);
    out.damping = damping_coefficient(geom, mat);

    const auto freq = natural_frequency(out.mass, out.stiffness);
    out.omega_n = freq.omega_n;
    out.f_n = freq.f_n;
    out.zeta = damping_ratio(out.damping, out.mass, out.omega_n);
    out.sensitivity = overrides.sensitivity.value_or(displacement_sensitivity(out.mass, out.stiffness));
    return out;
}

}  // namespace accel
