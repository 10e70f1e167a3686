#include "accel/sweep.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "accel/bisect.hpp"
#include "accel/errors.hpp"
#include "accel/units.hpp"

namespace accel {

namespace {

struct ParameterInfo {
    SweepParameter parameter;
    std::string_view name;
};

constexpr ParameterInfo kParameters[] = {
    {SweepParameter::AccelerationG, "acceleration_g"},
    {SweepParameter::BeamLength, "beam_length"},
    {SweepParameter::BeamWidth, "beam_width"},
    {SweepParameter::FingerCount, "finger_count"},
    {SweepParameter::FingerLength, "finger_length"},
    {SweepParameter::ProofMassLength, "proof_mass_length"},
    {SweepParameter::Gap, "gap"},
};

std::vector<double> linear_grid(double lo, double hi, int n) {
    std::vector<double> grid(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        grid[static_cast<std::size_t>(i)] =
            i + 1 == n ? hi : lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1);
    }
    return grid;
}

ModelOverrides overrides_for(SweepParameter p, ModelOverrides o) {
    switch (p) {
        case SweepParameter::BeamLength:
        case SweepParameter::BeamWidth:
            o.stiffness.reset();
            o.sensitivity.reset();
            break;
        case SweepParameter::FingerCount:
        case SweepParameter::FingerLength:
        case SweepParameter::ProofMassLength:
            o.mass.reset();
            o.sensitivity.reset();
            break;
        case SweepParameter::AccelerationG:
        case SweepParameter::Gap:
            break;
    }
    return o;
}

void apply(SweepParameter p, double value, DeviceGeometry& geom) {
    switch (p) {
        case SweepParameter::BeamLength: geom.beam_length = value; break;
        case SweepParameter::BeamWidth: geom.beam_width = value; break;
        case SweepParameter::FingerCount:
            geom.n_movable_fingers = static_cast<int>(std::lround(value));
            break;
        case SweepParameter::FingerLength: geom.finger_length = value; break;
        case SweepParameter::ProofMassLength: geom.proof_mass_length = value; break;
        case SweepParameter::Gap: geom.finger_gap = value; break;
        case SweepParameter::AccelerationG: break;
    }
}

}  // namespace

std::string_view to_string(SweepParameter p) {
    for (const auto& info : kParameters) {
        if (info.parameter == p) return info.name;
    }
    return "unknown";
}

SweepParameter parse_sweep_parameter(std::string_view name) {
    for (const auto& info : kParameters) {
        if (info.name == name) return info.parameter;
    }
    std::string valid;
    for (const auto& info : kParameters) {
        if (!valid.empty()) valid += ", ";
        valid += info.name;
    }
    throw InvalidArgument("unknown sweep parameter '" + std::string(name) + "' (expected one of " +
                          valid + ")");
}

void SweepSpec::validate() const {
    if (!std::isfinite(lo) || !std::isfinite(hi) || !(lo < hi)) {
        throw InvalidArgument("sweep range must satisfy lo < hi");
    }
    if (n_points < 2) throw InvalidArgument("sweep needs at least 2 points");
    if (parameter == SweepParameter::AccelerationG && lo < 0.0) {
        throw InvalidArgument("acceleration sweep needs lo >= 0");
    }
    if (!(reference_g >= 0.0)) throw InvalidArgument("reference acceleration must be >= 0");
    if (!(safety_factor > 0.0 && safety_factor <= 1.0)) {
        throw InvalidArgument("safety_factor must lie in (0, 1]");
    }
}

double dynamic_excursion_factor(double zeta) {
    if (!(zeta < 1.0)) return 1.0;
    if (zeta <= 0.0) return 2.0;
    return 1.0 + std::exp(-std::numbers::pi * zeta / std::sqrt(1.0 - zeta * zeta));
}

SweepResult sweep_acceleration(const ModelInputs& inputs, double g_lo, double g_hi, int n_points,
                               double safety_factor, bool dynamic) {
    SweepSpec spec;
    spec.parameter = SweepParameter::AccelerationG;
    spec.lo = g_lo;
    spec.hi = g_hi;
    spec.n_points = n_points;
    spec.safety_factor = safety_factor;
    spec.dynamic = dynamic;
    return sweep_parameter(inputs, spec);
}

SweepResult sweep_parameter(const ModelInputs& inputs, const SweepSpec& spec) {
    spec.validate();
    if (!(inputs.g_value > 0.0)) throw InvalidArgument("g_value must be positive");

    SweepResult result;
    result.parameter = spec.parameter;
    const ModelOverrides overrides = overrides_for(spec.parameter, inputs.overrides);

    // Acceleration rows share one parameter set.
    std::optional<DerivedParams> fixed;
    if (spec.parameter == SweepParameter::AccelerationG) {
        inputs.geometry.validate();
        fixed = derive_all(inputs.geometry, inputs.material, overrides);
    }

    const auto grid = linear_grid(spec.lo, spec.hi, spec.n_points);
    result.rows.reserve(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) {
        SweepRow row;
        double applied_g = spec.reference_g;
        DeviceGeometry geom = inputs.geometry;
        if (spec.parameter == SweepParameter::AccelerationG) {
            row.param_value = grid[i];
            applied_g = grid[i];
            row.params = *fixed;
        } else {
            apply(spec.parameter, grid[i], geom);
            row.param_value = spec.parameter == SweepParameter::FingerCount
                                  ? static_cast<double>(geom.n_movable_fingers)
                                  : grid[i];
            try {
                geom.validate();
                row.params = derive_all(geom, inputs.material, overrides);
            } catch (const Error& e) {
                throw InvalidArgument("sweep point " + std::to_string(i) + " (" +
                                      std::string(to_string(spec.parameter)) + " = " +
                                      format_short(row.param_value) + "): " + e.what());
            }
        }
        row.displacement =
            static_displacement(row.params.sensitivity, applied_g * inputs.g_value);
        if (spec.dynamic) row.displacement *= dynamic_excursion_factor(row.params.zeta);
        row.collision = row.displacement >= spec.safety_factor * geom.finger_gap;
        result.rows.push_back(row);
    }
    return result;
}

TargetFrequencySolution solve_for_target_frequency(const ModelInputs& inputs, double target_f_n,
                                                   FreeBeamParameter free_param, double lo,
                                                   double hi) {
    if (!(target_f_n > 0.0) || !std::isfinite(target_f_n)) {
        throw InvalidArgument("target frequency must be positive");
    }
    if (!(lo > 0.0 && lo < hi) || !std::isfinite(hi)) {
        throw InvalidArgument("bounds must satisfy 0 < lo < hi");
    }

    ModelOverrides mass_only;
    mass_only.mass = inputs.overrides.mass;
    const double mass = derive_all(inputs.geometry, inputs.material, mass_only).mass;

    DeviceGeometry geom = inputs.geometry;
    auto set = [&](double value) {
        if (free_param == FreeBeamParameter::BeamLength) {
            geom.beam_length = value;
        } else {
            geom.beam_width = value;
        }
    };
    auto f_n_at = [&](double value) {
        set(value);
        return natural_frequency(mass, spring_constant(geom, inputs.material)).f_n;
    };
    auto residual = [&](double value) { return f_n_at(value) - target_f_n; };

    const double r_lo = residual(lo);
    const double r_hi = residual(hi);
    if (std::signbit(r_lo) == std::signbit(r_hi) && r_lo != 0.0 && r_hi != 0.0) {
        throw NotBracketed("target f_n = " + format_short(target_f_n) +
                           " Hz lies outside [" + format_short(r_lo + target_f_n) + ", " +
                           format_short(r_hi + target_f_n) + "] Hz reachable within bounds");
    }

    const auto result = bisect(
        residual, lo, hi,
        [&](double, double r) { return std::abs(r) / target_f_n < 1e-9; }, 200);
    if (!result.converged) {
        throw NotBracketed("bisection did not reach 1e-9 relative tolerance in 200 iterations");
    }

    TargetFrequencySolution out;
    out.param_value = result.root;
    set(result.root);
    out.geometry = geom;
    out.achieved_f_n = f_n_at(result.root);
    out.iterations = result.iterations;
    return out;
}

ConstraintReport constraint_check(const ModelInputs& inputs, double rated_g, double safety_factor,
                                  bool dynamic) {
    if (!(rated_g >= 0.0) || !std::isfinite(rated_g)) {
        throw InvalidArgument("rated acceleration must be >= 0");
    }
    if (!(inputs.g_value > 0.0)) throw InvalidArgument("g_value must be positive");
    const DerivedParams params = derive_all(inputs);
    const double factor = dynamic ? dynamic_excursion_factor(params.zeta) : 1.0;
    const double effective_sensitivity = params.sensitivity * factor;

    ConstraintReport r;
    r.rated_g = rated_g;
    r.gap = inputs.geometry.finger_gap;
    r.safety_factor = safety_factor;
    r.dynamic = dynamic;
    r.max_safe_g =
        max_safe_acceleration(effective_sensitivity, r.gap, safety_factor) / inputs.g_value;
    r.displacement = static_displacement(effective_sensitivity, rated_g * inputs.g_value);
    r.margin = safety_factor * r.gap - r.displacement;
    r.pass = r.displacement < safety_factor * r.gap;
    return r;
}

}  // namespace accel
