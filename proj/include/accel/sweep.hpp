// Parameter sweeps, collision checks and inverse design over the analytic model.
#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "accel/device_model.hpp"

namespace accel {

enum class SweepParameter {
    AccelerationG,
    BeamLength,
    BeamWidth,
    FingerCount,
    FingerLength,
    ProofMassLength,
    Gap,
};

std::string_view to_string(SweepParameter p);
/// Throws InvalidArgument for names outside the closed set.
SweepParameter parse_sweep_parameter(std::string_view name);

struct SweepSpec {
    SweepParameter parameter = SweepParameter::AccelerationG;
    double lo = 0.0;
    double hi = 0.0;
    int n_points = 2;
    /// Acceleration (in g) at which each geometry row's displacement is taken.
    double reference_g = 1.0;
    double safety_factor = 1.0;
    /// Scale displacement by (1 + overshoot) of the underdamped step.
    bool dynamic = false;

    void validate() const;
};

struct SweepRow {
    double param_value = 0.0;  // SI, or g for AccelerationG
    DerivedParams params;
    double displacement = 0.0;  // m
    bool collision = false;
};

struct SweepResult {
    SweepParameter parameter = SweepParameter::AccelerationG;
    std::vector<SweepRow> rows;
};

struct ConstraintReport {
    double rated_g = 0.0;
    double displacement = 0.0;    // m, at rated_g
    double gap = 0.0;             // m
    double safety_factor = 1.0;
    bool pass = false;
    double margin = 0.0;          // m, safety_factor * gap - displacement
    double max_safe_g = 0.0;
    bool dynamic = false;
};

enum class FreeBeamParameter { BeamLength, BeamWidth };

struct TargetFrequencySolution {
    DeviceGeometry geometry;
    double param_value = 0.0;  // m
    double achieved_f_n = 0.0; // Hz
    int iterations = 0;
};

/// Peak step excursion relative to the static value: 1 + exp(-pi zeta / sqrt(1 - zeta^2))
/// for zeta < 1, else 1.
double dynamic_excursion_factor(double zeta);

/// Displacement vs applied acceleration (in g) at fixed device parameters.
SweepResult sweep_acceleration(const ModelInputs& inputs, double g_lo, double g_hi, int n_points,
                               double safety_factor = 1.0, bool dynamic = false);

/// Re-derives the full parameter set at each grid point. Overrides that
/// depend on the swept parameter are dropped for the sweep.
SweepResult sweep_parameter(const ModelInputs& inputs, const SweepSpec& spec);

/// Bisects the free beam dimension until |f_n - target| / target < 1e-9,
/// holding the mass fixed and using the beam-stiffness formula.
TargetFrequencySolution solve_for_target_frequency(const ModelInputs& inputs, double target_f_n,
                                                   FreeBeamParameter free_param, double lo,
                                                   double hi);

ConstraintReport constraint_check(const ModelInputs& inputs, double rated_g,
                                  double safety_factor = 1.0, bool dynamic = false);

}  // namespace accel
