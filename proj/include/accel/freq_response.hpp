// Frequency response of the second-order displacement model.
#pragma once

#include <complex>
#include <vector>

#include "accel/dynamics.hpp"

namespace accel {

enum class GridSpacing { Log, Linear };

struct FrequencyResponse {
    std::vector<double> frequency_hz;
    std::vector<std::complex<double>> response;
    SecondOrderModel model;
    GridSpacing spacing = GridSpacing::Log;

    std::size_t size() const { return frequency_hz.size(); }
    double magnitude(std::size_t i) const { return std::abs(response[i]); }
    /// Degrees in (-180, 0].
    double phase_deg(std::size_t i) const;
    /// 20 log10(|H| / dc_gain).
    double magnitude_db_rel_dc(std::size_t i) const;
};

struct ResonanceMetrics {
    double peak_frequency = 0.0;  // Hz
    double peak_magnitude = 0.0;  // m per m/s^2
    double quality_factor = 0.0;  // peak / dc
    double dc_magnitude = 0.0;    // m per m/s^2
    /// Set when the largest magnitude sits on the last grid point; the peak
    /// is then the raw grid value, not a refined estimate.
    bool boundary_peak = false;
};

/// H(j omega) = dc_gain omega_n^2 / (omega_n^2 - omega^2 + j 2 zeta omega_n omega).
std::complex<double> transfer_function_eval(const SecondOrderModel& model, double omega);

/// Phase in degrees of H, in (-180, 0].
double phase_deg(std::complex<double> h);

FrequencyResponse bode(const SecondOrderModel& model, double f_min, double f_max,
                       std::size_t n_points, GridSpacing spacing = GridSpacing::Log);

/// Refines the magnitude peak by a 3-point parabola through log|H| against
/// the grid abscissa (log f for log grids). Throws FlatResponse when the
/// maximum sits on the first grid point.
ResonanceMetrics resonance_metrics(const FrequencyResponse& resp);

/// Frequency where the phase first drops through phase_deg, linearly
/// interpolated between grid points; throws InvalidArgument when the grid
/// never reaches it.
double phase_crossing_frequency(const FrequencyResponse& resp, double phase_deg);

}  // namespace accel
