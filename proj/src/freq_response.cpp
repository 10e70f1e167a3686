#include "accel/freq_response.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "accel/errors.hpp"
#include "accel/units.hpp"

namespace accel {

double phase_deg(std::complex<double> h) {
    const double deg = std::arg(h) * 180.0 / std::numbers::pi;
    // arg of a value with -0.0 imaginary part is -0.0; report +0.
    return deg == 0.0 ? 0.0 : deg;
}

double FrequencyResponse::phase_deg(std::size_t i) const { return accel::phase_deg(response[i]); }

double FrequencyResponse::magnitude_db_rel_dc(std::size_t i) const {
    return 20.0 * std::log10(magnitude(i) / model.dc_gain);
}

std::complex<double> transfer_function_eval(const SecondOrderModel& model, double omega) {
    model.validate();
    if (!(omega >= 0.0)) throw InvalidArgument("omega must be non-negative");
    const double wn2 = model.omega_n * model.omega_n;
    const std::complex<double> denom(wn2 - omega * omega, 2.0 * model.zeta * model.omega_n * omega);
    return model.dc_gain * wn2 / denom;
}

FrequencyResponse bode(const SecondOrderModel& model, double f_min, double f_max,
                       std::size_t n_points, GridSpacing spacing) {
    model.validate();
    if (!(f_min > 0.0) || !(f_max > f_min) || !std::isfinite(f_max)) {
        throw InvalidArgument("frequency range must satisfy 0 < f_min < f_max");
    }
    if (n_points < 2) throw InvalidArgument("frequency grid needs at least 2 points");

    FrequencyResponse out;
    out.model = model;
    out.spacing = spacing;
    out.frequency_hz.resize(n_points);
    out.response.resize(n_points);

    const double last = static_cast<double>(n_points - 1);
    const double log_lo = std::log10(f_min);
    const double log_hi = std::log10(f_max);
    for (std::size_t i = 0; i < n_points; ++i) {
        const double frac = static_cast<double>(i) / last;
        double f;
        if (i == 0) {
            f = f_min;
        } else if (i + 1 == n_points) {
            f = f_max;
        } else if (spacing == GridSpacing::Log) {
            f = std::pow(10.0, log_lo + frac * (log_hi - log_lo));
        } else {
            f = f_min + frac * (f_max - f_min);
        }
        out.frequency_hz[i] = f;
        out.response[i] = transfer_function_eval(model, 2.0 * std::numbers::pi * f);
    }
    return out;
}

ResonanceMetrics resonance_metrics(const FrequencyResponse& resp) {
    if (resp.size() < 3) throw InvalidArgument("resonance metrics need at least 3 grid points");

    ResonanceMetrics m;
    m.dc_magnitude = std::abs(transfer_function_eval(resp.model, 0.0));

    std::size_t best = 0;
    for (std::size_t i = 1; i < resp.size(); ++i) {
        if (resp.magnitude(i) > resp.magnitude(best)) best = i;
    }
    if (best == 0) {
        throw FlatResponse("no interior magnitude maximum (largest value at f_min = " +
                           format_short(resp.frequency_hz.front()) + " Hz)");
    }
    if (best + 1 == resp.size()) {
        m.boundary_peak = true;
        m.peak_frequency = resp.frequency_hz[best];
        m.peak_magnitude = resp.magnitude(best);
        m.quality_factor = m.peak_magnitude / m.dc_magnitude;
        return m;
    }

    auto abscissa = [&](std::size_t i) {
        return resp.spacing == GridSpacing::Log ? std::log(resp.frequency_hz[i])
                                                : resp.frequency_hz[i];
    };
    const double x0 = abscissa(best - 1);
    const double x1 = abscissa(best);
    const double x2 = abscissa(best + 1);
    const double y0 = std::log(resp.magnitude(best - 1));
    const double y1 = std::log(resp.magnitude(best));
    const double y2 = std::log(resp.magnitude(best + 1));

    // Vertex of the parabola through three (possibly unevenly spaced) points.
    const double d01 = (y1 - y0) / (x1 - x0);
    const double d12 = (y2 - y1) / (x2 - x1);
    const double curvature = (d12 - d01) / (x2 - x0);
    double x_peak = x1;
    double y_peak = y1;
    if (curvature < 0.0) {
        x_peak = 0.5 * (x0 + x1) - d01 / (2.0 * curvature);
        x_peak = std::clamp(x_peak, x0, x2);
        y_peak = y0 + d01 * (x_peak - x0) + curvature * (x_peak - x0) * (x_peak - x1);
    }

    m.peak_frequency = resp.spacing == GridSpacing::Log ? std::exp(x_peak) : x_peak;
    m.peak_magnitude = std::exp(y_peak);
    m.quality_factor = m.peak_magnitude / m.dc_magnitude;
    return m;
}

double phase_crossing_frequency(const FrequencyResponse& resp, double target_deg) {
    for (std::size_t i = 1; i < resp.size(); ++i) {
        const double p0 = resp.phase_deg(i - 1);
        const double p1 = resp.phase_deg(i);
        if (p0 >= target_deg && p1 <= target_deg && p0 != p1) {
            const double frac = (target_deg - p0) / (p1 - p0);
            if (resp.spacing == GridSpacing::Log) {
                const double l0 = std::log(resp.frequency_hz[i - 1]);
                const double l1 = std::log(resp.frequency_hz[i]);
                return std::exp(l0 + frac * (l1 - l0));
            }
            return resp.frequency_hz[i - 1] + frac * (resp.frequency_hz[i] - resp.frequency_hz[i - 1]);
        }
    }
    throw InvalidArgument("phase never crosses " + format_short(target_deg) + " deg on the grid");
}

}  // namespace accel
