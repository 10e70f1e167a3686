#include "accel/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "accel/errors.hpp"
#include "accel/units.hpp"

namespace accel {

double SecondOrderModel::f_n() const { return omega_n / (2.0 * std::numbers::pi); }

double SecondOrderModel::omega_d() const {
    if (zeta < 0.0 || zeta >= 1.0) return 0.0;
    return omega_n * std::sqrt(1.0 - zeta * zeta);
}

void SecondOrderModel::validate() const {
    if (!(omega_n > 0.0) || !std::isfinite(omega_n)) {
        throw InvalidArgument("omega_n must be positive and finite");
    }
    if (!(zeta >= 0.0) || !std::isfinite(zeta)) {
        throw InvalidArgument("zeta must be non-negative and finite");
    }
    if (!(dc_gain > 0.0) || !std::isfinite(dc_gain)) {
        throw InvalidArgument("dc_gain must be positive and finite");
    }
}

SecondOrderModel SecondOrderModel::from_params(const DerivedParams& params) {
    SecondOrderModel model{params.omega_n, params.zeta, params.sensitivity};
    model.validate();
    return model;
}

// ---------------------------------------------------------------------------
// Waveforms

Waveform Waveform::step(double amplitude) {
    if (!std::isfinite(amplitude)) throw NonFiniteValue("step amplitude must be finite");
    Waveform w;
    w.kind_ = Kind::Step;
    w.amplitude_ = amplitude;
    return w;
}

Waveform Waveform::sine(double amplitude, double frequency_hz) {
    if (!std::isfinite(amplitude)) throw NonFiniteValue("sine amplitude must be finite");
    if (!(frequency_hz > 0.0) || !std::isfinite(frequency_hz)) {
        throw InvalidArgument("sine frequency must be positive");
    }
    Waveform w;
    w.kind_ = Kind::Sine;
    w.amplitude_ = amplitude;
    w.f_start_ = frequency_hz;
    w.f_end_ = frequency_hz;
    return w;
}

Waveform Waveform::chirp(double amplitude, double f_start_hz, double f_end_hz,
                         double sweep_duration) {
    if (!std::isfinite(amplitude)) throw NonFiniteValue("chirp amplitude must be finite");
    if (!(f_start_hz > 0.0) || !(f_end_hz > 0.0) || !std::isfinite(f_start_hz) ||
        !std::isfinite(f_end_hz)) {
        throw InvalidArgument("chirp frequencies must be positive");
    }
    if (!(sweep_duration > 0.0) || !std::isfinite(sweep_duration)) {
        throw InvalidArgument("chirp sweep duration must be positive");
    }
    Waveform w;
    w.kind_ = Kind::Chirp;
    w.amplitude_ = amplitude;
    w.f_start_ = f_start_hz;
    w.f_end_ = f_end_hz;
    w.sweep_duration_ = sweep_duration;
    return w;
}

Waveform Waveform::samples(std::vector<std::pair<double, double>> table) {
    if (table.empty()) throw InvalidArgument("sample table is empty");
    Waveform w;
    w.kind_ = Kind::Samples;
    w.times_.reserve(table.size());
    w.values_.reserve(table.size());
    for (std::size_t i = 0; i < table.size(); ++i) {
        const auto [t, a] = table[i];
        if (!std::isfinite(t) || !std::isfinite(a)) {
            throw NonFiniteValue("sample " + std::to_string(i) + " is not finite");
        }
        if (i > 0 && !(t > w.times_.back())) {
            throw InvalidArgument("sample times must be strictly increasing (index " +
                                  std::to_string(i) + ")");
        }
        w.times_.push_back(t);
        w.values_.push_back(a);
        w.amplitude_ = std::max(w.amplitude_, std::abs(a));
    }
    return w;
}

double Waveform::operator()(double t) const {
    switch (kind_) {
        case Kind::Step:
            return t >= 0.0 ? amplitude_ : 0.0;
        case Kind::Sine:
            return t >= 0.0 ? amplitude_ * std::sin(2.0 * std::numbers::pi * f_start_ * t) : 0.0;
        case Kind::Chirp: {
            if (t < 0.0) return 0.0;
            const double rate = (f_end_ - f_start_) / sweep_duration_;
            double phase;
            if (t <= sweep_duration_) {
                phase = f_start_ * t + 0.5 * rate * t * t;
            } else {
                phase = f_start_ * sweep_duration_ + 0.5 * rate * sweep_duration_ * sweep_duration_ +
                        f_end_ * (t - sweep_duration_);
            }
            return amplitude_ * std::sin(2.0 * std::numbers::pi * phase);
        }
        case Kind::Samples: {
            if (t <= times_.front()) return values_.front();
            if (t >= times_.back()) return values_.back();
            const auto it = std::upper_bound(times_.begin(), times_.end(), t);
            const auto hi = static_cast<std::size_t>(it - times_.begin());
            const std::size_t lo = hi - 1;
            const double frac = (t - times_[lo]) / (times_[hi] - times_[lo]);
            return values_[lo] + frac * (values_[hi] - values_[lo]);
        }
    }
    return 0.0;
}

std::string_view to_string(Waveform::Kind kind) {
    switch (kind) {
        case Waveform::Kind::Step: return "step";
        case Waveform::Kind::Sine: return "sine";
        case Waveform::Kind::Chirp: return "chirp";
        case Waveform::Kind::Samples: return "samples";
    }
    return "unknown";
}

Waveform make_waveform(std::string_view kind, const std::vector<double>& params) {
    auto expect = [&](std::size_t n) {
        if (params.size() != n) {
            throw InvalidArgument(std::string(kind) + " waveform takes " + std::to_string(n) +
                                  " parameters, got " + std::to_string(params.size()));
        }
    };
    if (kind == "step") {
        expect(1);
        return Waveform::step(params[0]);
    }
    if (kind == "sine") {
        expect(2);
        return Waveform::sine(params[0], params[1]);
    }
    if (kind == "chirp") {
        expect(4);
        return Waveform::chirp(params[0], params[1], params[2], params[3]);
    }
    throw InvalidArgument("unknown waveform kind '" + std::string(kind) + "'");
}

// ---------------------------------------------------------------------------
// Solvers

double closed_form_step(const SecondOrderModel& model, double acceleration, double t) {
    model.validate();
    if (!(model.zeta > 0.0 && model.zeta < 1.0)) {
        throw NotUnderdamped("closed-form step needs 0 < zeta < 1, got " +
                             format_short(model.zeta));
    }
    if (t < 0.0) throw InvalidArgument("closed-form step needs t >= 0");
    const double root = std::sqrt(1.0 - model.zeta * model.zeta);
    const double wd = model.omega_n * root;
    const double decay = std::exp(-model.zeta * model.omega_n * t);
    return acceleration * model.dc_gain *
           (1.0 - decay * (std::cos(wd * t) + (model.zeta / root) * std::sin(wd * t)));
}

Trajectory integrate(const SecondOrderModel& model, const Waveform& input, double dt,
                     double duration) {
    model.validate();
    if (!(dt > 0.0) || !std::isfinite(dt)) throw InvalidArgument("dt must be positive");
    if (!(duration > 0.0) || !std::isfinite(duration)) {
        throw InvalidArgument("duration must be positive");
    }
    const double dt_max = 1.0 / (50.0 * model.f_n());
    if (dt > dt_max) {
        throw StepTooLarge("dt = " + format_short(dt) + " s exceeds 1/(50 f_n) = " +
                           format_short(dt_max) + " s");
    }

    const double wn2 = model.omega_n * model.omega_n;
    const double two_zeta_wn = 2.0 * model.zeta * model.omega_n;
    const double input_gain = model.dc_gain * wn2;
    auto accel = [&](double t, double x, double v) {
        return input_gain * input(t) - two_zeta_wn * v - wn2 * x;
    };

    const auto steps = static_cast<std::size_t>(std::llround(duration / dt));
    Trajectory traj;
    traj.dt = dt;
    traj.model = model;
    traj.input = input.kind();
    traj.times.resize(steps + 1);
    traj.displacement.resize(steps + 1);
    traj.velocity.resize(steps + 1);

    double x = 0.0;
    double v = 0.0;
    traj.times[0] = 0.0;
    for (std::size_t i = 0; i < steps; ++i) {
        const double t = static_cast<double>(i) * dt;
        const double k1x = v;
        const double k1v = accel(t, x, v);
        const double k2x = v + 0.5 * dt * k1v;
        const double k2v = accel(t + 0.5 * dt, x + 0.5 * dt * k1x, k2x);
        const double k3x = v + 0.5 * dt * k2v;
        const double k3v = accel(t + 0.5 * dt, x + 0.5 * dt * k2x, k3x);
        const double k4x = v + dt * k3v;
        const double k4v = accel(t + dt, x + dt * k3x, k4x);
        x += dt / 6.0 * (k1x + 2.0 * k2x + 2.0 * k3x + k4x);
        v += dt / 6.0 * (k1v + 2.0 * k2v + 2.0 * k3v + k4v);
        if (!std::isfinite(x) || !std::isfinite(v)) {
            throw NonFiniteValue("integration diverged at t = " + format_short(t + dt));
        }
        traj.times[i + 1] = static_cast<double>(i + 1) * dt;
        traj.displacement[i + 1] = x;
        traj.velocity[i + 1] = v;
    }
    return traj;
}

namespace {

// First time the normalized response y reaches level, linearly interpolated.
std::optional<double> first_crossing(const std::vector<double>& times,
                                     const std::vector<double>& y, double level) {
    for (std::size_t i = 0; i < y.size(); ++i) {
        if (y[i] >= level) {
            if (i == 0) return times[0];
            const double frac = (level - y[i - 1]) / (y[i] - y[i - 1]);
            return times[i - 1] + frac * (times[i] - times[i - 1]);
        }
    }
    return std::nullopt;
}

}  // namespace

StepMetrics step_metrics(const Trajectory& traj, double final_value,
                         const StepMetricOptions& options) {
    if (traj.size() < 2) throw InvalidArgument("trajectory needs at least two samples");
    if (final_value == 0.0 || !std::isfinite(final_value)) {
        throw InvalidArgument("final value must be nonzero and finite");
    }
    if (!(options.settling_band > 0.0 && options.settling_band < 1.0)) {
        throw InvalidArgument("settling band must lie in (0, 1)");
    }

    std::vector<double> y(traj.size());
    for (std::size_t i = 0; i < y.size(); ++i) y[i] = traj.displacement[i] / final_value;

    StepMetrics m;
    m.final_value = final_value;

    if (options.rise == RiseDefinition::FirstCrossing) {
        m.rise_time = first_crossing(traj.times, y, 1.0);
    } else {
        const auto t10 = first_crossing(traj.times, y, 0.1);
        const auto t90 = first_crossing(traj.times, y, 0.9);
        if (t10 && t90) m.rise_time = *t90 - *t10;
    }

    const auto peak = std::max_element(y.begin(), y.end());
    const auto peak_index = static_cast<std::size_t>(peak - y.begin());
    m.peak_time = traj.times[peak_index];
    m.percent_overshoot = std::max(0.0, (*peak - 1.0) * 100.0);

    const double band = options.settling_band;
    std::size_t last_out = y.size();
    for (std::size_t i = y.size(); i-- > 0;) {
        if (std::abs(y[i] - 1.0) > band) {
            last_out = i;
            break;
        }
    }
    if (last_out == y.size()) {
        m.settling_time = traj.times[0];
    } else if (last_out + 1 == y.size()) {
        throw NeverSettles("response is still outside the " + format_short(band * 100.0) +
                           " % band at t = " + format_short(traj.times.back()) + " s");
    } else {
        const double level = y[last_out] > 1.0 ? 1.0 + band : 1.0 - band;
        const double y0 = y[last_out];
        const double y1 = y[last_out + 1];
        const double frac = (level - y0) / (y1 - y0);
        m.settling_time = traj.times[last_out] + frac * (traj.times[last_out + 1] - traj.times[last_out]);
    }
    return m;
}

}  // namespace accel
