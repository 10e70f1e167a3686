// Time-domain simulation of x'' + 2 zeta omega_n x' + omega_n^2 x = dc_gain omega_n^2 a(t).
#pragma once

#include <optional>
#include <string_view>
#include <utility>
#include <vector>

#include "accel/device_model.hpp"

namespace accel {

/// Normal form of the displacement-per-acceleration transfer function.
/// For the accelerometer dc_gain = 1 / omega_n^2 = S_d.
struct SecondOrderModel {
    double omega_n = 0.0;  // rad/s
    double zeta = 0.0;
    double dc_gain = 0.0;  // m per m/s^2

    double f_n() const;
    /// Damped natural frequency; zero unless 0 <= zeta < 1.
    double omega_d() const;
    void validate() const;

    static SecondOrderModel from_params(const DerivedParams& params);
};

/// Input acceleration a(t) in m/s^2. Zero for t < 0.
class Waveform {
public:
    enum class Kind { Step, Sine, Chirp, Samples };

    static Waveform step(double amplitude);
    static Waveform sine(double amplitude, double frequency_hz);
    /// Linear chirp from f_start to f_end over sweep_duration seconds, then
    /// holds f_end.
    static Waveform chirp(double amplitude, double f_start_hz, double f_end_hz,
                          double sweep_duration);
    /// Piecewise-linear table; held constant outside the sampled span.
    static Waveform samples(std::vector<std::pair<double, double>> table);

    Kind kind() const { return kind_; }
    double amplitude() const { return amplitude_; }
    double operator()(double t) const;

private:
    Waveform() = default;

    Kind kind_ = Kind::Step;
    double amplitude_ = 0.0;
    double f_start_ = 0.0;
    double f_end_ = 0.0;
    double sweep_duration_ = 0.0;
    std::vector<double> times_;
    std::vector<double> values_;
};

std::string_view to_string(Waveform::Kind kind);

/// Generic factory used by the CLI: kind is one of step, sine, chirp.
/// params holds {amplitude}, {amplitude, f}, or {amplitude, f0, f1, T}.
Waveform make_waveform(std::string_view kind, const std::vector<double>& params);

struct Trajectory {
    double dt = 0.0;
    std::vector<double> times;
    std::vector<double> displacement;
    std::vector<double> velocity;
    SecondOrderModel model;
    Waveform::Kind input = Waveform::Kind::Step;

    std::size_t size() const { return times.size(); }
};

enum class RiseDefinition {
    FirstCrossing,  // 0 -> 100 %
    TenToNinety,
};

struct StepMetricOptions {
    double settling_band = 0.02;
    RiseDefinition rise = RiseDefinition::FirstCrossing;
};

struct StepMetrics {
    /// Unset when the response never reaches the rise threshold.
    std::optional<double> rise_time;
    double settling_time = 0.0;
    double percent_overshoot = 0.0;
    double peak_time = 0.0;
    double final_value = 0.0;
};

/// Underdamped step response from rest to a constant acceleration.
double closed_form_step(const SecondOrderModel& model, double acceleration, double t);

/// Fixed-step RK4 from rest. Rejects dt > 1/(50 f_n).
Trajectory integrate(const SecondOrderModel& model, const Waveform& input, double dt,
                     double duration);

/// Measures rise/settling/overshoot against final_value. Crossing times are
/// linearly interpolated between samples.
StepMetrics step_metrics(const Trajectory& traj, double final_value,
                         const StepMetricOptions& options = {});

}  // namespace accel
