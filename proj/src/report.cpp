#include "accel/report.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

#include "accel/errors.hpp"
#include "accel/freq_response.hpp"
#include "accel/sweep.hpp"
#include "accel/units.hpp"

namespace accel {

namespace {

using Kind = ConfigError::Kind;

// Lazily computes the model, the simulated step and the Bode sweep so that a
// report touching only analytic rows never runs the integrator.
class QuantitySource {
public:
    explicit QuantitySource(const Config& config) : config_(config), params_(derive_all(config.model)) {}

    const DerivedParams& params() const { return params_; }

    double value(std::string_view name) {
        const auto& p = params_;
        if (name == "c0_f") return p.static_capacitance;
        if (name == "mass_kg") return p.mass;
        if (name == "stiffness_n_per_m") return p.stiffness;
        if (name == "stiffness_formula_n_per_m") return p.formula_stiffness;
        if (name == "f_n_hz") return p.f_n;
        if (name == "omega_n_rad_s") return p.omega_n;
        if (name == "zeta") return p.zeta;
        if (name == "s_d") return p.sensitivity;
        if (name == "damping_ns_per_m") return p.damping;
        if (name == "displacement_1g_m") return static_displacement(p.sensitivity, config_.model.g_value);
        if (name == "rise_time_analytic_s") return analytic_step_metrics(p.omega_n, p.zeta).rise_time;
        if (name == "settling_time_analytic_s") {
            return analytic_step_metrics(p.omega_n, p.zeta).settling_time;
        }
        if (name == "rise_time_sim_s") {
            const auto& m = simulated();
            if (!m.rise_time) throw Error("simulated step never reaches its final value");
            return *m.rise_time;
        }
        if (name == "settling_time_sim_s") return simulated().settling_time;
        if (name == "overshoot_pct_sim") return simulated().percent_overshoot;
        if (name == "peak_frequency_hz") return resonance().peak_frequency;
        if (name == "quality_factor") return resonance().quality_factor;
        if (name == "max_safe_g") {
            return max_safe_acceleration(p.sensitivity, config_.model.geometry.finger_gap, 1.0) /
                   config_.model.g_value;
        }
        throw InvalidArgument("unknown quantity '" + std::string(name) + "'");
    }

private:
    const StepMetrics& simulated() {
        if (!step_) {
            const auto model = SecondOrderModel::from_params(params_);
            const double a = config_.model.g_value;
            const auto traj = integrate(model, Waveform::step(a), config_.simulation.dt,
                                        config_.simulation.duration);
            StepMetricOptions opts;
            opts.settling_band = config_.simulation.settling_band;
            opts.rise = config_.simulation.rise;
            step_ = step_metrics(traj, a * model.dc_gain, opts);
        }
        return *step_;
    }

    const ResonanceMetrics& resonance() {
        if (!resonance_) {
            const auto& f = config_.frequency;
            const auto resp = bode(SecondOrderModel::from_params(params_), f.f_min, f.f_max,
                                   static_cast<std::size_t>(f.points), f.spacing);
            resonance_ = resonance_metrics(resp);
        }
        return *resonance_;
    }

    const Config& config_;
    DerivedParams params_;
    std::optional<StepMetrics> step_;
    std::optional<ResonanceMetrics> resonance_;
};

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

std::string_view next_token(std::string_view& rest) {
    rest = trim(rest);
    std::size_t end = 0;
    while (end < rest.size() && !std::isspace(static_cast<unsigned char>(rest[end]))) ++end;
    const auto token = rest.substr(0, end);
    rest.remove_prefix(end);
    return token;
}

double to_number(std::string_view token, int line, std::string_view what) {
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
    if (ec != std::errc() || ptr != token.data() + token.size() || !std::isfinite(value)) {
        throw ConfigError(Kind::NonNumeric, line,
                          std::string(what) + " '" + std::string(token) + "' is not a number");
    }
    return value;
}

std::string describe_si(double value, std::string_view unit) {
    return format_double(value) + " " + std::string(unit);
}

}  // namespace

bool Report::pass() const {
    for (const auto& row : rows) {
        if (!row.pass) return false;
    }
    return true;
}

const std::vector<std::string_view>& report_quantities() {
    static const std::vector<std::string_view> names = {
        "c0_f",
        "mass_kg",
        "stiffness_n_per_m",
        "stiffness_formula_n_per_m",
        "f_n_hz",
        "omega_n_rad_s",
        "zeta",
        "s_d",
        "damping_ns_per_m",
        "displacement_1g_m",
        "rise_time_analytic_s",
        "settling_time_analytic_s",
        "rise_time_sim_s",
        "settling_time_sim_s",
        "overshoot_pct_sim",
        "peak_frequency_hz",
        "quality_factor",
        "max_safe_g",
    };
    return names;
}

std::vector<ReportTarget> parse_targets(std::string_view text) {
    std::vector<ReportTarget> targets;
    const auto& known = report_quantities();
    int line_no = 0;
    std::size_t pos = 0;
    while (pos < text.size()) {
        const std::size_t eol = text.find('\n', pos);
        std::string_view line =
            text.substr(pos, eol == std::string_view::npos ? text.size() - pos : eol - pos);
        pos = eol == std::string_view::npos ? text.size() : eol + 1;
        ++line_no;

        if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;

        std::string_view rest = line;
        ReportTarget t;
        t.line = line_no;
        t.quantity = std::string(next_token(rest));
        const auto value_tok = next_token(rest);
        const auto tol_tok = next_token(rest);
        if (value_tok.empty() || tol_tok.empty()) {
            throw ConfigError(Kind::Syntax, line_no, "expected '<quantity> <value> <tolerance|-> [note]'");
        }
        if (std::find(known.begin(), known.end(), t.quantity) == known.end()) {
            throw ConfigError(Kind::UnknownKey, line_no, "unknown quantity '" + t.quantity + "'");
        }
        t.reference = to_number(value_tok, line_no, "reference value");
        if (tol_tok != "-") {
            t.tolerance = to_number(tol_tok, line_no, "tolerance");
            if (!(*t.tolerance >= 0.0)) {
                throw ConfigError(Kind::InvariantViolation, line_no, "tolerance must be >= 0");
            }
        }
        t.note = std::string(trim(rest));
        targets.push_back(std::move(t));
    }
    return targets;
}

std::vector<ReportTarget> load_targets(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError(Kind::Io, 0, "cannot open targets file '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    try {
        return parse_targets(buf.str());
    } catch (const ConfigError& e) {
        throw ConfigError(e.kind(), e.line(), path + ": " + e.what());
    }
}

Report reference_report(const Config& config, const std::vector<ReportTarget>& targets) {
    QuantitySource source(config);
    const auto& p = source.params();

    Report report;
    if (p.overridden.mass) {
        report.annotations.push_back("mass override " + describe_si(p.mass, "kg") +
                                     " replaces formula value " + describe_si(p.formula_mass, "kg"));
    }
    if (p.overridden.stiffness) {
        report.annotations.push_back(
            "DISCREPANCY: stiffness override " + describe_si(p.stiffness, "N/m") +
            " replaces beam formula value " + describe_si(p.formula_stiffness, "N/m") + " (ratio " +
            format_double(p.formula_stiffness / p.stiffness) + ")");
    }
    if (p.overridden.sensitivity) {
        report.annotations.push_back("sensitivity override " + describe_si(p.sensitivity, "m/(m/s^2)") +
                                     " implies stiffness " + describe_si(p.stiffness, "N/m") +
                                     "; beam formula gives " + describe_si(p.formula_stiffness, "N/m"));
    }
    if (config.model.g_value != kStandardGravity) {
        report.annotations.push_back("g_value = " + describe_si(config.model.g_value, "m/s^2") +
                                     " (standard gravity is 9.80665 m/s^2)");
    }

    for (const auto& target : targets) {
        ReportRow row;
        row.quantity = target.quantity;
        row.reference = target.reference;
        row.tolerance = target.tolerance;
        row.note = target.note;
        row.computed = source.value(target.quantity);
        row.relative_error = target.reference != 0.0
                                 ? (row.computed - target.reference) / std::abs(target.reference)
                                 : row.computed;
        row.pass = !row.tolerance || std::abs(row.relative_error) <= *row.tolerance;
        if (target.quantity == "stiffness_n_per_m" && p.overridden.stiffness) {
            if (!row.note.empty()) row.note += "; ";
            row.note += "overridden, beam formula gives " + describe_si(p.formula_stiffness, "N/m");
        }
        report.rows.push_back(std::move(row));
    }
    return report;
}

}  // namespace accel
