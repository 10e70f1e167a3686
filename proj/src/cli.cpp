#include "accel/cli.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <iomanip>
#include <ostream>
#include <sstream>

#include "accel/config.hpp"
#include "accel/csv.hpp"
#include "accel/errors.hpp"
#include "accel/report.hpp"
#include "accel/sweep.hpp"
#include "accel/units.hpp"

namespace accel {

namespace {

/// Command-line misuse that CLI11 cannot detect (bad unit, unknown name...).
class UsageError : public Error {
public:
    using Error::Error;
};

struct Common {
    std::string config_path;
    std::string out_path;
    bool quiet = false;
};

double quantity_arg(const std::string& text, Dimension d, const char* option) {
    try {
        return parse_quantity(text, d);
    } catch (const InvalidArgument& e) {
        throw UsageError(std::string(option) + ": " + e.what());
    }
}

Config load(const Common& c) {
    Config config = load_config(c.config_path);
    apply_environment(config);
    return config;
}

std::string sci(double v, int digits = 6) {
    std::ostringstream s;
    s << std::setprecision(digits) << v;
    return s.str();
}

void line(std::ostream& out, std::string_view label, const std::string& value, std::string_view unit = "",
          std::string_view note = "") {
    out << "  " << std::left << std::setw(26) << label << std::right << std::setw(16) << value;
    if (!unit.empty()) out << ' ' << unit;
    if (!note.empty()) out << "  [" << note << ']';
    out << '\n';
}

void emit_table(const CsvTable& table, const Common& c, std::ostream& out, const char* what) {
    if (c.out_path.empty()) return;
    write_csv(table, c.out_path);
    if (!c.quiet) out << "wrote " << table.rows.size() << ' ' << what << " rows to " << c.out_path << '\n';
}

// ---------------------------------------------------------------------------

int run_analyze(const Common& c, std::ostream& out) {
    const Config config = load(c);
    const DerivedParams p = derive_all(config.model);
    out << "Derived parameters\n";
    line(out, "mass", sci(p.mass), "kg", p.overridden.mass ? "override" : "");
    line(out, "stiffness", sci(p.stiffness), "N/m",
         p.overridden.stiffness ? "override; beam formula " + sci(p.formula_stiffness) + " N/m"
         : p.overridden.sensitivity ? "from sensitivity override; beam formula " +
                                          sci(p.formula_stiffness) + " N/m"
                                    : std::string());
    line(out, "static capacitance", sci(p.static_capacitance * 1e12), "pF");
    line(out, "damping coefficient", sci(p.damping), "N*s/m");
    line(out, "natural frequency", sci(p.omega_n), "rad/s");
    line(out, "natural frequency", sci(p.f_n), "Hz");
    line(out, "damping ratio", sci(p.zeta));
    line(out, "displacement sensitivity", sci(p.sensitivity), "m/(m/s^2)",
         p.overridden.sensitivity ? "override" : "");
    line(out, "displacement at 1 g", sci(p.sensitivity * config.model.g_value), "m",
         "g = " + sci(config.model.g_value) + " m/s^2");
    if (p.zeta > 0.0 && p.zeta < 1.0) {
        const auto a = analytic_step_metrics(p.omega_n, p.zeta);
        line(out, "rise time (analytic)", sci(a.rise_time * 1e6), "us");
        line(out, "settling time 4/(zeta wn)", sci(a.settling_time * 1e3), "ms");
    }
    const double a_max = max_safe_acceleration(p.sensitivity, config.model.geometry.finger_gap, 1.0);
    line(out, "collision limit", sci(a_max / config.model.g_value), "g");
    emit_table(derived_table(p), c, out, "parameter");
    return kExitOk;
}

struct StepArgs {
    double accel_g = 0.0;
    std::optional<double> zeta;
    std::string dt;
    std::string duration;
    std::string rise;
};

int run_step(const Common& c, const StepArgs& s, std::ostream& out) {
    Config config = load(c);
    const DerivedParams p = derive_all(config.model);
    SecondOrderModel model = SecondOrderModel::from_params(p);
    if (s.zeta) {
        if (!(*s.zeta >= 0.0)) throw UsageError("--zeta must be >= 0");
        model.zeta = *s.zeta;
    }
    const double dt = s.dt.empty() ? config.simulation.dt : quantity_arg(s.dt, Dimension::Time, "--dt");
    const double duration = s.duration.empty()
                                ? config.simulation.duration
                                : quantity_arg(s.duration, Dimension::Time, "--duration");
    StepMetricOptions opts;
    opts.settling_band = config.simulation.settling_band;
    opts.rise = config.simulation.rise;
    if (s.rise == "10-90") {
        opts.rise = RiseDefinition::TenToNinety;
    } else if (s.rise == "full") {
        opts.rise = RiseDefinition::FirstCrossing;
    } else if (!s.rise.empty()) {
        throw UsageError("--rise must be 'full' or '10-90'");
    }

    const double a = s.accel_g * config.model.g_value;
    const Trajectory traj = integrate(model, Waveform::step(a), dt, duration);
    const StepMetrics m = step_metrics(traj, a * model.dc_gain, opts);

    out << "Step response (RK4, dt = " << sci(dt) << " s, " << traj.size() << " samples)\n";
    line(out, "omega_n", sci(model.omega_n), "rad/s");
    line(out, "zeta", sci(model.zeta), "", s.zeta ? "--zeta" : "");
    line(out, "acceleration", sci(a), "m/s^2");
    line(out, "final value", sci(m.final_value), "m");
    line(out, opts.rise == RiseDefinition::FirstCrossing ? "rise time (0-100%)" : "rise time (10-90%)",
         m.rise_time ? sci(*m.rise_time * 1e6) : std::string("n/a"), "us");
    line(out, "settling time (" + sci(opts.settling_band * 100.0, 3) + "% band)",
         sci(m.settling_time * 1e3), "ms");
    line(out, "peak time", sci(m.peak_time * 1e6), "us");
    line(out, "overshoot", sci(m.percent_overshoot), "%");
    if (model.zeta > 0.0 && model.zeta < 1.0) {
        const auto an = analytic_step_metrics(model.omega_n, model.zeta);
        line(out, "rise time (analytic)", sci(an.rise_time * 1e6), "us");
        line(out, "settling time 4/(zeta wn)", sci(an.settling_time * 1e3), "ms");
    }
    emit_table(trajectory_table(traj), c, out, "trajectory");
    return kExitOk;
}

struct BodeArgs {
    std::string f_min;
    std::string f_max;
    std::optional<int> points;
    std::string spacing;
};

int run_bode(const Common& c, const BodeArgs& b, std::ostream& out) {
    const Config config = load(c);
    const auto model = SecondOrderModel::from_params(derive_all(config.model));
    const double f_min = b.f_min.empty() ? config.frequency.f_min
                                         : quantity_arg(b.f_min, Dimension::Frequency, "--fmin");
    const double f_max = b.f_max.empty() ? config.frequency.f_max
                                         : quantity_arg(b.f_max, Dimension::Frequency, "--fmax");
    const int points = b.points.value_or(config.frequency.points);
    if (points < 2) throw UsageError("--points must be >= 2");
    if (!(f_min < f_max)) throw UsageError("--fmin must be below --fmax");
    GridSpacing spacing = config.frequency.spacing;
    if (b.spacing == "log") {
        spacing = GridSpacing::Log;
    } else if (b.spacing == "linear") {
        spacing = GridSpacing::Linear;
    } else if (!b.spacing.empty()) {
        throw UsageError("--spacing must be 'log' or 'linear'");
    }

    const auto resp = bode(model, f_min, f_max, static_cast<std::size_t>(points), spacing);
    out << "Frequency response (" << resp.size() << " points, " << sci(f_min) << " - " << sci(f_max)
        << " Hz)\n";
    line(out, "natural frequency", sci(model.f_n()), "Hz");
    line(out, "dc magnitude", sci(model.dc_gain), "m/(m/s^2)");
    try {
        const auto r = resonance_metrics(resp);
        line(out, "peak frequency", sci(r.peak_frequency), "Hz", r.boundary_peak ? "at grid boundary" : "");
        line(out, "peak magnitude", sci(r.peak_magnitude), "m/(m/s^2)");
        line(out, "quality factor", sci(r.quality_factor));
    } catch (const FlatResponse&) {
        line(out, "peak frequency", "none", "", "no resonance peak on grid");
    }
    try {
        line(out, "-90 deg phase crossing", sci(phase_crossing_frequency(resp, -90.0)), "Hz");
    } catch (const InvalidArgument&) {
        line(out, "-90 deg phase crossing", "n/a", "", "outside grid");
    }
    emit_table(bode_table(resp), c, out, "frequency");
    return kExitOk;
}

Dimension sweep_dimension(SweepParameter p) {
    return p == SweepParameter::AccelerationG || p == SweepParameter::FingerCount ? Dimension::Dimensionless
                                                                                  : Dimension::Length;
}

struct SweepArgs {
    std::string param;
    std::string lo;
    std::string hi;
    int points = 2;
    double reference_g = 1.0;
    double safety = 1.0;
    bool dynamic = false;
};

int run_sweep(const Common& c, const SweepArgs& s, std::ostream& out) {
    const Config config = load(c);
    SweepSpec spec;
    try {
        spec.parameter = parse_sweep_parameter(s.param);
    } catch (const InvalidArgument& e) {
        throw UsageError(std::string("--param: ") + e.what());
    }
    const Dimension d = sweep_dimension(spec.parameter);
    spec.lo = quantity_arg(s.lo, d, "--lo");
    spec.hi = quantity_arg(s.hi, d, "--hi");
    spec.n_points = s.points;
    spec.reference_g = s.reference_g;
    spec.safety_factor = s.safety;
    spec.dynamic = s.dynamic;
    try {
        spec.validate();
    } catch (const InvalidArgument& e) {
        throw UsageError(e.what());
    }

    const auto result = sweep_parameter(config.model, spec);
    const auto table = sweep_table(result);
    if (c.out_path.empty()) {
        write_csv(table, out);
        return kExitOk;
    }
    emit_table(table, c, out, "sweep");
    if (!c.quiet) {
        const auto hit = std::find_if(result.rows.begin(), result.rows.end(),
                                      [](const SweepRow& r) { return r.collision; });
        if (hit != result.rows.end()) {
            out << "first collision at " << s.param << " = " << sci(hit->param_value) << '\n';
        } else {
            out << "no collision in sweep range\n";
        }
    }
    return kExitOk;
}

struct CheckArgs {
    double rated_g = 0.0;
    double safety = 1.0;
    bool dynamic = false;
};

int run_check(const Common& c, const CheckArgs& a, std::ostream& out) {
    const Config config = load(c);
    if (!(a.safety > 0.0 && a.safety <= 1.0)) throw UsageError("--safety must lie in (0, 1]");
    if (!(a.rated_g >= 0.0)) throw UsageError("--rated-g must be >= 0");
    const auto r = constraint_check(config.model, a.rated_g, a.safety, a.dynamic);
    out << "Collision check (" << (r.dynamic ? "dynamic peak" : "static") << " displacement)\n";
    line(out, "rated acceleration", sci(r.rated_g), "g");
    line(out, "displacement", sci(r.displacement * 1e6), "um");
    line(out, "allowed (safety * gap)", sci(r.safety_factor * r.gap * 1e6), "um");
    line(out, "margin", sci(r.margin * 1e6), "um");
    line(out, "max safe acceleration", sci(r.max_safe_g), "g");
    line(out, "result", r.pass ? "PASS" : "FAIL");
    return kExitOk;
}

struct SolveArgs {
    std::string target;
    std::string free_param;
    std::string lo;
    std::string hi;
};

int run_solve(const Common& c, const SolveArgs& s, std::ostream& out) {
    const Config config = load(c);
    FreeBeamParameter free_param;
    if (s.free_param == "beam_length") {
        free_param = FreeBeamParameter::BeamLength;
    } else if (s.free_param == "beam_width") {
        free_param = FreeBeamParameter::BeamWidth;
    } else {
        throw UsageError("--free must be 'beam_length' or 'beam_width'");
    }
    const double target = quantity_arg(s.target, Dimension::Frequency, "--target");
    const double lo = quantity_arg(s.lo, Dimension::Length, "--lo");
    const double hi = quantity_arg(s.hi, Dimension::Length, "--hi");
    if (!(lo > 0.0 && lo < hi)) throw UsageError("bounds must satisfy 0 < lo < hi");
    const auto sol = solve_for_target_frequency(config.model, target, free_param, lo, hi);
    out << "Inverse design for f_n = " << sci(target) << " Hz\n";
    line(out, s.free_param, sci(sol.param_value * 1e6, 9), "um");
    line(out, "achieved f_n", sci(sol.achieved_f_n, 12), "Hz");
    line(out, "iterations", std::to_string(sol.iterations));
    return kExitOk;
}

int run_report(const Common& c, const std::string& targets_path, std::ostream& out) {
    const Config config = load(c);
    const auto targets = load_targets(targets_path);
    const Report report = reference_report(config, targets);

    out << std::left << std::setw(28) << "quantity" << std::right << std::setw(16) << "computed"
        << std::setw(16) << "reference" << std::setw(12) << "rel.err" << std::setw(10) << "tol"
        << "  status\n";
    for (const auto& row : report.rows) {
        out << std::left << std::setw(28) << row.quantity << std::right << std::setw(16)
            << sci(row.computed, 7) << std::setw(16) << sci(row.reference, 7) << std::setw(12)
            << sci(row.relative_error, 3) << std::setw(10)
            << (row.tolerance ? sci(*row.tolerance, 3) : std::string("-")) << "  "
            << (!row.checked() ? "note" : row.pass ? "PASS" : "FAIL");
        if (!row.note.empty()) out << "  " << row.note;
        out << '\n';
    }
    for (const auto& a : report.annotations) out << "* " << a << '\n';
    out << "overall: " << (report.pass() ? "PASS" : "FAIL") << '\n';

    if (!c.out_path.empty()) {
        CsvTable table{{"quantity", "computed", "reference", "relative_error", "tolerance", "status", "note"},
                       {}};
        for (const auto& row : report.rows) {
            table.rows.push_back({row.quantity, row.computed, row.reference, row.relative_error,
                                  row.tolerance ? CsvCell(*row.tolerance) : CsvCell(std::string("-")),
                                  std::string(!row.checked() ? "note" : row.pass ? "pass" : "fail"),
                                  row.note});
        }
        emit_table(table, c, out, "report");
    }
    return report.pass() ? kExitOk : kExitComputation;
}

}  // namespace

int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Capacitive MEMS accelerometer design analysis and simulation", "accel_sim"};
    app.require_subcommand(1);

    Common common;
    auto add_common = [&](CLI::App* sub, bool with_out) {
        sub->add_option("config", common.config_path, "Device configuration file")->required();
        if (with_out) sub->add_option("--out", common.out_path, "Write the CSV table to this file");
        sub->add_flag("--quiet", common.quiet, "Suppress narration");
    };

    auto* analyze = app.add_subcommand("analyze", "Print every derived device parameter");
    add_common(analyze, true);

    StepArgs step_args;
    auto* step = app.add_subcommand("step", "Simulate a step in acceleration");
    add_common(step, true);
    step->add_option("--accel-g", step_args.accel_g, "Step amplitude in g")->required();
    step->add_option("--zeta", step_args.zeta, "Replace the damping ratio");
    step->add_option("--dt", step_args.dt, "Integration step (e.g. 1e-7 or 0.1us)");
    step->add_option("--duration", step_args.duration, "Simulated time (e.g. 15ms)");
    step->add_option("--rise", step_args.rise, "Rise-time definition: full | 10-90");

    BodeArgs bode_args;
    auto* bode_cmd = app.add_subcommand("bode", "Frequency response and resonance metrics");
    add_common(bode_cmd, true);
    bode_cmd->add_option("--fmin", bode_args.f_min, "Lowest frequency (Hz or with unit)");
    bode_cmd->add_option("--fmax", bode_args.f_max, "Highest frequency (Hz or with unit)");
    bode_cmd->add_option("--points", bode_args.points, "Grid points");
    bode_cmd->add_option("--spacing", bode_args.spacing, "log | linear");

    SweepArgs sweep_args;
    auto* sweep = app.add_subcommand("sweep", "Sweep one parameter and re-derive the model");
    add_common(sweep, true);
    sweep->add_option("--param", sweep_args.param, "Swept parameter")->required();
    sweep->add_option("--lo", sweep_args.lo, "Lower bound (lengths accept um/mm/m)")->required();
    sweep->add_option("--hi", sweep_args.hi, "Upper bound")->required();
    sweep->add_option("--points", sweep_args.points, "Number of points")->required();
    sweep->add_option("--ref-g", sweep_args.reference_g, "Acceleration (g) for geometry sweeps");
    sweep->add_option("--safety", sweep_args.safety, "Safety factor on the finger gap");
    sweep->add_flag("--dynamic", sweep_args.dynamic, "Use the peak step excursion");

    CheckArgs check_args;
    auto* check = app.add_subcommand("check", "Finger collision check at a rated acceleration");
    add_common(check, false);
    check->add_option("--rated-g", check_args.rated_g, "Rated acceleration in g")->required();
    check->add_option("--safety", check_args.safety, "Safety factor on the finger gap");
    check->add_flag("--dynamic", check_args.dynamic, "Use the peak step excursion");

    SolveArgs solve_args;
    auto* solve = app.add_subcommand("solve", "Find a beam dimension for a target natural frequency");
    add_common(solve, false);
    solve->add_option("--target", solve_args.target, "Target f_n (Hz or with unit)")->required();
    solve->add_option("--free", solve_args.free_param, "beam_length | beam_width")->required();
    solve->add_option("--lo", solve_args.lo, "Lower bound (e.g. 100um)")->required();
    solve->add_option("--hi", solve_args.hi, "Upper bound (e.g. 1000um)")->required();

    std::string targets_path;
    auto* report = app.add_subcommand("report", "Compare against reference values");
    add_common(report, true);
    report->add_option("--targets", targets_path, "Targets file")->required();

    std::vector<const char*> argv;
    argv.push_back("accel_sim");
    for (const auto& a : args) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (analyze->parsed()) return run_analyze(common, out);
        if (step->parsed()) return run_step(common, step_args, out);
        if (bode_cmd->parsed()) return run_bode(common, bode_args, out);
        if (sweep->parsed()) return run_sweep(common, sweep_args, out);
        if (check->parsed()) return run_check(common, check_args, out);
        if (solve->parsed()) return run_solve(common, solve_args, out);
        if (report->parsed()) return run_report(common, targets_path, out);
    } catch (const ConfigError& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const UsageError& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return kExitComputation;
    }
    return kExitUsage;
}

}  // namespace accel
