#include "accel/csv.hpp"

#include <fstream>
#include <ostream>

#include "accel/errors.hpp"
#include "accel/units.hpp"

namespace accel {

namespace {

void write_field(std::ostream& out, const std::string& s) {
    if (s.find_first_of(",\"\r\n") == std::string::npos) {
        out << s;
        return;
    }
    out << '"';
    for (const char c : s) {
        if (c == '"') out << '"';
        out << c;
    }
    out << '"';
}

void write_cell(std::ostream& out, const CsvCell& cell) {
    if (const auto* d = std::get_if<double>(&cell)) {
        out << format_double(*d);
    } else if (const auto* i = std::get_if<long long>(&cell)) {
        out << *i;
    } else {
        write_field(out, std::get<std::string>(cell));
    }
}

}  // namespace

void write_csv(const CsvTable& table, std::ostream& out) {
    for (std::size_t i = 0; i < table.header.size(); ++i) {
        if (i > 0) out << ',';
        write_field(out, table.header[i]);
    }
    out << '\n';
    for (const auto& row : table.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i > 0) out << ',';
            write_cell(out, row[i]);
        }
        out << '\n';
    }
}

void write_csv(const CsvTable& table, const std::string& path) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open '" + path + "' for writing");
    write_csv(table, out);
    out.flush();
    if (!out) throw IoError("failed writing '" + path + "'");
}

CsvTable trajectory_table(const Trajectory& traj) {
    CsvTable t{{"t_s", "x_m"}, {}};
    t.rows.reserve(traj.size());
    for (std::size_t i = 0; i < traj.size(); ++i) {
        t.rows.push_back({traj.times[i], traj.displacement[i]});
    }
    return t;
}

CsvTable bode_table(const FrequencyResponse& resp) {
    CsvTable t{{"f_hz", "mag_m_per_ms2", "mag_db_rel_dc", "phase_deg"}, {}};
    t.rows.reserve(resp.size());
    for (std::size_t i = 0; i < resp.size(); ++i) {
        t.rows.push_back({resp.frequency_hz[i], resp.magnitude(i), resp.magnitude_db_rel_dc(i),
                          resp.phase_deg(i)});
    }
    return t;
}

CsvTable sweep_table(const SweepResult& result) {
    CsvTable t{{"param_name", "param_value", "m_kg", "k_n_per_m", "c0_f", "b_ns_per_m", "f_n_hz",
                "zeta", "s_d", "x_m", "collision_flag"},
               {}};
    const std::string name(to_string(result.parameter));
    t.rows.reserve(result.rows.size());
    for (const auto& r : result.rows) {
        const auto& p = r.params;
        t.rows.push_back({name, r.param_value, p.mass, p.stiffness, p.static_capacitance, p.damping,
                          p.f_n, p.zeta, p.sensitivity, r.displacement,
                          static_cast<long long>(r.collision ? 1 : 0)});
    }
    return t;
}

CsvTable derived_table(const DerivedParams& p) {
    auto flag = [](bool b) { return static_cast<long long>(b ? 1 : 0); };
    CsvTable t{{"quantity", "value", "unit", "overridden"}, {}};
    t.rows = {
        {std::string("mass"), p.mass, std::string("kg"), flag(p.overridden.mass)},
        {std::string("stiffness"), p.stiffness, std::string("N/m"),
         flag(p.overridden.stiffness || p.overridden.sensitivity)},
        {std::string("static_capacitance"), p.static_capacitance, std::string("F"), flag(false)},
        {std::string("damping_coefficient"), p.damping, std::string("N*s/m"), flag(false)},
        {std::string("omega_n"), p.omega_n, std::string("rad/s"), flag(false)},
        {std::string("f_n"), p.f_n, std::string("Hz"), flag(false)},
        {std::string("zeta"), p.zeta, std::string("1"), flag(false)},
        {std::string("sensitivity"), p.sensitivity, std::string("m/(m/s^2)"),
         flag(p.overridden.sensitivity)},
        {std::string("formula_mass"), p.formula_mass, std::string("kg"), flag(false)},
        {std::string("formula_stiffness"), p.formula_stiffness, std::string("N/m"), flag(false)},
    };
    return t;
}

}  // namespace accel
