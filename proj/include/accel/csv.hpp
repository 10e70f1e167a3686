// RFC-4180-style CSV: header row, LF line endings, doubles at 17 significant digits.
#pragma once

#include <iosfwd>
#include <string>
#include <variant>
#include <vector>

#include "accel/device_model.hpp"
#include "accel/dynamics.hpp"
#include "accel/freq_response.hpp"
#include "accel/sweep.hpp"

namespace accel {

using CsvCell = std::variant<double, long long, std::string>;

struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<CsvCell>> rows;
};

void write_csv(const CsvTable& table, std::ostream& out);
/// Throws IoError with the path on failure.
void write_csv(const CsvTable& table, const std::string& path);

/// Columns: t_s, x_m.
CsvTable trajectory_table(const Trajectory& traj);
/// Columns: f_hz, mag_m_per_ms2, mag_db_rel_dc, phase_deg.
CsvTable bode_table(const FrequencyResponse& resp);
/// Columns: param_name, param_value, m_kg, k_n_per_m, c0_f, b_ns_per_m, f_n_hz,
/// zeta, s_d, x_m, collision_flag.
CsvTable sweep_table(const SweepResult& result);
/// Columns: quantity, value, unit, overridden.
CsvTable derived_table(const DerivedParams& params);

}  // namespace accel
