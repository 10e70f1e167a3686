#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "accel/csv.hpp"
#include "accel/errors.hpp"
#include "fixtures.hpp"

using namespace accel;
using namespace accel::test;

namespace {

std::string to_text(const CsvTable& t) {
    std::ostringstream out;
    write_csv(t, out);
    return out.str();
}

std::vector<std::string> lines_of(const std::string& text) {
    std::vector<std::string> lines;
    std::istringstream in(text);
    for (std::string line; std::getline(in, line);) lines.push_back(line);
    return lines;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

}  // namespace

TEST_SUITE("csv") {

TEST_CASE("headers") {
    CHECK(to_text(trajectory_table(Trajectory{})) == "t_s,x_m\n");
    CHECK(to_text(bode_table(FrequencyResponse{})) == "f_hz,mag_m_per_ms2,mag_db_rel_dc,phase_deg\n");
    CHECK(to_text(sweep_table(SweepResult{})) ==
          "param_name,param_value,m_kg,k_n_per_m,c0_f,b_ns_per_m,f_n_hz,zeta,s_d,x_m,collision_flag\n");
}

TEST_CASE("single sample trajectory") {
    Trajectory t;
    t.times = {0.0};
    t.displacement = {0.0};
    t.velocity = {0.0};
    const auto text = to_text(trajectory_table(t));
    CHECK(text == "t_s,x_m\n0,0\n");
    CHECK(lines_of(text).size() == 2);
}

TEST_CASE("values round trip at full precision") {
    const auto model = reference_model();
    const auto traj = integrate(model, Waveform::step(10.0), 1e-6, 1e-3);
    const auto lines = lines_of(to_text(trajectory_table(traj)));
    REQUIRE(lines.size() == traj.size() + 1);
    for (std::size_t i = 0; i < traj.size(); ++i) {
        const auto& line = lines[i + 1];
        const auto comma = line.find(',');
        CHECK(std::stod(line.substr(0, comma)) == traj.times[i]);
        CHECK(std::stod(line.substr(comma + 1)) == traj.displacement[i]);
    }
}

TEST_CASE("quoting") {
    CsvTable t{{"name", "value"}, {}};
    t.rows.push_back({std::string("plain"), 1.5});
    t.rows.push_back({std::string("a,b"), 2LL});
    t.rows.push_back({std::string("say \"hi\""), -0.25});
    t.rows.push_back({std::string("two\nlines"), 0.0});
    CHECK(to_text(t) ==
          "name,value\n"
          "plain,1.5\n"
          "\"a,b\",2\n"
          "\"say \"\"hi\"\"\",-0.25\n"
          "\"two\nlines\",0\n");
}

TEST_CASE("sweep and derived tables") {
    auto in = reference_inputs();
    const auto sweep = sweep_acceleration(in, 0.0, 200.0, 3);
    const auto lines = lines_of(to_text(sweep_table(sweep)));
    REQUIRE(lines.size() == 4);
    CHECK(lines[1].rfind("acceleration_g,0,", 0) == 0);
    CHECK(lines[1].back() == '0');
    CHECK(lines[3].back() == '1');

    const auto derived = derived_table(derive_all(in));
    REQUIRE(derived.rows.size() >= 8);
    CHECK(std::get<std::string>(derived.rows[1][0]) == "stiffness");
    CHECK(std::get<long long>(derived.rows[1][3]) == 1);
}

TEST_CASE("byte determinism") {
    const auto model = reference_model();
    const auto dir = std::filesystem::temp_directory_path();
    const auto a = (dir / "accel_csv_a.csv").string();
    const auto b = (dir / "accel_csv_b.csv").string();
    write_csv(trajectory_table(integrate(model, Waveform::step(10.0), 1e-7, 2e-3)), a);
    write_csv(trajectory_table(integrate(model, Waveform::step(10.0), 1e-7, 2e-3)), b);
    const auto ta = read_file(a);
    CHECK_FALSE(ta.empty());
    CHECK(ta == read_file(b));
    CHECK(ta.find('\r') == std::string::npos);

    write_csv(bode_table(bode(model, 10.0, 100e3, 512)), a);
    write_csv(bode_table(bode(model, 10.0, 100e3, 512)), b);
    CHECK(read_file(a) == read_file(b));
    std::remove(a.c_str());
    std::remove(b.c_str());
}

TEST_CASE("unwritable path") {
    CHECK_THROWS_AS(write_csv(CsvTable{{"x"}, {}}, "/nonexistent/dir/out.csv"), IoError);
}

}  // TEST_SUITE
