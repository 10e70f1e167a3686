#include <doctest.h>

#include <algorithm>

#include "accel/errors.hpp"
#include "accel/report.hpp"
#include "fixtures.hpp"

using namespace accel;
using namespace accel::test;

namespace {

const ReportRow* find_row(const Report& r, const std::string& quantity, bool checked = true) {
    for (const auto& row : r.rows) {
        if (row.quantity == quantity && row.checked() == checked) return &row;
    }
    return nullptr;
}

bool has_annotation(const Report& r, const std::string& needle) {
    return std::any_of(r.annotations.begin(), r.annotations.end(),
                       [&](const std::string& a) { return a.find(needle) != std::string::npos; });
}

}  // namespace

TEST_SUITE("report") {

TEST_CASE("reproduction config matches every checked target") {
    const auto config = load_config(config_path("table2_repro.cfg"));
    const auto targets = load_targets(config_path("table2_targets.txt"));
    const auto report = reference_report(config, targets);

    CHECK(report.pass());
    REQUIRE(report.rows.size() == targets.size());
    for (const auto& row : report.rows) {
        CAPTURE(row.quantity);
        if (row.checked()) CHECK(row.pass);
        else CHECK(row.pass);  // annotations never fail
    }

    const auto* c0 = find_row(report, "c0_f");
    REQUIRE(c0 != nullptr);
    CHECK(c0->relative_error < 1e-12);

    const auto* k_formula = find_row(report, "stiffness_formula_n_per_m", false);
    REQUIRE(k_formula != nullptr);
    CHECK(k_formula->computed == doctest::Approx(68.0).epsilon(1e-12));

    CHECK(has_annotation(report, "DISCREPANCY"));
    CHECK(has_annotation(report, "g_value"));
}

TEST_CASE("published finger length misses the capacitance target") {
    auto config = load_config(config_path("table2_repro.cfg"));
    config.model.geometry.finger_length = 245 * um;
    const auto report = reference_report(config, parse_targets("c0_f 7.30455e-13 1e-4\n"));
    CHECK_FALSE(report.pass());
    REQUIRE(report.rows.size() == 1);
    CHECK(report.rows[0].relative_error == doctest::Approx(-0.02).epsilon(1e-6));
    CHECK(report.rows[0].computed == doctest::Approx(7.158459e-13).epsilon(1e-6));
}

TEST_CASE("no override, no discrepancy") {
    const auto config = load_config(config_path("table1.cfg"));
    const auto report = reference_report(config, parse_targets("stiffness_n_per_m 68 1e-6\n"));
    CHECK(report.pass());
    CHECK_FALSE(has_annotation(report, "DISCREPANCY"));
}

TEST_CASE("empty targets") {
    const auto config = load_config(config_path("table2_repro.cfg"));
    const auto targets = parse_targets("# nothing\n\n");
    CHECK(targets.empty());
    const auto report = reference_report(config, targets);
    CHECK(report.rows.empty());
    CHECK(report.pass());
}

TEST_CASE("every listed quantity can be computed") {
    const auto config = load_config(config_path("table2_repro.cfg"));
    std::string text;
    for (auto q : report_quantities()) text += std::string(q) + " 1 -\n";
    const auto report = reference_report(config, parse_targets(text));
    CHECK(report.rows.size() == report_quantities().size());
    for (const auto& row : report.rows) {
        CAPTURE(row.quantity);
        CHECK(std::isfinite(row.computed));
    }
}

TEST_CASE("malformed targets") {
    try {
        parse_targets("zeta 0.032 1e-3\nwarp_factor 9 0.1\n");
        FAIL("expected ConfigError");
    } catch (const ConfigError& e) {
        CHECK(e.kind() == ConfigError::Kind::UnknownKey);
        CHECK(e.line() == 2);
    }
    CHECK_THROWS_AS(parse_targets("zeta\n"), ConfigError);
    CHECK_THROWS_AS(parse_targets("zeta abc 1e-3\n"), ConfigError);
    CHECK_THROWS_AS(parse_targets("zeta 0.03 -1\n"), ConfigError);
    CHECK_THROWS_AS(load_targets("/nonexistent/targets.txt"), ConfigError);
}

}  // TEST_SUITE
