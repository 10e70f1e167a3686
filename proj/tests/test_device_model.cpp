#include <doctest.h>

#include <cmath>
#include <numbers>

#include "accel/device_model.hpp"
#include "accel/errors.hpp"
#include "fixtures.hpp"

using namespace accel;
using namespace accel::test;
using doctest::Approx;

TEST_SUITE("device_model") {

TEST_CASE("total mass") {
    const auto mat = silicon();

    SUBCASE("reference configuration matches the published mass") {
        CHECK(rel_err(total_mass(reference_geometry(), mat), 3.53625e-8) < 1e-12);
    }
    SUBCASE("empty device weighs nothing") {
        auto g = reference_geometry();
        g.n_movable_fingers = 0;
        g.n_proof_masses = 0;
        CHECK(total_mass(g, mat) == 0.0);
    }
    SUBCASE("single proof mass without fingers") {
        auto g = reference_geometry();
        g.n_proof_masses = 1;
        g.n_movable_fingers = 0;
        // 225 x 1000 x 25 um = 5.625e-12 m^3
        CHECK(rel_err(total_mass(g, mat), 5.625e-12 * 2300.0) < 1e-12);
        CHECK(rel_err(total_mass(g, mat), 1.29375e-8) < 1e-12);
    }
}

TEST_CASE("spring constant of the folded beam") {
    const auto mat = silicon();
    auto g = reference_geometry();
    CHECK(rel_err(spring_constant(g, mat), 68.0) < 1e-12);

    g.beam_width = 20 * um;
    CHECK(rel_err(spring_constant(g, mat), 544.0) < 1e-12);

    g = reference_geometry();
    g.beam_length = 500 * um;
    CHECK(rel_err(spring_constant(g, mat), 8.5) < 1e-12);

    g.beam_length = 0.0;
    CHECK_THROWS_AS(spring_constant(g, mat), InvalidArgument);
}

TEST_CASE("static capacitance") {
    const auto mat = silicon();
    CHECK(rel_err(static_capacitance(reference_geometry(), mat), 7.30455e-13) < 1e-12);
    // 8.854e-12 * 66 * 245e-6 * 25e-6 / 5e-6
    CHECK(rel_err(static_capacitance(published_layout(), mat), 7.158459e-13) < 1e-12);

    auto g = reference_geometry();
    g.n_movable_fingers = 0;
    CHECK(static_capacitance(g, mat) == 0.0);

    g.finger_gap = 0.0;
    CHECK_THROWS_AS(static_capacitance(g, mat), InvalidArgument);
}

TEST_CASE("differential capacitance") {
    const auto mat = silicon();
    const auto g = reference_geometry();

    const auto rest = differential_capacitance(g, mat, 0.0);
    CHECK(rest.c1 == rest.c2);
    CHECK(rel_err(rest.c1, static_capacitance(g, mat)) < 1e-12);

    // 2 eps N_f t x / d0 with x = 3.53625e-8 m
    const auto displaced = differential_capacitance(g, mat, 3.53625e-8);
    CHECK(rel_err(displaced.difference(), 2.066457195e-16) < 1e-9);

    const auto full = differential_capacitance(g, mat, g.overlap());
    CHECK(full.c2 == 0.0);

    CHECK_THROWS_AS(differential_capacitance(g, mat, 1.0001 * g.overlap()), DisplacementExceedsOverlap);
    CHECK_THROWS_AS(differential_capacitance(g, mat, -1.0001 * g.overlap()), DisplacementExceedsOverlap);

    auto partial = g;
    partial.initial_overlap = 100 * um;
    CHECK_THROWS_AS(differential_capacitance(partial, mat, 150 * um), DisplacementExceedsOverlap);
}

TEST_CASE("squeeze-film damping") {
    const auto mat = silicon();
    CHECK(rel_err(damping_coefficient(reference_geometry(), mat), 3.815625e-5) < 1e-12);
    CHECK(rel_err(damping_coefficient(published_layout(), mat), 3.7393125e-5) < 1e-12);

    auto g = reference_geometry();
    g.finger_gap = g.device_thickness;
    CHECK(rel_err(damping_coefficient(g, mat), 66 * 18.5e-6 * 250e-6) < 1e-12);
}

TEST_CASE("natural frequency") {
    const auto nf = natural_frequency(3.53625e-8, 10.0);
    CHECK(nf.omega_n == Approx(16816.2).epsilon(1e-5));
    CHECK(nf.f_n == Approx(2676.4).epsilon(1e-5));

    CHECK(natural_frequency(1.0, 4.0).omega_n == 2.0);

    const auto stiff = natural_frequency(3.53625e-8, 68.0);
    CHECK(stiff.f_n == Approx(6980.0).epsilon(1e-3));

    CHECK_THROWS_AS(natural_frequency(0.0, 1.0), InvalidArgument);
    CHECK_THROWS_AS(natural_frequency(1.0, -1.0), InvalidArgument);
}

TEST_CASE("damping ratio") {
    CHECK(damping_ratio(3.815625e-5, 3.53625e-8, 16816.2) == Approx(0.03208).epsilon(1e-3));
    CHECK(damping_ratio(0.0, 3.53625e-8, 16816.2) == 0.0);
    const double m = 2.0;
    const double w = 3.0;
    CHECK(damping_ratio(2.0 * m * w, m, w) == 1.0);
    CHECK_THROWS_AS(damping_ratio(-1.0, m, w), InvalidArgument);
}

TEST_CASE("displacement sensitivity") {
    const double sd = displacement_sensitivity(3.53625e-8, 10.0);
    CHECK(rel_err(sd, 3.53625e-9) < 1e-12);
    CHECK(static_displacement(sd, 0.0) == 0.0);
    CHECK(rel_err(static_displacement(sd, 10.0), 3.53625e-8) < 1e-12);
    CHECK_THROWS_AS(displacement_sensitivity(1.0, 0.0), InvalidArgument);
}

TEST_CASE("analytic step metrics") {
    const auto m = analytic_step_metrics(16816.2, 0.03208);
    CHECK(m.rise_time == Approx(95.37e-6).epsilon(1e-4));
    CHECK(m.settling_time == Approx(7.414e-3).epsilon(1e-3));

    CHECK(analytic_step_metrics(1.0, 0.5).settling_time == 8.0);

    CHECK_THROWS_AS(analytic_step_metrics(1.0, 1.0), NotUnderdamped);
    CHECK_THROWS_AS(analytic_step_metrics(1.0, 0.0), NotUnderdamped);
    CHECK_THROWS_AS(analytic_step_metrics(1.0, 1.5), NotUnderdamped);
}

TEST_CASE("max safe acceleration") {
    const double a = max_safe_acceleration(5e-9, 5e-6, 1.0);
    CHECK(rel_err(a, 1000.0) < 1e-12);
    CHECK(a / kStandardGravity == Approx(101.97).epsilon(1e-4));

    const double b = max_safe_acceleration(3.53625e-9, 5e-6, 1.0);
    CHECK(b == Approx(1413.93).epsilon(1e-5));
    CHECK(b / kStandardGravity == Approx(144.2).epsilon(1e-3));

    CHECK(max_safe_acceleration(5e-9, 0.0, 1.0) == 0.0);
    CHECK(max_safe_acceleration(5e-9, 5e-6, 0.5) == Approx(500.0));
    CHECK_THROWS_AS(max_safe_acceleration(5e-9, 5e-6, 0.0), InvalidArgument);
    CHECK_THROWS_AS(max_safe_acceleration(5e-9, 5e-6, 1.5), InvalidArgument);
}

TEST_CASE("derive_all") {
    SUBCASE("stiffness override reproduces the published table") {
        const auto p = derive_all(reference_inputs());
        CHECK(rel_err(p.mass, 3.53625e-8) < 1e-12);
        CHECK(p.stiffness == 10.0);
        CHECK(rel_err(p.static_capacitance, 7.30455e-13) < 1e-12);
        CHECK(rel_err(p.damping, 3.815625e-5) < 1e-12);
        CHECK(p.zeta == Approx(0.03208).epsilon(1e-3));
        CHECK(rel_err(p.sensitivity, 3.53625e-9) < 1e-12);
        CHECK(p.f_n == Approx(2676.4).epsilon(1e-5));
        CHECK(p.overridden.stiffness);
        CHECK_FALSE(p.overridden.mass);
        CHECK(rel_err(p.formula_stiffness, 68.0) < 1e-12);
    }
    SUBCASE("no overrides uses the beam formula") {
        const auto p = derive_all(published_layout(), silicon());
        CHECK(rel_err(p.stiffness, 68.0) < 1e-12);
        CHECK(p.f_n == Approx(6980.0).epsilon(5e-3));
        CHECK_FALSE(p.overridden.stiffness);
    }
    SUBCASE("mass override equal to the computed mass is idempotent") {
        const auto plain = derive_all(reference_geometry(), silicon());
        ModelOverrides ov;
        ov.mass = plain.mass;
        const auto same = derive_all(reference_geometry(), silicon(), ov);
        CHECK(same.mass == plain.mass);
        CHECK(same.stiffness == plain.stiffness);
        CHECK(same.omega_n == plain.omega_n);
        CHECK(same.zeta == plain.zeta);
        CHECK(same.sensitivity == plain.sensitivity);
        CHECK(same.overridden.mass);
    }
    SUBCASE("sensitivity override sets the implied stiffness") {
        ModelOverrides ov;
        ov.sensitivity = 5e-9;
        const auto p = derive_all(reference_geometry(), silicon(), ov);
        CHECK(p.sensitivity == 5e-9);
        CHECK(rel_err(p.stiffness, 3.53625e-8 / 5e-9) < 1e-12);
        CHECK(std::abs(p.sensitivity * p.omega_n * p.omega_n - 1.0) < 1e-12);
        CHECK(p.overridden.sensitivity);
    }
    SUBCASE("conflicting overrides are rejected") {
        ModelOverrides ov;
        ov.stiffness = 10.0;
        ov.sensitivity = 5e-9;
        CHECK_THROWS_AS(derive_all(reference_geometry(), silicon(), ov), InvalidArgument);
        ov.sensitivity.reset();
        ov.stiffness = -1.0;
        CHECK_THROWS_AS(derive_all(reference_geometry(), silicon(), ov), InvalidArgument);
    }
}

TEST_CASE("geometry and material validation") {
    CHECK_NOTHROW(reference_geometry().validate());
    CHECK_NOTHROW(silicon().validate());

    auto g = reference_geometry();
    g.finger_gap = -5 * um;
    CHECK_THROWS_AS(g.validate(), InvalidArgument);

    g = reference_geometry();
    g.n_movable_fingers = 0;
    CHECK_THROWS_AS(g.validate(), InvalidArgument);

    g = reference_geometry();
    g.initial_overlap = 300 * um;
    CHECK_THROWS_AS(g.validate(), InvalidArgument);

    auto m = silicon();
    m.density = 0.0;
    CHECK_THROWS_AS(m.validate(), InvalidArgument);
}

TEST_CASE("properties over random geometries") {
    const auto mat = silicon();
    for (int trial = 0; trial < 200; ++trial) {
        auto g = reference_geometry();
        g.beam_length = uniform(50, 1000) * um;
        g.beam_width = uniform(2, 30) * um;
        g.device_thickness = uniform(5, 80) * um;
        g.finger_length = uniform(50, 500) * um;
        g.finger_gap = uniform(1, 10) * um;
        g.n_movable_fingers = static_cast<int>(uniform(1, 200));
        const double s = uniform(0.3, 3.0);

        CAPTURE(trial);
        const double k = spring_constant(g, mat);

        auto wide = g;
        wide.beam_width *= s;
        CHECK(rel_err(spring_constant(wide, mat), s * s * s * k) < 1e-13);

        auto longer = g;
        longer.beam_length *= s;
        CHECK(rel_err(spring_constant(longer, mat), k / (s * s * s)) < 1e-13);

        const double c0 = static_capacitance(g, mat);
        auto thick = g;
        thick.device_thickness *= s;
        CHECK(rel_err(static_capacitance(thick, mat), s * c0) < 1e-13);
        auto gap = g;
        gap.finger_gap *= s;
        CHECK(rel_err(static_capacitance(gap, mat), c0 / s) < 1e-13);
        auto fingers = g;
        fingers.n_movable_fingers *= 2;
        CHECK(rel_err(static_capacitance(fingers, mat), 2.0 * c0) < 1e-13);
        auto length = g;
        length.finger_length *= s;
        CHECK(rel_err(static_capacitance(length, mat), s * c0) < 1e-13);

        // C1 + C2 independent of x; C1 - C2 linear in x.
        const double x1 = g.overlap();
        const double slope =
            2.0 * mat.permittivity * g.n_movable_fingers * g.device_thickness / g.finger_gap;
        const double sum_rest = differential_capacitance(g, mat, 0.0).sum();
        for (int j = 0; j < 5; ++j) {
            const double x = uniform(-x1, x1);
            const auto pair = differential_capacitance(g, mat, x);
            CHECK(rel_err(pair.sum(), sum_rest) < 1e-13);
            CHECK(std::abs(pair.difference() - slope * x) <= 1e-12 * sum_rest);
        }

        // Finger contribution to the mass is linear in N_f.
        auto none = g;
        none.n_movable_fingers = 0;
        auto a = g;
        a.n_movable_fingers = 17;
        auto b = g;
        b.n_movable_fingers = 29;
        auto ab = g;
        ab.n_movable_fingers = 46;
        CHECK(rel_err(total_mass(ab, mat),
                      total_mass(a, mat) + total_mass(b, mat) - total_mass(none, mat)) < 1e-13);
    }
}

TEST_CASE("sensitivity equals 1/omega_n^2 for any mass and stiffness") {
    for (int trial = 0; trial < 500; ++trial) {
        const double m = log_uniform(1e-12, 1e-3);
        const double k = log_uniform(1e-2, 1e4);
        const double wn = natural_frequency(m, k).omega_n;
        CHECK(std::abs(displacement_sensitivity(m, k) * wn * wn - 1.0) < 1e-12);
    }
}

TEST_CASE("analytic rise and settling times fall as omega_n rises") {
    for (int trial = 0; trial < 100; ++trial) {
        const double zeta = uniform(0.01, 0.99);
        const double w1 = log_uniform(1e2, 1e6);
        const double w2 = w1 * uniform(1.001, 10.0);
        const auto slow = analytic_step_metrics(w1, zeta);
        const auto fast = analytic_step_metrics(w2, zeta);
        CHECK(fast.rise_time < slow.rise_time);
        CHECK(fast.settling_time < slow.settling_time);
    }
}

}  // TEST_SUITE
