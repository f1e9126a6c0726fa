#include "doctest.h"

#include "pneumodel/domain.hpp"
#include "pneumodel/errors.hpp"
#include "pneumodel/lisper.hpp"
#include "pneumodel/numerics.hpp"
#include "pneumodel/units.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

using namespace pneumodel;

namespace {

ModelConfig dc() { return default_config(); }

RootConfig rc(const ModelConfig& cfg) {
    return {cfg.sim.abs_tol, cfg.sim.x_tol, cfg.sim.max_iter};
}

// Rest wall length that closes the zero-pressure cell at ring angle 2*beta.
double rest_wall(const LisperGeometry& g) {
    return g.l_base / (2.0 * std::cos(g.beta)) - g.r_mid() * std::tan(g.beta);
}

// The three cell-closure relations, recomputed from the returned fields:
// arc length definition, half-angle link, and the base-span closure.
struct Residuals {
    double arc, half_angle, closure;
};

Residuals closure_residuals(const BellowSolution& s, const LisperGeometry& g) {
    return {s.s_new - s.r_new * s.theta2,
            s.theta3 - 0.5 * s.theta2,
            g.l_base / (2.0 * std::cos(s.theta3)) - s.l_wall_new -
                s.r_new * std::tan(s.theta3)};
}

} // namespace

TEST_SUITE("inflation laws") {

TEST_CASE("arc length at zero pressure is the rest arc") {
    const ModelConfig cfg = dc();
    const auto& g = cfg.lisper;
    CHECK(arc_length_inflated(g, cfg.material, 0.0) == 2.0 * g.beta * g.r_mid());
}

TEST_CASE("arc length follows the strain ratio") {
    ModelConfig cfg = dc();
    cfg.lisper.beta = 0.5;
    cfg.lisper.r_inner = 0.005;
    cfg.lisper.r_outer = 0.005;
    cfg.lisper.l_thick = 1.0;
    const double expected = 0.005 / (1.0 - 100.0 / 765000.0);
    CHECK(arc_length_inflated(cfg.lisper, cfg.material, 100.0) ==
          doctest::Approx(expected).epsilon(1e-15));
}

TEST_CASE("pressures at the material pole throw") {
    const ModelConfig cfg = dc();
    // default modulus and thickness scale put the pole at 510 kPa
    CHECK_THROWS_AS(arc_length_inflated(cfg.lisper, cfg.material, 5.1e5), ModelError);
    CHECK_NOTHROW(arc_length_inflated(cfg.lisper, cfg.material, 5.0e5));
}

TEST_CASE("wall length grows linearly in pressure") {
    const ModelConfig cfg = dc();
    const auto& g = cfg.lisper;
    const double w0 = wall_length_inflated(g, cfg.material, 0.0);
    const double w1 = wall_length_inflated(g, cfg.material, 4.0e4);
    const double w2 = wall_length_inflated(g, cfg.material, 8.0e4);
    CHECK(w0 == g.l_wall_initial);
    CHECK(w2 - w0 == doctest::Approx(2.0 * (w1 - w0)).epsilon(1e-12));
}

TEST_CASE("wall strain arithmetic") {
    ModelConfig cfg = dc();
    cfg.lisper.l_wall_initial = 0.002;
    cfg.lisper.l_thick = 2.0;
    // strain = 2.0 * 76500 / (1.53e6 * 0.5) = 0.2
    CHECK(wall_length_inflated(cfg.lisper, cfg.material, 76500.0) ==
          doctest::Approx(0.0024).epsilon(1e-12));
}

} // TEST_SUITE

TEST_SUITE("cell closure") {

TEST_CASE("rest solution reproduces the rest geometry") {
    const ModelConfig cfg = dc();
    const auto& g = cfg.lisper;
    const BellowSolution s = solve_bellow_geometry(g, cfg.material, 0.0, rc(cfg));
    CHECK(s.theta2 == doctest::Approx(2.0 * g.beta).epsilon(1e-9));
    CHECK(s.theta3 == doctest::Approx(g.beta).epsilon(1e-9));
    CHECK(s.r_new == doctest::Approx(g.r_mid()).epsilon(1e-9));
    CHECK(s.s_new == 2.0 * g.beta * g.r_mid());
    CHECK(s.l_wall_new == g.l_wall_initial);
}

TEST_CASE("closure residuals vanish across the working pressure range") {
    const ModelConfig cfg = dc();
    for (int k = 0; k <= 20; ++k) {
        const double p = 5000.0 * k;
        const BellowSolution s = solve_bellow_geometry(cfg.lisper, cfg.material, p, rc(cfg));
        const Residuals r = closure_residuals(s, cfg.lisper);
        CHECK(std::fabs(r.arc) < 1e-10);
        CHECK(std::fabs(r.half_angle) < 1e-10);
        CHECK(std::fabs(r.closure) < 1e-10);
    }
}

TEST_CASE("solution varies continuously with pressure") {
    const ModelConfig cfg = dc();
    double prev = -1.0;
    for (int k = 0; k <= 50; ++k) {
        const BellowSolution s =
            solve_bellow_geometry(cfg.lisper, cfg.material, 2000.0 * k, rc(cfg));
        if (prev > 0.0) CHECK(std::fabs(s.theta2 - prev) / prev < 0.05);
        prev = s.theta2;
    }
}

TEST_CASE("the bracketed root is unique on randomized geometries") {
    std::mt19937_64 eng(7);
    std::uniform_real_distribution<double> u(0.9, 1.1);
    for (int trial = 0; trial < 5; ++trial) {
        ModelConfig cfg = dc();
        auto& g = cfg.lisper;
        g.l_base *= u(eng);
        g.r_inner *= u(eng);
        g.r_outer = std::max(g.r_outer * u(eng), g.r_inner * 1.5);
        g.beta *= std::uniform_real_distribution<double>(0.95, 1.05)(eng);
        g.l_thick *= u(eng);
        g.l_wall_initial = rest_wall(g);
        REQUIRE(g.l_wall_initial > 0.0);

        const double p = 5.0e4;
        const double s = arc_length_inflated(g, cfg.material, p);
        const double w = wall_length_inflated(g, cfg.material, p);
        auto f = [&](double t) {
            return g.l_base / (2.0 * std::cos(0.5 * t)) - w - (s / t) * std::tan(0.5 * t);
        };
        // grid scan over the full bracket: exactly one sign change
        const int n = 4000;
        const double lo = 1e-6, hi = kPi - 1e-9;
        int changes = 0;
        double prev = f(lo);
        for (int i = 1; i <= n; ++i) {
            const double t = lo + (hi - lo) * i / n;
            const double cur = f(t);
            if ((prev > 0.0) != (cur > 0.0)) ++changes;
            prev = cur;
        }
        CHECK(changes == 1);
        const BellowSolution sol = solve_bellow_geometry(g, cfg.material, p, rc(cfg));
        CHECK(std::fabs(f(sol.theta2)) < 1e-10);
    }
}

} // TEST_SUITE

TEST_SUITE("chamber contour") {

TEST_CASE("height vanishes at the cell corners") {
    const ModelConfig cfg = dc();
    const BellowSolution s = solve_bellow_geometry(cfg.lisper, cfg.material, 3.0e4, rc(cfg));
    const double half = 0.5 * cfg.lisper.l_base;
    CHECK(chamber_height(s, cfg.lisper, half) == 0.0);
    CHECK(chamber_height(s, cfg.lisper, -half) == 0.0);
}

TEST_CASE("contour is symmetric") {
    const ModelConfig cfg = dc();
    const BellowSolution s = solve_bellow_geometry(cfg.lisper, cfg.material, 6.0e4, rc(cfg));
    const double half = 0.5 * cfg.lisper.l_base;
    for (int i = 0; i <= 16; ++i) {
        const double x = half * i / 16.0;
        CHECK(chamber_height(s, cfg.lisper, x) == chamber_height(s, cfg.lisper, -x));
    }
}

TEST_CASE("wall and arc branches meet continuously") {
    const ModelConfig cfg = dc();
    const BellowSolution s = solve_bellow_geometry(cfg.lisper, cfg.material, 5.0e4, rc(cfg));
    const double half = 0.5 * cfg.lisper.l_base;
    const double xb = half - s.l_wall_new * std::cos(s.theta3);
    const double eps = 1e-12;
    const double below = chamber_height(s, cfg.lisper, xb - eps);
    const double above = chamber_height(s, cfg.lisper, xb + eps);
    CHECK(std::fabs(below - above) < 1e-9 * chamber_height(s, cfg.lisper, 0.0));
}

TEST_CASE("apex height matches the wall-plus-sagitta construction") {
    const ModelConfig cfg = dc();
    const BellowSolution s = solve_bellow_geometry(cfg.lisper, cfg.material, 4.0e4, rc(cfg));
    const double expected =
        s.l_wall_new * std::sin(s.theta3) + s.r_new * (1.0 - std::cos(0.5 * s.theta2));
    CHECK(chamber_height(s, cfg.lisper, 0.0) == doctest::Approx(expected).epsilon(1e-12));
}

TEST_CASE("positions outside the cell throw") {
    const ModelConfig cfg = dc();
    const BellowSolution s = solve_bellow_geometry(cfg.lisper, cfg.material, 0.0, rc(cfg));
    CHECK_THROWS_AS(chamber_height(s, cfg.lisper, 0.6 * cfg.lisper.l_base), ModelError);
}

TEST_CASE("triangle third side") {
    CHECK(law_of_cosines(3.0, 4.0, kPi / 2.0) == doctest::Approx(5.0).epsilon(1e-15));
    CHECK(law_of_cosines(2.0, 5.0, 0.0) == 3.0);
    CHECK(law_of_cosines(1.0, 1.0, kPi) == doctest::Approx(2.0).epsilon(1e-15));
    CHECK(law_of_cosines(2.0, 7.0, 0.8) == law_of_cosines(7.0, 2.0, 0.8));
}

} // TEST_SUITE

TEST_SUITE("force shares") {

TEST_CASE("no compression at the rest state") {
    const ModelConfig cfg = dc();
    const BellowSolution rest = solve_bellow_geometry(cfg.lisper, cfg.material, 0.0, rc(cfg));
    const double half = 0.5 * cfg.lisper.l_base;
    for (int i = -4; i <= 4; ++i) {
        const double x = half * i / 4.0;
        CHECK(compression_force_2d(rest, rest, cfg.lisper, cfg.material,
                                   cfg.lisper.theta_initial, x) == 0.0);
    }
}

TEST_CASE("sectional force follows the fold-hinge construction") {
    const ModelConfig cfg = dc();
    const auto& g = cfg.lisper;
    const auto& m = cfg.material;
    const BellowSolution sol = solve_bellow_geometry(g, m, 5.0e4, rc(cfg));
    const BellowSolution rest = solve_bellow_geometry(g, m, 0.0, rc(cfg));
    const double theta = deg_to_rad(45.0);
    const double x = 0.001;

    const double a_new = g.h2 + chamber_height(sol, g, x);
    const double a_old = g.h2 + chamber_height(rest, g, x);
    const double dl = law_of_cosines(a_new, g.h2, theta / (2.0 * g.n_bellows)) -
                      law_of_cosines(a_old, g.h2, g.theta_initial / (2.0 * g.n_bellows));
    const double expected = (g.d_bellow_wall + dl / m.poisson) * dl * m.e_silicone;
    CHECK(compression_force_2d(sol, rest, g, m, theta, x) ==
          doctest::Approx(expected).epsilon(1e-12));
}

TEST_CASE("shorter plate distance than rest gives a negative force") {
    ModelConfig cfg = dc();
    cfg.lisper.theta_initial = 0.3;
    const BellowSolution rest = solve_bellow_geometry(cfg.lisper, cfg.material, 0.0, rc(cfg));
    const double f =
        compression_force_2d(rest, rest, cfg.lisper, cfg.material, 0.1, 0.0);
    CHECK(f < 0.0);
}

TEST_CASE("sectional integral matches a fixed fine rule") {
    const ModelConfig cfg = dc();
    const auto& g = cfg.lisper;
    const BellowSolution sol = solve_bellow_geometry(g, cfg.material, 5.0e4, rc(cfg));
    const BellowSolution rest = solve_bellow_geometry(g, cfg.material, 0.0, rc(cfg));
    const double theta = deg_to_rad(45.0);
    auto f = [&](double x) {
        return compression_force_2d(sol, rest, g, cfg.material, theta, x);
    };
    const double half = 0.5 * g.l_base;
    const double oracle = integrate(f, -half, half, 8192);
    const double value = compression_force_3d(sol, rest, g, cfg.material, theta, cfg.sim);
    CHECK(value == doctest::Approx(oracle).epsilon(1e-4));
}

TEST_CASE("bellow share doubles when cells and bend double together") {
    const ModelConfig cfg = dc();
    const auto& m = cfg.material;
    const BellowSolution sol = solve_bellow_geometry(cfg.lisper, m, 5.0e4, rc(cfg));
    const BellowSolution rest = solve_bellow_geometry(cfg.lisper, m, 0.0, rc(cfg));
    LisperGeometry doubled = cfg.lisper;
    doubled.n_bellows = 2 * cfg.lisper.n_bellows;
    // per-cell fold angle theta/(2N) is unchanged, so shares add linearly
    const double one = bellow_force(sol, rest, cfg.lisper, m, 0.45, cfg.sim);
    const double two = bellow_force(sol, rest, doubled, m, 0.90, cfg.sim);
    CHECK(two == doctest::Approx(2.0 * one).epsilon(1e-12));
}

TEST_CASE("bellow share scales inversely with the lever arm") {
    const ModelConfig cfg = dc();
    const auto& m = cfg.material;
    const BellowSolution sol = solve_bellow_geometry(cfg.lisper, m, 5.0e4, rc(cfg));
    const BellowSolution rest = solve_bellow_geometry(cfg.lisper, m, 0.0, rc(cfg));
    LisperGeometry halved = cfg.lisper;
    halved.l_equiv = 0.5 * cfg.lisper.l_equiv;
    const double one = bellow_force(sol, rest, cfg.lisper, m, 0.6, cfg.sim);
    const double two = bellow_force(sol, rest, halved, m, 0.6, cfg.sim);
    CHECK(two == doctest::Approx(2.0 * one).epsilon(1e-12));
}

TEST_CASE("feet share is area times pressure") {
    ModelConfig cfg = dc();
    cfg.lisper.a_feet = 0.001;
    CHECK(feet_force(cfg.lisper, 1.0e5) == doctest::Approx(100.0).epsilon(1e-15));
    CHECK(feet_force(cfg.lisper, 2.0e4) == 2.0 * feet_force(cfg.lisper, 1.0e4));
    CHECK(feet_force(cfg.lisper, 0.0) == 0.0);
}

TEST_CASE("restoring share is zero at rest and odd around it") {
    const ModelConfig cfg = dc();
    const auto& g = cfg.lisper;
    CHECK(arc_restoring_force(g, cfg.material, g.theta_initial) == 0.0);
    CHECK(arc_restoring_force(g, cfg.material, g.theta_initial + 0.2) ==
          -arc_restoring_force(g, cfg.material, g.theta_initial - 0.2));
}

TEST_CASE("restoring share arithmetic") {
    ModelConfig cfg = dc();
    cfg.lisper.a_base = 1.0e-4;
    cfg.lisper.r_base = 0.04;
    cfg.lisper.theta_initial = 0.0;
    // 0.5 * 1e-4 * 1.53e6 * 0.04
    CHECK(arc_restoring_force(cfg.lisper, cfg.material, 0.5) ==
          doctest::Approx(3.06).epsilon(1e-12));
}

} // TEST_SUITE

TEST_SUITE("output force") {

TEST_CASE("rest state is an exact equilibrium") {
    const ModelConfig cfg = dc();
    const ForceBreakdown fb =
        output_force(cfg.lisper, cfg.material, 0.0, cfg.lisper.theta_initial, cfg.sim);
    CHECK(fb.f_total1 == 0.0);
    CHECK(fb.f_total2 == 0.0);
    CHECK(fb.f_total3 == 0.0);
    CHECK(fb.f_output == 0.0);
}

TEST_CASE("output combines the three shares through the moment balance") {
    const ModelConfig cfg = dc();
    const auto& g = cfg.lisper;
    const ForceBreakdown fb =
        output_force(g, cfg.material, 5.0e4, deg_to_rad(45.0), cfg.sim);
    const double expected =
        (g.l_equiv * (fb.f_total1 + fb.f_total2) - g.r_base * fb.f_total3) / g.l_equiv;
    CHECK(fb.f_output == expected);
}

TEST_CASE("output force increases strictly with pressure") {
    const ModelConfig cfg = dc();
    for (double theta_deg : {0.0, 30.0, 60.0}) {
        const double theta = deg_to_rad(theta_deg);
        for (double p : {2.0e4, 5.0e4, 8.0e4}) {
            const double slope = central_diff(
                [&](double q) {
                    return output_force(cfg.lisper, cfg.material, q, theta, cfg.sim).f_output;
                },
                p, 100.0);
            CHECK(slope > 0.0);
        }
    }
}

TEST_CASE("repeated evaluation is bit-stable") {
    const ModelConfig cfg = dc();
    const ForceBreakdown a = output_force(cfg.lisper, cfg.material, 7.3e4, 0.41, cfg.sim);
    const ForceBreakdown b = output_force(cfg.lisper, cfg.material, 7.3e4, 0.41, cfg.sim);
    CHECK(a.f_output == b.f_output);
    CHECK(a.f_total1 == b.f_total1);
}

TEST_CASE("bellow contribution at the working point") {
    const ModelConfig cfg = dc();
    const double pct =
        bellow_contribution(cfg.lisper, cfg.material, 5.0e4, deg_to_rad(45.0), cfg.sim);
    CHECK(pct >= 25.0);
    CHECK(pct <= 45.0);
}

TEST_CASE("contribution is undefined at equilibrium") {
    const ModelConfig cfg = dc();
    CHECK_THROWS_AS(bellow_contribution(cfg.lisper, cfg.material, 0.0,
                                        cfg.lisper.theta_initial, cfg.sim),
                    ModelError);
}

} // TEST_SUITE

TEST_SUITE("free angle and inverse") {

TEST_CASE("zero pressure rests at the initial angle") {
    const ModelConfig cfg = dc();
    CHECK(free_bending_angle(cfg.lisper, cfg.material, 0.0, cfg.sim) ==
          cfg.lisper.theta_initial);
    CHECK(free_bending_angle(cfg.lisper, cfg.material, 1.0, cfg.sim) ==
          doctest::Approx(cfg.lisper.theta_initial).epsilon(1e-3));
}

TEST_CASE("negative pressure throws") {
    const ModelConfig cfg = dc();
    CHECK_THROWS_AS(free_bending_angle(cfg.lisper, cfg.material, -1.0, cfg.sim), ModelError);
}

TEST_CASE("calibrated free angle at full pressure") {
    const ModelConfig cfg = dc();
    const double deg = rad_to_deg(free_bending_angle(cfg.lisper, cfg.material, 1.0e5, cfg.sim));
    CHECK(deg > 0.7 * 112.2);
    CHECK(deg < 1.3 * 112.2);
}

TEST_CASE("free angle is a zero of the output force") {
    const ModelConfig cfg = dc();
    const double theta = free_bending_angle(cfg.lisper, cfg.material, 6.0e4, cfg.sim);
    const double f = output_force(cfg.lisper, cfg.material, 6.0e4, theta, cfg.sim).f_output;
    CHECK(std::fabs(f) < 1e-6);
}

TEST_CASE("free angle grows with pressure") {
    const ModelConfig cfg = dc();
    double prev = -1.0;
    for (double p : {2.0e4, 4.0e4, 6.0e4, 8.0e4, 1.0e5}) {
        const double theta = free_bending_angle(cfg.lisper, cfg.material, p, cfg.sim);
        CHECK(theta > prev);
        prev = theta;
    }
}

TEST_CASE("a vanishing restoring section has no unloaded equilibrium") {
    ModelConfig cfg = dc();
    cfg.lisper.a_base = 1e-12;
    CHECK_THROWS_AS(free_bending_angle(cfg.lisper, cfg.material, 5.0e4, cfg.sim), ModelError);
}

TEST_CASE("inverse pressure at the rest equilibrium is zero") {
    const ModelConfig cfg = dc();
    CHECK(inverse_pressure(cfg.lisper, cfg.material, cfg.lisper.theta_initial, 0.0, cfg.sim) ==
          0.0);
}

TEST_CASE("forward and inverse round trip over the working range") {
    const ModelConfig cfg = dc();
    for (double theta_deg : {0.0, 45.0, 60.0}) {
        const double theta = deg_to_rad(theta_deg);
        for (double p_kpa = 5.0; p_kpa <= 100.0; p_kpa += 19.0) {
            const double p = kpa_to_pa(p_kpa);
            const double f = output_force(cfg.lisper, cfg.material, p, theta, cfg.sim).f_output;
            const double back = inverse_pressure(cfg.lisper, cfg.material, theta, f, cfg.sim);
            CHECK(back == doctest::Approx(p).epsilon(1e-6));
        }
    }
}

TEST_CASE("unreachable forces name the achievable range") {
    const ModelConfig cfg = dc();
    CHECK_THROWS_WITH_AS(
        static_cast<void>(inverse_pressure(cfg.lisper, cfg.material, 0.0, 1.0e5, cfg.sim)),
        doctest::Contains("achievable"), ModelError);
}

} // TEST_SUITE
