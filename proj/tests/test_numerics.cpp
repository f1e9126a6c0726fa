#include "doctest.h"

#include "pneumodel/errors.hpp"
#include "pneumodel/numerics.hpp"
#include "pneumodel/units.hpp"

#include <cmath>
#include <utility>
#include <vector>

using namespace pneumodel;

TEST_SUITE("root finding") {

TEST_CASE("linear root lands on the exact zero") {
    const double r = find_root_bracketed([](double x) { return x - 1.0; }, 0.0, 2.0, {});
    CHECK(std::fabs(r - 1.0) <= 1e-12);
}

TEST_CASE("cosine root matches pi/2") {
    const double r = find_root_bracketed([](double x) { return std::cos(x); }, 1.0, 2.0, {});
    CHECK(r == doctest::Approx(kPi / 2.0).epsilon(1e-12));
}

TEST_CASE("endpoint already at a root is returned unchanged") {
    const double r = find_root_bracketed([](double x) { return x; }, 0.0, 1.0, {});
    CHECK(r == 0.0);
}

TEST_CASE("missing sign change throws") {
    CHECK_THROWS_AS(find_root_bracketed([](double x) { return x * x + 1.0; }, -1.0, 1.0, {}),
                    ModelError);
}

TEST_CASE("reversed bracket throws") {
    CHECK_THROWS_AS(find_root_bracketed([](double x) { return x; }, 1.0, -1.0, {}), ModelError);
}

TEST_CASE("every evaluation stays inside the bracket") {
    std::vector<double> seen;
    auto f = [&](double x) {
        seen.push_back(x);
        return std::tanh(1e6 * (x - 0.3));
    };
    const double r = find_root_bracketed(f, 0.0, 1.0, {});
    CHECK(r == doctest::Approx(0.3).epsilon(1e-9));
    for (double x : seen) {
        CHECK(x >= 0.0);
        CHECK(x <= 1.0);
    }
}

TEST_CASE("iteration cap throws instead of returning a bad point") {
    RootConfig cfg;
    cfg.abs_tol = 0.0;
    cfg.x_tol = 0.0;
    cfg.max_iter = 3;
    CHECK_THROWS_AS(
        find_root_bracketed([](double x) { return x * x - 2.0; }, 0.0, 2.0, cfg),
        ModelError);
}

} // TEST_SUITE

TEST_SUITE("quadrature") {

TEST_CASE("constant integrand is exact at the minimum rule") {
    CHECK(integrate([](double) { return 1.0; }, 0.0, 1.0, 2) == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("cubic is integrated exactly") {
    const double v = integrate([](double x) { return x * x * x; }, 0.0, 1.0, 2);
    CHECK(v == doctest::Approx(0.25).epsilon(1e-14));
}

TEST_CASE("sine over a half period") {
    const double v = integrate([](double x) { return std::sin(x); }, 0.0, kPi, 256);
    CHECK(v == doctest::Approx(2.0).epsilon(1e-8));
}

TEST_CASE("linearity and interval additivity") {
    auto f = [](double x) { return std::exp(x); };
    auto g = [](double x) { return std::cos(3.0 * x); };
    const double lhs = integrate([&](double x) { return 2.0 * f(x) + 3.0 * g(x); }, 0.0, 1.5, 128);
    const double rhs = 2.0 * integrate(f, 0.0, 1.5, 128) + 3.0 * integrate(g, 0.0, 1.5, 128);
    CHECK(lhs == doctest::Approx(rhs).epsilon(1e-12));

    const double whole = integrate(f, 0.0, 2.0, 512);
    const double split = integrate(f, 0.0, 0.75, 512) + integrate(f, 0.75, 2.0, 512);
    CHECK(whole == doctest::Approx(split).epsilon(1e-10));
}

TEST_CASE("degenerate interval integrates to zero") {
    CHECK(integrate([](double x) { return std::exp(x); }, 1.0, 1.0, 2) == 0.0);
}

TEST_CASE("invalid subdivision counts throw") {
    auto f = [](double x) { return x; };
    CHECK_THROWS_AS(integrate(f, 0.0, 1.0, 3), ModelError);
    CHECK_THROWS_AS(integrate(f, 0.0, 1.0, 0), ModelError);
    CHECK_THROWS_AS(integrate(f, 0.0, 1.0, -2), ModelError);
    CHECK_THROWS_AS(integrate(f, 1.0, 0.0, 2), ModelError);
}

TEST_CASE("adaptive refinement matches a fine fixed rule") {
    auto f = [](double x) { return std::exp(-x) * std::sin(5.0 * x); };
    const double adaptive = integrate_adaptive(f, 0.0, 2.0, 1e-10, 4, 8192);
    const double fine = integrate(f, 0.0, 2.0, 8192);
    CHECK(adaptive == doctest::Approx(fine).epsilon(1e-9));
}

TEST_CASE("adaptive hits a known antiderivative") {
    const double v = integrate_adaptive([](double x) { return std::exp(x); }, 0.0, 1.0);
    CHECK(v == doctest::Approx(std::exp(1.0) - 1.0).epsilon(1e-8));
}

} // TEST_SUITE

TEST_SUITE("quadratic fit") {

TEST_CASE("recovers known coefficients from its own samples") {
    const double a2 = 0.0145, a1 = 3.0507, a0 = -1.1438;
    std::vector<std::pair<double, double>> pts;
    for (int i = 0; i <= 10; ++i) {
        const double x = 15.0 * i;
        pts.push_back({x, a2 * x * x + a1 * x + a0});
    }
    const auto c = fit_quadratic(pts);
    CHECK(c[0] == doctest::Approx(a2).epsilon(1e-9));
    CHECK(c[1] == doctest::Approx(a1).epsilon(1e-9));
    CHECK(c[2] == doctest::Approx(a0).epsilon(1e-9));
}

TEST_CASE("collinear points give a vanishing quadratic term") {
    std::vector<std::pair<double, double>> pts;
    for (int i = 0; i <= 6; ++i) pts.push_back({0.5 * i, 2.0 * (0.5 * i) - 3.0});
    const auto c = fit_quadratic(pts);
    CHECK(std::fabs(c[0]) <= 1e-9);
    CHECK(c[1] == doctest::Approx(2.0).epsilon(1e-9));
    CHECK(c[2] == doctest::Approx(-3.0).epsilon(1e-9));
}

TEST_CASE("constant data gives a constant fit") {
    std::vector<std::pair<double, double>> pts = {{0.0, 4.0}, {1.0, 4.0}, {2.0, 4.0}, {3.0, 4.0}};
    const auto c = fit_quadratic(pts);
    CHECK(std::fabs(c[0]) <= 1e-12);
    CHECK(std::fabs(c[1]) <= 1e-12);
    CHECK(c[2] == doctest::Approx(4.0).epsilon(1e-12));
}

TEST_CASE("result does not depend on sample order") {
    std::vector<std::pair<double, double>> pts;
    for (int i = 0; i <= 8; ++i) {
        const double x = 1.0 + 0.7 * i;
        pts.push_back({x, -0.3 * x * x + 1.1 * x + 0.25});
    }
    const auto a = fit_quadratic(pts);
    std::vector<std::pair<double, double>> rev(pts.rbegin(), pts.rend());
    std::swap(rev[0], rev[4]);
    const auto b = fit_quadratic(rev);
    for (int i = 0; i < 3; ++i) CHECK(a[i] == doctest::Approx(b[i]).epsilon(1e-9));
}

TEST_CASE("too few or degenerate samples throw") {
    CHECK_THROWS_AS(fit_quadratic({{0.0, 1.0}, {1.0, 2.0}}), ModelError);
    CHECK_THROWS_AS(fit_quadratic({{2.0, 1.0}, {2.0, 2.0}, {2.0, 3.0}, {2.0, 4.0}}), ModelError);
}

} // TEST_SUITE

TEST_SUITE("difference quotient") {

TEST_CASE("exact on quadratics") {
    const double d = central_diff([](double x) { return x * x; }, 3.0, 1e-3);
    CHECK(d == doctest::Approx(6.0).epsilon(1e-9));
}

TEST_CASE("zero on constants") {
    CHECK(central_diff([](double) { return 42.0; }, 1.0, 1e-4) == 0.0);
}

TEST_CASE("exponential slope at the origin") {
    const double d = central_diff([](double x) { return std::exp(x); }, 0.0, 1e-5);
    CHECK(d == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("non-positive step throws") {
    CHECK_THROWS_AS(central_diff([](double x) { return x; }, 0.0, 0.0), ModelError);
    CHECK_THROWS_AS(central_diff([](double x) { return x; }, 0.0, -1e-3), ModelError);
}

} // TEST_SUITE
