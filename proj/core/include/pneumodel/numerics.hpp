#pragma once

#include <array>
#include <functional>
#include <utility>
#include <vector>

namespace pneumodel {

struct RootConfig {
    double abs_tol = 1e-12; // residual tolerance |f(x)|
    double x_tol = 1e-14;   // bracket width tolerance
    int max_iter = 200;
};

// Bracketed scalar root: bisection with secant acceleration. Requires a sign
// change on [lo, hi] (or an endpoint residual within abs_tol). Never returns
// a point outside the bracket.
double find_root_bracketed(const std::function<double(double)>& f,
                           double lo, double hi, const RootConfig& cfg);

// Composite Simpson rule on [a, b] with n even subintervals.
double integrate(const std::function<double(double)>& f,
                 double a, double b, int n);

// Simpson with automatic subdivision doubling (n0, 2*n0, ...) until two
// successive estimates agree to rel_tol, capped at n_max.
double integrate_adaptive(const std::function<double(double)>& f,
                          double a, double b,
                          double rel_tol = 1e-8, int n0 = 256, int n_max = 8192);

// Least-squares quadratic a2*x^2 + a1*x + a0 through the given points,
// via the 3x3 normal equations with partial pivoting.
std::array<double, 3> fit_quadratic(const std::vector<std::pair<double, double>>& points);

// Symmetric difference quotient (f(x+h) - f(x-h)) / (2h).
double central_diff(const std::function<double(double)>& f, double x, double h);

} // namespace pneumodel
