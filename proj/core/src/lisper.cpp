#include "pneumodel/lisper.hpp"

#include "pneumodel/errors.hpp"
#include "pneumodel/units.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace pneumodel {

namespace {

RootConfig root_cfg(const SimParams& sim) {
    return RootConfig{sim.abs_tol, sim.x_tol, sim.max_iter};
}

// Strain ratio of the inflation law. l_thick is the calibrated strain-scale
// thickness parameter (see README); the ratio is dimensionless as used.
double strain_ratio(const LisperGeometry& g, const MaterialParams& m, double p) {
    return g.l_thick * p / (m.e_silicone * m.poisson);
}

} // namespace

double arc_length_inflated(const LisperGeometry& g, const MaterialParams& m, double p) {
    const double k = strain_ratio(g, m, p);
    if (k >= 1.0) {
        std::ostringstream os;
        os << "arc_length_inflated: pressure " << p
           << " Pa at or past the material pole (limit "
           << m.e_silicone * m.poisson / g.l_thick << " Pa)";
        throw ModelError(os.str());
    }
    return 2.0 * g.beta * g.r_mid() / (1.0 - k);
}

double wall_length_inflated(const LisperGeometry& g, const MaterialParams& m, double p) {
    return g.l_wall_initial * (1.0 + strain_ratio(g, m, p));
}

BellowSolution solve_bellow_geometry(const LisperGeometry& g, const MaterialParams& m,
                                     double p, const RootConfig& cfg) {
    const double s = arc_length_inflated(g, m, p);
    const double w = wall_length_inflated(g, m, p);

    // Closure residual in the ring angle t = theta2, with theta3 = t/2 and
    // r_new = s/t substituted: base span reach minus wall minus ring tangent.
    auto closure = [&](double t) {
        return g.l_base / (2.0 * std::cos(0.5 * t)) - w - (s / t) * std::tan(0.5 * t);
    };

    const double lo = 1e-6;
    const double hi = kPi - 1e-9;
    if (closure(lo) > 0.0 && closure(hi) > 0.0) {
        std::ostringstream os;
        os << "solve_bellow_geometry: no closure bracket at p = " << p
           << " Pa (cell cannot close; check l_base/l_wall/ring radii)";
        throw ModelError(os.str());
    }
    const double t = find_root_bracketed(closure, lo, hi, cfg);

    BellowSolution sol;
    sol.s_new = s;
    sol.l_wall_new = w;
    sol.theta2 = t;
    sol.theta3 = 0.5 * t;
    sol.r_new = s / t;
    return sol;
}

double chamber_height(const BellowSolution& sol, const LisperGeometry& g, double x) {
    const double half = 0.5 * g.l_base;
    if (std::fabs(x) > half * (1.0 + 1e-12)) {
        std::ostringstream os;
        os << "chamber_height: x = " << x << " outside [-" << half << ", " << half << "]";
        throw ModelError(os.str());
    }
    const double ax = std::min(std::fabs(x), half);
    // Wall-arc junction; equals r_new*sin(theta2/2) when the closure holds.
    const double xb = half - sol.l_wall_new * std::cos(sol.theta3);
    if (ax >= xb) {
        return std::tan(sol.theta3) * (half - ax);
    }
    const double arc = sol.r_new * sol.r_new - ax * ax;
    return sol.l_wall_new * std::sin(sol.theta3) - sol.r_new * std::cos(0.5 * sol.theta2) +
           std::sqrt(std::max(arc, 0.0));
}

double law_of_cosines(double a, double b, double alpha) {
    // (a-b)^2 + 4ab sin^2(alpha/2) is the cancellation-free expansion of
    // a^2 + b^2 - 2ab cos(alpha); exact collinear distance at alpha = 0.
    const double d = a - b;
    const double s = std::sin(0.5 * alpha);
    return std::sqrt(d * d + 4.0 * a * b * s * s);
}

double compression_force_2d(const BellowSolution& sol, const BellowSolution& rest,
                            const LisperGeometry& g, const MaterialParams& m,
                            double theta_bend, double x) {
    const double alpha = theta_bend / (2.0 * g.n_bellows);
    const double alpha0 = g.theta_initial / (2.0 * g.n_bellows);
    const double oa_new = g.h2 + chamber_height(sol, g, x);
    const double oa_old = g.h2 + chamber_height(rest, g, x);
    const double l_new = law_of_cosines(oa_new, g.h2, alpha);
    const double l_old = law_of_cosines(oa_old, g.h2, alpha0);
    const double dl = l_new - l_old;
    const double a = g.d_bellow_wall + dl / m.poisson;
    return a * dl * m.e_silicone;
}

double compression_force_3d(const BellowSolution& sol, const BellowSolution& rest,
                            const LisperGeometry& g, const MaterialParams& m,
                            double theta_bend, const SimParams& sim) {
    const double half = 0.5 * g.l_base;
    auto f = [&](double x) { return compression_force_2d(sol, rest, g, m, theta_bend, x); };
    // Both contours switch from wall to arc at |x| = xb; splitting there keeps
    // every piece analytic so the refinement ladder stays shallow.
    double cuts[6] = {-half, half};
    int n_cuts = 2;
    for (const BellowSolution* b : {&sol, &rest}) {
        const double xb = half - b->l_wall_new * std::cos(b->theta3);
        if (xb > 0.0 && xb < half) {
            cuts[n_cuts++] = -xb;
            cuts[n_cuts++] = xb;
        }
    }
    std::sort(cuts, cuts + n_cuts);
    double total = 0.0;
    for (int i = 0; i + 1 < n_cuts; ++i) {
        total += integrate_adaptive(f, cuts[i], cuts[i + 1], sim.quad_rel_tol, sim.quad_n0,
                                    sim.quad_n_max);
    }
    return total;
}

double bellow_force(const BellowSolution& sol, const BellowSolution& rest,
                    const LisperGeometry& g, const MaterialParams& m,
                    double theta_bend, const SimParams& sim) {
    const double f3d = compression_force_3d(sol, rest, g, m, theta_bend, sim);
    // Every cell presses on both neighbors (factor 2) through the normal
    // component sin(gamma), acting on the axis-to-rest-apex arm. The arm is
    // the same for each cell; the indexed sum keeps the per-cell structure.
    const double arm = g.h2 + chamber_height(rest, g, 0.0);
    double total = 0.0;
    for (int i = 0; i < g.n_bellows; ++i) {
        total += 2.0 * f3d * std::sin(g.gamma) * arm / g.l_equiv;
    }
    return total;
}

double feet_force(const LisperGeometry& g, double p) {
    return g.a_feet * p;
}

double arc_restoring_force(const LisperGeometry& g, const MaterialParams& m,
                           double theta_bend) {
    return (theta_bend - g.theta_initial) * g.a_base * m.e_silicone * g.r_base;
}

namespace {

ForceBreakdown output_force_solved(const BellowSolution& sol, const BellowSolution& rest,
                                   const LisperGeometry& g, const MaterialParams& m,
                                   double p, double theta_bend, const SimParams& sim) {
    ForceBreakdown fb;
    fb.f_total1 = bellow_force(sol, rest, g, m, theta_bend, sim);
    fb.f_total2 = feet_force(g, p);
    fb.f_total3 = arc_restoring_force(g, m, theta_bend);
    fb.f_output = (g.l_equiv * (fb.f_total1 + fb.f_total2) - g.r_base * fb.f_total3) / g.l_equiv;
    return fb;
}

} // namespace

ForceBreakdown output_force(const LisperGeometry& g, const MaterialParams& m,
                            double p, double theta_bend, const SimParams& sim) {
    const RootConfig rc = root_cfg(sim);
    const BellowSolution sol = solve_bellow_geometry(g, m, p, rc);
    const BellowSolution rest = solve_bellow_geometry(g, m, 0.0, rc);
    return output_force_solved(sol, rest, g, m, p, theta_bend, sim);
}

double bellow_contribution(const LisperGeometry& g, const MaterialParams& m,
                           double p, double theta_bend, const SimParams& sim) {
    const ForceBreakdown fb = output_force(g, m, p, theta_bend, sim);
    if (fb.f_output == 0.0)
        throw ModelError("bellow_contribution: net output force is zero (equilibrium)");
    return fb.f_total1 / fb.f_output * 100.0;
}

double free_bending_angle(const LisperGeometry& g, const MaterialParams& m,
                          double p, const SimParams& sim) {
    if (p < 0.0) throw ModelError("free_bending_angle: pressure must be >= 0");
    if (p == 0.0) return g.theta_initial;

    const RootConfig rc = root_cfg(sim);
    const BellowSolution sol = solve_bellow_geometry(g, m, p, rc);
    const BellowSolution rest = solve_bellow_geometry(g, m, 0.0, rc);
    auto net = [&](double theta) {
        return output_force_solved(sol, rest, g, m, p, theta, sim).f_output;
    };
    const double lo = g.theta_initial;
    const double hi = kPi;
    const double f_hi = net(hi);
    if (f_hi > 0.0) {
        std::ostringstream os;
        os << "free_bending_angle: output force stays positive on ["
           << rad_to_deg(lo) << " deg, " << rad_to_deg(hi)
           << " deg] at p = " << pa_to_kpa(p) << " kPa (no unloaded equilibrium)";
        throw ModelError(os.str());
    }
    // Force crosses zero from above. The residual tolerance scales with the
    // force magnitude at the far bracket so the secant step terminates ahead
    // of quadrature noise; the angle error this admits is below 1e-5 deg.
    RootConfig angle_cfg = rc;
    angle_cfg.abs_tol = 1e-9 + 1e-8 * std::abs(f_hi);
    angle_cfg.x_tol = 1e-12;
    return find_root_bracketed(net, lo, hi, angle_cfg);
}

double inverse_pressure(const LisperGeometry& g, const MaterialParams& m,
                        double theta_bend, double f_desired, const SimParams& sim) {
    const double pole = m.e_silicone * m.poisson / g.l_thick;
    const double p_hi = std::min(1.5e5, 0.999 * pole);

    const RootConfig rc = root_cfg(sim);
    const BellowSolution rest = solve_bellow_geometry(g, m, 0.0, rc);
    auto net = [&](double p) {
        const BellowSolution sol = solve_bellow_geometry(g, m, p, rc);
        return output_force_solved(sol, rest, g, m, p, theta_bend, sim).f_output;
    };

    const double f_lo = net(0.0);
    const double f_hi = net(p_hi);
    if (f_desired < f_lo || f_desired > f_hi) {
        std::ostringstream os;
        os << "inverse_pressure: force " << f_desired << " N unreachable at "
           << rad_to_deg(theta_bend) << " deg; achievable range [" << f_lo
           << ", " << f_hi << "] N for p in [0, " << pa_to_kpa(p_hi) << "] kPa";
        throw ModelError(os.str());
    }
    RootConfig p_cfg = rc;
    // Residual tolerance scales with the reachable force span so the solver
    // stops on the secant step instead of bisecting through quadrature noise;
    // the matching pressure error stays well under 1e-6 relative.
    p_cfg.abs_tol = 1e-9 + 1e-8 * (std::abs(f_lo) + std::abs(f_hi));
    p_cfg.x_tol = 1e-6; // Pa
    return find_root_bracketed([&](double p) { return net(p) - f_desired; },
                               0.0, p_hi, p_cfg);
}

} // namespace pneumodel
