#include "pneumodel/numerics.hpp"

#include "pneumodel/errors.hpp"

#include <cmath>
#include <sstream>

namespace pneumodel {

double find_root_bracketed(const std::function<double(double)>& f,
                           double lo, double hi, const RootConfig& cfg) {
    if (!(lo <= hi)) throw ModelError("find_root_bracketed: lo > hi");
    double flo = f(lo);
    double fhi = f(hi);
    if (std::fabs(flo) <= cfg.abs_tol) return lo;
    if (std::fabs(fhi) <= cfg.abs_tol) return hi;
    if ((flo > 0.0) == (fhi > 0.0)) {
        std::ostringstream os;
        os << "find_root_bracketed: no sign change on [" << lo << ", " << hi
           << "], f = (" << flo << ", " << fhi << ")";
        throw ModelError(os.str());
    }

    double a = lo, b = hi, fa = flo, fb = fhi;
    for (int it = 0; it < cfg.max_iter; ++it) {
        // Secant candidate, kept only if it lands strictly inside the bracket;
        // otherwise bisect. Guarantees convergence on non-smooth residuals.
        double mid = 0.5 * (a + b);
        double x = mid;
        double denom = fb - fa;
        if (denom != 0.0) {
            double sec = b - fb * (b - a) / denom;
            if (sec > a && sec < b) x = sec;
        }
        double fx = f(x);
        if (std::fabs(fx) <= cfg.abs_tol || (b - a) <= cfg.x_tol) return x;
        if ((fx > 0.0) == (fa > 0.0)) {
            a = x;
            fa = fx;
        } else {
            b = x;
            fb = fx;
        }
        // Interleave one bisection per iteration so the bracket provably halves
        // even when secant steps cluster at one endpoint.
        if ((b - a) > cfg.x_tol) {
            double m = 0.5 * (a + b);
            double fm = f(m);
            if (std::fabs(fm) <= cfg.abs_tol) return m;
            if ((fm > 0.0) == (fa > 0.0)) {
                a = m;
                fa = fm;
            } else {
                b = m;
                fb = fm;
            }
        }
        if ((b - a) <= cfg.x_tol) return 0.5 * (a + b);
    }
    std::ostringstream os;
    os << "find_root_bracketed: max iterations (" << cfg.max_iter
       << ") reached, bracket [" << a << ", " << b << "]";
    throw ModelError(os.str());
}

double integrate(const std::function<double(double)>& f,
                 double a, double b, int n) {
    if (n < 2 || (n % 2) != 0) throw ModelError("integrate: n must be even and >= 2");
    if (!(a <= b)) throw ModelError("integrate: a > b");
    if (a == b) return 0.0;
    const double h = (b - a) / n;
    double sum = f(a) + f(b);
    for (int i = 1; i < n; ++i) {
        const double x = a + i * h;
        sum += f(x) * ((i % 2) ? 4.0 : 2.0);
    }
    return sum * h / 3.0;
}

double integrate_adaptive(const std::function<double(double)>& f,
                          double a, double b,
                          double rel_tol, int n0, int n_max) {
    int n = n0;
    double prev = integrate(f, a, b, n);
    while (n < n_max) {
        n *= 2;
        const double cur = integrate(f, a, b, n);
        const double scale = std::max({std::fabs(cur), std::fabs(prev), 1e-300});
        if (std::fabs(cur - prev) <= rel_tol * scale) return cur;
        prev = cur;
    }
    return prev;
}

std::array<double, 3> fit_quadratic(const std::vector<std::pair<double, double>>& points) {
    if (points.size() < 3) throw ModelError("fit_quadratic: need at least 3 points");

    // Normal equations for the basis (x^2, x, 1).
    double s0 = static_cast<double>(points.size());
    double s1 = 0, s2 = 0, s3 = 0, s4 = 0;
    double t0 = 0, t1 = 0, t2 = 0;
    for (const auto& [x, y] : points) {
        const double x2 = x * x;
        s1 += x;
        s2 += x2;
        s3 += x2 * x;
        s4 += x2 * x2;
        t0 += y;
        t1 += x * y;
        t2 += x2 * y;
    }
    double m[3][4] = {
        {s4, s3, s2, t2},
        {s3, s2, s1, t1},
        {s2, s1, s0, t0},
    };

    // Gaussian elimination with partial pivoting on the 3x3 system.
    for (int col = 0; col < 3; ++col) {
        int piv = col;
        for (int r = col + 1; r < 3; ++r)
            if (std::fabs(m[r][col]) > std::fabs(m[piv][col])) piv = r;
        if (std::fabs(m[piv][col]) < 1e-12 * std::max(1.0, std::fabs(s4))) {
            throw ModelError("fit_quadratic: degenerate design (all x nearly identical)");
        }
        if (piv != col)
            for (int c = 0; c < 4; ++c) std::swap(m[piv][c], m[col][c]);
        for (int r = 0; r < 3; ++r) {
            if (r == col) continue;
            const double k = m[r][col] / m[col][col];
            for (int c = col; c < 4; ++c) m[r][c] -= k * m[col][c];
        }
    }
    return {m[0][3] / m[0][0], m[1][3] / m[1][1], m[2][3] / m[2][2]};
}

double central_diff(const std::function<double(double)>& f, double x, double h) {
    if (!(h > 0.0)) throw ModelError("central_diff: h must be > 0");
    return (f(x + h) - f(x - h)) / (2.0 * h);
}

} // namespace pneumodel
