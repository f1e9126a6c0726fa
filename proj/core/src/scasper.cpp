#include "pneumodel/scasper.hpp"

#include "pneumodel/errors.hpp"
#include "pneumodel/units.hpp"

#include <cmath>
#include <sstream>

namespace pneumodel {

double extension_angle(const ScasperGeometry& g, double p) {
    return g.poly_a2 * p * p + g.poly_a1 * p + g.poly_a0;
}

double bag_torque(const ScasperGeometry& g, double p) {
    return 0.5 * g.bag_width * g.bag_length * g.r1 * p;
}

double pipe_area_moment(const ScasperGeometry& g) {
    const double d1sq = g.d1 * g.d1;
    const double d2sq = g.d2 * g.d2;
    return kPi * (d2sq * d2sq - d1sq * d1sq) / 32.0;
}

double pipe_moment(const ScasperGeometry& g, const MaterialParams& m, double theta_real) {
    // Each pipe segment k bends on radius R_k = l_pipe / (k*theta/N); the sum
    // 2 * sum_k E*I/R_k collapses to E*I*theta*(N/2)(N/2+1)/(N*l_pipe).
    const double ei = m.e_pipe * pipe_area_moment(g);
    const double half = g.n_bags / 2;
    return ei * theta_real * half * (half + 1.0) / (g.n_bags * g.l_pipe);
}

TorqueBreakdown total_torque(const ScasperGeometry& g, const MaterialParams& m,
                             double p, double theta_real) {
    TorqueBreakdown tb;
    tb.tau_bag = bag_torque(g, p);
    tb.m_pipe = pipe_moment(g, m, theta_real);
    tb.m_total = tb.tau_bag - tb.m_pipe;
    return tb;
}

double inverse_pressure_scasper(const ScasperGeometry& g, const MaterialParams& m,
                                double theta_real, double m_desired) {
    const double mp = pipe_moment(g, m, theta_real);
    const double p = 2.0 * (m_desired + mp) / (g.bag_width * g.bag_length * g.r1);
    if (p < 0.0) {
        std::ostringstream os;
        os << "inverse_pressure_scasper: torque " << m_desired
           << " N*m at " << rad_to_deg(theta_real)
           << " deg needs negative pressure (" << pa_to_kpa(p) << " kPa)";
        throw ModelError(os.str());
    }
    return p;
}

} // namespace pneumodel
