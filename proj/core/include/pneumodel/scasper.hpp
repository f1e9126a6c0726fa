#pragma once

#include "pneumodel/domain.hpp"

namespace pneumodel {

struct TorqueBreakdown {
    double tau_bag = 0.0; // airbag work-balance torque, N*m
    double m_pipe = 0.0;  // connecting-pipe bending resistance, N*m
    double m_total = 0.0; // tau_bag - m_pipe
};

// Quadratic pressure-to-extension-angle fit. Evaluated on the raw numeric
// value supplied (the fit's native pressure units); returns degrees.
double extension_angle(const ScasperGeometry& g, double p);

// Work-balance torque of the stacked airbags: width * length * r1 * P / 2.
// Independent of the extension angle.
double bag_torque(const ScasperGeometry& g, double p);

// Second moment of area of the pipe annulus, pi*(d2^4 - d1^4)/32.
double pipe_area_moment(const ScasperGeometry& g);

// Bending resistance of the connecting pipes at extension theta_real:
// 2 * sum_{k=1..N/2} E*I/R_k with R_k = l_pipe / (k*theta/N); linear in theta.
double pipe_moment(const ScasperGeometry& g, const MaterialParams& m, double theta_real);

// Net torque breakdown at pressure p (Pa) and extension theta_real (rad).
TorqueBreakdown total_torque(const ScasperGeometry& g, const MaterialParams& m,
                             double p, double theta_real);

// Closed-form pressure for a desired net torque at theta_real:
// p = 2*(m_desired + m_pipe) / (width * length * r1). Throws when the
// requirement would need negative pressure.
double inverse_pressure_scasper(const ScasperGeometry& g, const MaterialParams& m,
                                double theta_real, double m_desired);

} // namespace pneumodel
