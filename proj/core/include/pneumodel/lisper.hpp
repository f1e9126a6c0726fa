#pragma once

#include "pneumodel/domain.hpp"
#include "pneumodel/numerics.hpp"

namespace pneumodel {

// Inflated cross-section of one bellow cell at a given pressure.
struct BellowSolution {
    double s_new = 0.0;       // inflated ring arc length, m
    double l_wall_new = 0.0;  // inflated side wall length, m
    double theta2 = 0.0;      // ring subtended angle, rad
    double theta3 = 0.0;      // base-wall angle, rad (= theta2 / 2)
    double r_new = 0.0;       // inflated ring radius, m
};

struct ForceBreakdown {
    double f_total1 = 0.0; // bellow compression share, N
    double f_total2 = 0.0; // feet pressure share, N
    double f_total3 = 0.0; // base arc restoring share
    double f_output = 0.0; // net output force at the lever, N
};

// Ring arc length under pressure: 2*beta*r / (1 - l_thick*P/(E*nu)).
// Throws past the material pole l_thick*P/(E*nu) >= 1.
double arc_length_inflated(const LisperGeometry& g, const MaterialParams& m, double p);

// Side wall length under pressure: l_wall_initial * (1 + l_thick*P/(E*nu)).
double wall_length_inflated(const LisperGeometry& g, const MaterialParams& m, double p);

// Solves the cell closure system for the inflated geometry. Reduced to one
// scalar equation in theta2 (theta3 = theta2/2 and r_new = s_new/theta2
// substituted), bracketed on (1e-6, pi).
BellowSolution solve_bellow_geometry(const LisperGeometry& g, const MaterialParams& m,
                                     double p, const RootConfig& cfg);

// Sectional contour height over the cell base, x in [-l_base/2, l_base/2].
// Piecewise: straight wall segments at both ends, circular arc in the middle;
// continuous and tangent at the junctions.
double chamber_height(const BellowSolution& sol, const LisperGeometry& g, double x);

// Third side of a triangle with sides a, b and included angle alpha.
double law_of_cosines(double a, double b, double alpha);

// Lateral compression force per unit length at section x for bend angle
// theta_bend. The fold is hinged at the base corner (lever h2): the rest
// plate distance uses the zero-pressure contour and rest bend angle, the
// current distance uses the inflated contour and current bend angle. The
// returned value is signed (extension counts negative).
double compression_force_2d(const BellowSolution& sol, const BellowSolution& rest,
                            const LisperGeometry& g, const MaterialParams& m,
                            double theta_bend, double x);

// Integral of compression_force_2d across the cell base.
double compression_force_3d(const BellowSolution& sol, const BellowSolution& rest,
                            const LisperGeometry& g, const MaterialParams& m,
                            double theta_bend, const SimParams& sim);

// Total bellow share at the output lever: per-bellow normal components summed
// over all cells and referred through l_equiv.
double bellow_force(const BellowSolution& sol, const BellowSolution& rest,
                    const LisperGeometry& g, const MaterialParams& m,
                    double theta_bend, const SimParams& sim);

// Feet share: a_feet * P.
double feet_force(const LisperGeometry& g, double p);

// Base arc restoring share: (theta_bend - theta_initial) * a_base * E * r_base.
double arc_restoring_force(const LisperGeometry& g, const MaterialParams& m, double theta_bend);

// Moment balance at the output lever; populates all shares.
ForceBreakdown output_force(const LisperGeometry& g, const MaterialParams& m,
                            double p, double theta_bend, const SimParams& sim);

// Bellow share of the net output, percent. Throws when the net output is zero.
double bellow_contribution(const LisperGeometry& g, const MaterialParams& m,
                           double p, double theta_bend, const SimParams& sim);

// Unloaded equilibrium: bend angle where the net output force crosses zero.
double free_bending_angle(const LisperGeometry& g, const MaterialParams& m,
                          double p, const SimParams& sim);

// Pressure producing f_desired at the given bend angle, searched on
// [0, 150 kPa]. Throws naming the achievable range when out of reach.
double inverse_pressure(const LisperGeometry& g, const MaterialParams& m,
                        double theta_bend, double f_desired, const SimParams& sim);

} // namespace pneumodel
