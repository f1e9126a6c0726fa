#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace pneumodel {

struct MaterialParams {
    double e_silicone = 1.53e6; // Pa, silicone rubber modulus
    double poisson = 0.5;       // silicone Poisson ratio
    double e_pipe = 1.2e8;      // Pa, PU connecting-pipe modulus
};

// Bellow-actuator geometry. Angles in radians, lengths in meters, areas in m^2.
// The outer envelope (base pitch, bellow count, lever arms) follows the built
// 132 x 55 x 92 mm unit with 15 bellows; internal dimensions are not published
// for the physical actuator, so the starred fields below are calibrated once
// against its measured behavior (see README "Calibration") and marked in the
// default config.
struct LisperGeometry {
    double beta = 1.0995574287564276;  // half ring angle (63 deg)
    double r_inner = 0.0008;           // inner ring radius
    double r_outer = 0.0016;           // outer ring radius
    double l_thick = 1.5;              // strain-scale thickness parameter (*), see README
    double l_base = 0.0088;            // base length of one bellow cell
    double l_wall_initial = 0.0;       // side wall length at rest; default derived, see default_config()
    double h_base = 0.0092;            // base-to-base height (validation only)
    double r2_external = 0.0075;       // center-to-external-ring radius (validation only)
    double d_bellow_wall = 0.012;      // bellow wall width entering the force law
    int n_bellows = 15;
    double gamma = 0.0360633652694;    // tip-extension angle (*), calibrated
    double l_equiv = 0.048;            // equivalent moment arm at the output
    double h2 = 0.067;                 // rotation axis to bellow base plane
    double a_feet = 1.20573558031e-4;  // feet area (*), calibrated
    double a_base = 1.34164081413e-4;  // base sectional area (*), calibrated
    double r_base = 0.04;              // equivalent-force arm of the base section
    double theta_initial = 0.0;        // bending angle at rest
    double r_mid() const { return 0.5 * (r_inner + r_outer); }
};

struct ScasperGeometry {
    int n_bags = 6;            // even
    double bag_width = 0.09;   // m
    double bag_length = 0.11;  // m
    double r1 = 0.0075;        // contact-point moment arm, m
    double l_pipe = 0.05;      // pipe segment length between bags, m
    double d1 = 0.002;         // pipe inner diameter, m
    double d2 = 0.004;         // pipe outer diameter, m
    double poly_a2 = 0.0145;   // pressure-to-angle quadratic fit, degrees out
    double poly_a1 = 3.0507;
    double poly_a0 = -1.1438;
};

struct ArmParams {
    double l1 = 0.28;      // upper link length, m
    double l2 = 0.25;      // forearm link length, m
    double m1 = 1.5;       // kg
    double m2 = 1.0;       // kg
    double r_com1 = 0.10;  // COM distance along link 1, m
    double r_com2 = 0.03;  // COM distance along link 2, m
    double g = 9.81;       // m/s^2
    double elbow_min = -0.17453292519943295;   // rad (-10 deg)
    double elbow_max = 0.5235987755982988;     // rad (30 deg)
    double shoulder_min = 0.2792526803190927;  // rad (16 deg)
    double shoulder_max = 1.0471975511965976;  // rad (60 deg)
};

struct PidGains {
    double kp = 0.0;
    double ki = 0.0;
    double kd = 0.0;
    double integral_limit = 1.0; // clamp on the integral term, output units
};

struct ControlParams {
    // Model-based position control: PID output is a force (N) at the elbow,
    // a torque (N*m) at the shoulder. Tuned on the simulated plant at 0.25 Hz
    // over the full joint ranges; the integral limit is kept close to the
    // gravity holding torque so turn-around unwind recovers quickly.
    PidGains elbow{80.0, 75.0, 1.0, 4.0};
    PidGains shoulder{55.0, 90.0, 4.0, 6.0};
    // Model-free baseline: PID output is a pressure (Pa) per radian of error.
    // Integral limits exceed the gravity holding pressures so the baseline is
    // not handicapped; it still trails the model-based controller.
    PidGains baseline_elbow{5.0e5, 6.0e5, 1.2e4, 1.1e5};
    PidGains baseline_shoulder{8.0e5, 1.2e6, 4.0e4, 1.6e5};
};

struct SimParams {
    double abs_tol = 1e-12;      // root solver residual tolerance
    double x_tol = 1e-14;        // root solver bracket tolerance
    int max_iter = 200;
    double quad_rel_tol = 1e-8;  // quadrature refinement tolerance
    int quad_n0 = 16;            // per analytic piece; doubled until agreement
    int quad_n_max = 8192;
    double dt = 1e-3;            // plant step, s
    double tau_valve = 0.2;      // valve first-order time constant, s
    double slew_max = 5.0e6;     // valve pressure slew limit, Pa/s
    double p_max_elbow = 1.0e5;  // Pa
    double p_max_shoulder = 1.5e5;
    double damping_elbow = 0.15;    // viscous joint damping, N*m*s/rad
    double damping_shoulder = 1.0;
    bool strip_enabled = false;     // shoulder rubber-strip return spring
    double strip_stiffness = 2.0;   // N*m/rad
    double strip_damping = 0.5;     // N*m*s/rad
    double strip_rest = 0.6632251157578453; // rad (38 deg)
    double imu_rate = 100.0;        // Hz
    double imu_noise_std = 0.3;     // deg
    std::uint64_t seed = 1;
};

struct ModelConfig {
    MaterialParams material;
    LisperGeometry lisper;
    ScasperGeometry scasper;
    ArmParams arm;
    SimParams sim;
    ControlParams control;
};

// Out-of-box configuration; the handful of derived defaults (rest wall length)
// are resolved here so every field holds a concrete number.
ModelConfig default_config();

// Returns one "field: rule" string per violated invariant; empty means valid.
std::vector<std::string> validate(const ModelConfig& cfg);

// Throws ConfigError listing every violation.
void validate_or_throw(const ModelConfig& cfg);

} // namespace pneumodel
