#pragma once

#include "pneumodel/config.hpp"
#include "pneumodel/domain.hpp"
#include "pneumodel/plant.hpp"

#include <string>
#include <vector>

namespace pneumodel {

enum class JointId { shoulder, elbow };

struct PidState {
    double integral = 0.0;   // accumulated integral term, output units
    double last_meas = 0.0;  // previous measurement for the derivative
    double deriv = 0.0;      // low-pass filtered measurement derivative
    bool has_last = false;
};

// Incremental PID with derivative on measurement and integral clamping.
// The derivative is low-pass filtered (50 ms time constant) so sensor
// noise does not chatter the output. Output units follow the gains
// (force, torque, or pressure).
double pid_step(const PidGains& gains, double error, double measurement,
                PidState& state, double dt);

// Uniformly sampled per-joint trace. Boundary units: degrees, kPa, N*m.
struct Timeseries {
    std::vector<double> t;          // s
    std::vector<double> set_angle;  // deg
    std::vector<double> real_angle; // deg
    std::vector<double> p_cmd;      // kPa
    std::vector<double> p_actual;   // kPa
    std::vector<double> torque;     // N*m
};

struct BandwidthMetrics {
    double range_of_motion = 0.0;  // deg, of the real trace
    double mean_time_error = 0.0;  // s, cross-correlation lag of real behind set
    double max_angular_error = 0.0; // deg, after the first cycle
};

enum class ControlMode { position, gravity, pid_baseline };

struct TrajectorySpec {
    enum class Kind { constant, sine } kind = Kind::constant;
    double value = 0.0;     // rad, constant setpoint
    double amplitude = 0.0; // rad
    double offset = 0.0;    // rad
    double freq = 0.0;      // Hz
    double cycles = 0.0;    // optional run length in cycles
};

struct Scenario {
    ControlMode mode = ControlMode::position;
    double dt = 1e-3;      // s, plant step
    double duration = 0.0; // s
    TrajectorySpec shoulder;
    TrajectorySpec elbow;
};

struct ScenarioResult {
    Timeseries shoulder;
    Timeseries elbow;
};

// Setpoint at time t. Sines start at their minimum (phase -90 deg) so runs
// begin from the posture the plant rests in.
double set_angle(const TrajectorySpec& spec, double t);

// Model-based position controller: zero-load feedforward pressure plus a
// correction from a PID force/torque term passed through the force estimator
// and the inverse model. Returns the clamped pressure command (Pa).
double position_controller_step(const ModelConfig& cfg, JointId joint,
                                double theta_desired, double theta_real,
                                double p_current, PidState& state, double dt);

// Open-loop gravity compensation: holding torques at the measured posture
// through the per-joint inverse models. Angles in rad.
PressureCommand gravity_comp_step(const ModelConfig& cfg,
                                  double theta_shoulder_real, double theta_elbow_real);

// Deterministic closed-loop run: plant stepped at scenario.dt, controller and
// logging at the IMU sample rate, measurement noise from the configured seed.
ScenarioResult run_scenario(const ModelConfig& cfg, const Scenario& scenario);

// Open-loop bench run on one unloaded actuator: a sinusoidal set angle
// spanning the actuator's zero-load range is mapped to pressure through the
// zero-load inverse model and driven through the valve dynamics; the real
// trace is the zero-load forward model at the lagged pressure. No arm, no
// feedback, no sensor noise, so the run is deterministic. Requires at least
// two cycles. Angles are actuator angles in degrees (bend for the elbow,
// extension for the shoulder); the torque column is zero.
Timeseries actuator_bandwidth_run(const ModelConfig& cfg, JointId joint,
                                  double freq_hz, double cycles);

// Tracking metrics on uniformly sampled traces (degrees).
BandwidthMetrics bandwidth_metrics(const std::vector<double>& t,
                                   const std::vector<double>& set_deg,
                                   const std::vector<double>& real_deg);
BandwidthMetrics bandwidth_metrics(const Timeseries& ts);

// Scenario file: `scenario.*` keys describe the run, any other keys override
// the base model config.
struct ScenarioFile {
    Scenario scenario;
    ModelConfig config;
};
ScenarioFile load_scenario_text(const std::string& text, const ModelConfig& base);
ScenarioFile load_scenario_file(const std::string& path, const ModelConfig& base);

} // namespace pneumodel
