#pragma once

#include "pneumodel/domain.hpp"

#include <cstdint>
#include <random>
#include <utility>

namespace pneumodel {

struct PlantState {
    double theta_shoulder = 0.0; // rad, from horizontal
    double theta_elbow = 0.0;    // rad, relative to the upper link
    double omega_shoulder = 0.0; // rad/s
    double omega_elbow = 0.0;
    double p_shoulder = 0.0;     // Pa, chamber pressure
    double p_elbow = 0.0;
    double t = 0.0;              // s
};

struct PressureCommand {
    double shoulder = 0.0; // Pa
    double elbow = 0.0;
};

struct ImuModel {
    double sample_rate = 100.0; // Hz
    double noise_std = 0.0;     // deg
    std::uint64_t seed = 1;
};

// Deterministic Gaussian source: mt19937_64 + Box-Muller. Bit-stable across
// standard library implementations (std::normal_distribution is not).
class GaussianRng {
public:
    explicit GaussianRng(std::uint64_t seed) : engine_(seed) {}
    // Zero-mean normal draw with the given standard deviation.
    double gaussian(double std_dev);

private:
    std::mt19937_64 engine_;
};

// Holding torques against gravity at the given posture (the torque each
// actuator must apply), angles measured from horizontal.
std::pair<double, double> gravity_torque(const ArmParams& arm,
                                         double theta_shoulder, double theta_elbow);

// End-effector position: x = l1 cos(ts) + l2 cos(ts+te), y likewise with sin.
std::pair<double, double> forward_kinematics(const ArmParams& arm,
                                             double theta_shoulder, double theta_elbow);

// Joint-to-actuator mapping. The elbow actuator rests at theta_initial when
// the joint sits on its lower stop; the shoulder actuator extension is zero
// there. Both grow one-to-one with the joint angle.
double elbow_bend_angle(const ModelConfig& cfg, double theta_elbow);
double shoulder_extension(const ModelConfig& cfg, double theta_shoulder);

// Quasi-static actuator torques at the joints.
double elbow_actuator_torque(const ModelConfig& cfg, double p, double theta_elbow);
double shoulder_actuator_torque(const ModelConfig& cfg, double p, double theta_shoulder);

// Diagonal point-mass inertias about each joint.
double shoulder_inertia(const ArmParams& arm);
double elbow_inertia(const ArmParams& arm);

// Rest state: both joints on their lower stops, zero velocity and pressure.
PlantState initial_state(const ModelConfig& cfg);

// One valve update toward a command: exact first-order exponential over dt,
// then the slew and [0, p_max] clamps. Returns the new line pressure.
double valve_step(double p, double p_cmd, double tau, double slew_max,
                  double p_max, double dt);

// One semi-implicit Euler step: valve lag toward the commands (exact
// exponential, then slew and [0, p_max] clamps), actuator/gravity/damping
// torques, velocity then position update, hard stops with velocity zeroing.
PlantState step(const PlantState& state, const PressureCommand& cmd,
                const ModelConfig& cfg, double dt);

// IMU reading: true angles in degrees plus Gaussian noise.
// Returns (shoulder_deg, elbow_deg).
std::pair<double, double> measure(const PlantState& state, const ImuModel& imu,
                                  GaussianRng& rng);

} // namespace pneumodel
