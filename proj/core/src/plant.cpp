#include "pneumodel/plant.hpp"

#include "pneumodel/errors.hpp"
#include "pneumodel/lisper.hpp"
#include "pneumodel/scasper.hpp"
#include "pneumodel/units.hpp"

#include <cmath>
#include <sstream>

namespace pneumodel {

double GaussianRng::gaussian(double std_dev) {
    // Box-Muller; the (0,1] mapping keeps the log argument away from zero.
    const double u1 = 1.0 - (engine_() >> 11) * 0x1.0p-53;
    const double u2 = (engine_() >> 11) * 0x1.0p-53;
    return std_dev * std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * kPi * u2);
}

std::pair<double, double> gravity_torque(const ArmParams& arm,
                                         double theta_shoulder, double theta_elbow) {
    const double c1 = std::cos(theta_shoulder);
    const double c12 = std::cos(theta_shoulder + theta_elbow);
    const double tau_e = arm.m2 * arm.g * arm.r_com2 * c12;
    const double tau_s = arm.m1 * arm.g * arm.r_com1 * c1 +
                         arm.m2 * arm.g * (arm.l1 * c1 + arm.r_com2 * c12);
    return {tau_s, tau_e};
}

std::pair<double, double> forward_kinematics(const ArmParams& arm,
                                             double theta_shoulder, double theta_elbow) {
    const double a = theta_shoulder;
    const double b = theta_shoulder + theta_elbow;
    return {arm.l1 * std::cos(a) + arm.l2 * std::cos(b),
            arm.l1 * std::sin(a) + arm.l2 * std::sin(b)};
}

double elbow_bend_angle(const ModelConfig& cfg, double theta_elbow) {
    return cfg.lisper.theta_initial + (theta_elbow - cfg.arm.elbow_min);
}

double shoulder_extension(const ModelConfig& cfg, double theta_shoulder) {
    return theta_shoulder - cfg.arm.shoulder_min;
}

double elbow_actuator_torque(const ModelConfig& cfg, double p, double theta_elbow) {
    const double bend = elbow_bend_angle(cfg, theta_elbow);
    return output_force(cfg.lisper, cfg.material, p, bend, cfg.sim).f_output *
           cfg.lisper.l_equiv;
}

double shoulder_actuator_torque(const ModelConfig& cfg, double p, double theta_shoulder) {
    const double ext = shoulder_extension(cfg, theta_shoulder);
    return total_torque(cfg.scasper, cfg.material, p, ext).m_total;
}

double shoulder_inertia(const ArmParams& arm) {
    const double r = arm.l1 + arm.r_com2;
    return arm.m1 * arm.r_com1 * arm.r_com1 + arm.m2 * r * r;
}

double elbow_inertia(const ArmParams& arm) {
    return arm.m2 * arm.r_com2 * arm.r_com2;
}

PlantState initial_state(const ModelConfig& cfg) {
    PlantState s;
    s.theta_shoulder = cfg.arm.shoulder_min;
    s.theta_elbow = cfg.arm.elbow_min;
    return s;
}

double valve_step(double p, double p_cmd, double tau, double slew_max,
                  double p_max, double dt) {
    const double target = p_cmd + (p - p_cmd) * std::exp(-dt / tau);
    double delta = target - p;
    const double max_delta = slew_max * dt;
    if (delta > max_delta) delta = max_delta;
    if (delta < -max_delta) delta = -max_delta;
    double out = p + delta;
    if (out < 0.0) out = 0.0;
    if (out > p_max) out = p_max;
    return out;
}

namespace {

void check_finite(double v, const char* name, double t) {
    if (std::isfinite(v)) return;
    std::ostringstream os;
    os << "step: non-finite " << name << " at t = " << t << " s";
    throw ModelError(os.str());
}

} // namespace

PlantState step(const PlantState& state, const PressureCommand& cmd,
                const ModelConfig& cfg, double dt) {
    if (!(dt > 0.0)) throw ModelError("step: dt must be > 0");
    const auto& sim = cfg.sim;
    const auto& arm = cfg.arm;

    PlantState s = state;
    s.p_shoulder = valve_step(state.p_shoulder, cmd.shoulder, sim.tau_valve,
                              sim.slew_max, sim.p_max_shoulder, dt);
    s.p_elbow = valve_step(state.p_elbow, cmd.elbow, sim.tau_valve,
                           sim.slew_max, sim.p_max_elbow, dt);

    // Torques at the fresh pressures and the pre-step posture.
    const auto [tau_g_s, tau_g_e] = gravity_torque(arm, state.theta_shoulder, state.theta_elbow);
    double tau_s = shoulder_actuator_torque(cfg, s.p_shoulder, state.theta_shoulder) -
                   tau_g_s - sim.damping_shoulder * state.omega_shoulder;
    double tau_e = elbow_actuator_torque(cfg, s.p_elbow, state.theta_elbow) -
                   tau_g_e - sim.damping_elbow * state.omega_elbow;
    if (sim.strip_enabled) {
        tau_s += -sim.strip_stiffness * (state.theta_shoulder - sim.strip_rest) -
                 sim.strip_damping * state.omega_shoulder;
    }

    s.omega_shoulder = state.omega_shoulder + dt * tau_s / shoulder_inertia(arm);
    s.omega_elbow = state.omega_elbow + dt * tau_e / elbow_inertia(arm);
    s.theta_shoulder = state.theta_shoulder + dt * s.omega_shoulder;
    s.theta_elbow = state.theta_elbow + dt * s.omega_elbow;

    // Hard stops: clamp and kill only outward velocity.
    if (s.theta_shoulder < arm.shoulder_min) {
        s.theta_shoulder = arm.shoulder_min;
        if (s.omega_shoulder < 0.0) s.omega_shoulder = 0.0;
    } else if (s.theta_shoulder > arm.shoulder_max) {
        s.theta_shoulder = arm.shoulder_max;
        if (s.omega_shoulder > 0.0) s.omega_shoulder = 0.0;
    }
    if (s.theta_elbow < arm.elbow_min) {
        s.theta_elbow = arm.elbow_min;
        if (s.omega_elbow < 0.0) s.omega_elbow = 0.0;
    } else if (s.theta_elbow > arm.elbow_max) {
        s.theta_elbow = arm.elbow_max;
        if (s.omega_elbow > 0.0) s.omega_elbow = 0.0;
    }

    s.t = state.t + dt;
    check_finite(s.p_shoulder, "p_shoulder", s.t);
    check_finite(s.p_elbow, "p_elbow", s.t);
    check_finite(s.omega_shoulder, "omega_shoulder", s.t);
    check_finite(s.omega_elbow, "omega_elbow", s.t);
    check_finite(s.theta_shoulder, "theta_shoulder", s.t);
    check_finite(s.theta_elbow, "theta_elbow", s.t);
    return s;
}

std::pair<double, double> measure(const PlantState& state, const ImuModel& imu,
                                  GaussianRng& rng) {
    return {rad_to_deg(state.theta_shoulder) + rng.gaussian(imu.noise_std),
            rad_to_deg(state.theta_elbow) + rng.gaussian(imu.noise_std)};
}

} // namespace pneumodel
