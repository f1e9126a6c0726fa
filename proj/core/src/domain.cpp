#include "pneumodel/domain.hpp"

#include "pneumodel/errors.hpp"
#include "pneumodel/units.hpp"

#include <cmath>
#include <sstream>

namespace pneumodel {

ModelConfig default_config() {
    ModelConfig cfg;
    // Rest wall length consistent with the rest ring angle: at zero pressure the
    // cell closes exactly with ring angle 2*beta, i.e.
    // l_base / (2 cos beta) = l_wall + r * tan(beta).
    const auto& g = cfg.lisper;
    cfg.lisper.l_wall_initial =
        g.l_base / (2.0 * std::cos(g.beta)) - g.r_mid() * std::tan(g.beta);
    return cfg;
}

namespace {

void check(std::vector<std::string>& out, bool ok, const std::string& msg) {
    if (!ok) out.push_back(msg);
}

} // namespace

std::vector<std::string> validate(const ModelConfig& cfg) {
    std::vector<std::string> v;
    const auto& m = cfg.material;
    check(v, m.e_silicone > 0, "material.e_silicone: must be > 0");
    check(v, m.e_pipe > 0, "material.e_pipe: must be > 0");
    check(v, m.poisson > 0 && m.poisson <= 0.5, "material.poisson: must satisfy 0 < poisson <= 0.5");

    const auto& l = cfg.lisper;
    check(v, l.r_inner > 0, "lisper.r_inner: must be > 0");
    check(v, l.r_outer > 0, "lisper.r_outer: must be > 0");
    check(v, l.r_inner < l.r_outer, "lisper.r_inner: must be < lisper.r_outer");
    check(v, l.beta > 0 && l.beta < kPi / 2, "lisper.beta: must satisfy 0 < beta < pi/2");
    check(v, l.l_thick > 0, "lisper.l_thick: must be > 0");
    check(v, l.l_base > 0, "lisper.l_base: must be > 0");
    check(v, l.l_wall_initial > 0, "lisper.l_wall_initial: must be > 0");
    check(v, l.h_base > 0, "lisper.h_base: must be > 0");
    check(v, l.r2_external > 0, "lisper.r2_external: must be > 0");
    check(v, l.d_bellow_wall > 0, "lisper.d_bellow_wall: must be > 0");
    check(v, l.n_bellows >= 1, "lisper.n_bellows: must be >= 1");
    check(v, l.gamma > 0 && l.gamma < kPi / 2, "lisper.gamma: must satisfy 0 < gamma < pi/2");
    check(v, l.l_equiv > 0, "lisper.l_equiv: must be > 0");
    check(v, l.h2 > 0, "lisper.h2: must be > 0");
    check(v, l.a_feet > 0, "lisper.a_feet: must be > 0");
    check(v, l.a_base > 0, "lisper.a_base: must be > 0");
    check(v, l.r_base > 0, "lisper.r_base: must be > 0");
    check(v, l.theta_initial >= 0, "lisper.theta_initial: must be >= 0");

    const auto& s = cfg.scasper;
    check(v, s.n_bags >= 2, "scasper.n_bags: must be >= 2");
    check(v, s.n_bags % 2 == 0, "scasper.n_bags: must be even");
    check(v, s.bag_width > 0, "scasper.bag_width: must be > 0");
    check(v, s.bag_length > 0, "scasper.bag_length: must be > 0");
    check(v, s.r1 > 0, "scasper.r1: must be > 0");
    check(v, s.l_pipe > 0, "scasper.l_pipe: must be > 0");
    check(v, s.d1 > 0, "scasper.d1: must be > 0");
    check(v, s.d2 > s.d1, "scasper.d2: must be > scasper.d1");

    const auto& a = cfg.arm;
    check(v, a.l1 > 0, "arm.l1: must be > 0");
    check(v, a.l2 > 0, "arm.l2: must be > 0");
    check(v, a.m1 > 0, "arm.m1: must be > 0");
    check(v, a.m2 > 0, "arm.m2: must be > 0");
    check(v, a.r_com1 > 0 && a.r_com1 <= a.l1, "arm.r_com1: must satisfy 0 < r_com1 <= l1");
    check(v, a.r_com2 > 0 && a.r_com2 <= a.l2, "arm.r_com2: must satisfy 0 < r_com2 <= l2");
    check(v, a.g >= 0, "arm.g: must be >= 0");
    check(v, a.elbow_min < a.elbow_max, "arm.elbow_min: must be < arm.elbow_max");
    check(v, a.shoulder_min < a.shoulder_max, "arm.shoulder_min: must be < arm.shoulder_max");

    const auto& sim = cfg.sim;
    check(v, sim.abs_tol > 0, "sim.abs_tol: must be > 0");
    check(v, sim.x_tol > 0, "sim.x_tol: must be > 0");
    check(v, sim.max_iter >= 1, "sim.max_iter: must be >= 1");
    check(v, sim.quad_rel_tol > 0, "sim.quad_rel_tol: must be > 0");
    check(v, sim.quad_n0 >= 2 && sim.quad_n0 % 2 == 0, "sim.quad_n0: must be even and >= 2");
    check(v, sim.quad_n_max >= sim.quad_n0, "sim.quad_n_max: must be >= sim.quad_n0");
    check(v, sim.dt > 0, "sim.dt: must be > 0");
    check(v, sim.tau_valve > 0, "sim.tau_valve: must be > 0");
    check(v, sim.slew_max > 0, "sim.slew_max: must be > 0");
    check(v, sim.p_max_elbow > 0, "sim.p_max_elbow: must be > 0");
    check(v, sim.p_max_shoulder > 0, "sim.p_max_shoulder: must be > 0");
    check(v, sim.damping_elbow >= 0, "sim.damping_elbow: must be >= 0");
    check(v, sim.damping_shoulder >= 0, "sim.damping_shoulder: must be >= 0");
    check(v, sim.strip_stiffness >= 0, "sim.strip_stiffness: must be >= 0");
    check(v, sim.strip_damping >= 0, "sim.strip_damping: must be >= 0");
    check(v, sim.imu_rate > 0, "sim.imu_rate: must be > 0");
    check(v, sim.imu_noise_std >= 0, "sim.imu_noise_std: must be >= 0");

    auto check_gains = [&](const PidGains& p, const std::string& name) {
        check(v, p.kp >= 0 && p.ki >= 0 && p.kd >= 0, name + ": gains must be >= 0");
        check(v, p.integral_limit > 0, name + ".integral_limit: must be > 0");
    };
    check_gains(cfg.control.elbow, "control.elbow");
    check_gains(cfg.control.shoulder, "control.shoulder");
    check_gains(cfg.control.baseline_elbow, "control.baseline_elbow");
    check_gains(cfg.control.baseline_shoulder, "control.baseline_shoulder");

    return v;
}

void validate_or_throw(const ModelConfig& cfg) {
    const auto v = validate(cfg);
    if (v.empty()) return;
    std::ostringstream os;
    os << "invalid config:";
    for (const auto& s : v) os << "\n  " << s;
    throw ConfigError(os.str());
}

} // namespace pneumodel
