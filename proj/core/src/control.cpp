#include "pneumodel/control.hpp"

#include "pneumodel/errors.hpp"
#include "pneumodel/lisper.hpp"
#include "pneumodel/scasper.hpp"
#include "pneumodel/units.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace pneumodel {

double pid_step(const PidGains& gains, double error, double measurement,
                PidState& state, double dt) {
    if (dt <= 0.0) throw ModelError("pid_step: dt must be > 0");
    state.integral += gains.ki * error * dt;
    state.integral = std::clamp(state.integral, -gains.integral_limit, gains.integral_limit);
    if (state.has_last) {
        double raw = (measurement - state.last_meas) / dt;
        // one-pole filter, 50 ms: tames sensor noise without losing the lead
        double alpha = dt / (dt + 0.05);
        state.deriv += alpha * (raw - state.deriv);
    }
    state.last_meas = measurement;
    state.has_last = true;
    return gains.kp * error + state.integral - gains.kd * state.deriv;
}

namespace {

// The controller runs the same models on a looser quadrature tolerance: the
// force error this admits (relative 1e-7) is orders of magnitude below the
// valve and sensor scales, and it keeps the 100 Hz loop cheap.
SimParams controller_sim(const SimParams& sim) {
    SimParams s = sim;
    s.quad_rel_tol = std::max(s.quad_rel_tol, 1e-7);
    return s;
}

// Inverse models never throw here: the requested force/torque is clamped to
// what the actuator can produce at this posture, so saturation degrades to a
// boundary pressure instead of an error mid-run.
double lisper_pressure_for_force(const ModelConfig& cfg, double bend, double f_req) {
    const SimParams sim = controller_sim(cfg.sim);
    const double pole = cfg.material.e_silicone * cfg.material.poisson / cfg.lisper.l_thick;
    const double p_hi = std::min(1.5e5, 0.999 * pole);
    const double f_at_0 = output_force(cfg.lisper, cfg.material, 0.0, bend, sim).f_output;
    const double f_at_hi = output_force(cfg.lisper, cfg.material, p_hi, bend, sim).f_output;
    const double lo = std::min(f_at_0, f_at_hi);
    const double hi = std::max(f_at_0, f_at_hi);
    const double f = std::min(std::max(f_req, lo), hi);
    return inverse_pressure(cfg.lisper, cfg.material, bend, f, sim);
}

double scasper_pressure_for_torque(const ModelConfig& cfg, double ext, double m_req) {
    const double resist = pipe_moment(cfg.scasper, cfg.material, ext);
    const double m = std::max(m_req, -resist);
    return inverse_pressure_scasper(cfg.scasper, cfg.material, ext, m);
}

} // namespace

double position_controller_step(const ModelConfig& cfg, JointId joint,
                                double theta_desired, double theta_real,
                                double p_current, PidState& state, double dt) {
    if (joint == JointId::elbow) {
        const double bend_des = elbow_bend_angle(cfg, theta_desired);
        const double bend_real = elbow_bend_angle(cfg, theta_real);
        const double p_ff = lisper_pressure_for_force(cfg, bend_des, 0.0);
        const double f_corr =
            pid_step(cfg.control.elbow, theta_desired - theta_real, theta_real, state, dt);
        const double f_est =
            output_force(cfg.lisper, cfg.material, p_current, bend_real, controller_sim(cfg.sim))
                .f_output;
        const double p_fb = lisper_pressure_for_force(cfg, bend_real, f_est + f_corr);
        return std::clamp(p_ff + p_fb - p_current, 0.0, cfg.sim.p_max_elbow);
    }
    const double ext_des = std::max(0.0, shoulder_extension(cfg, theta_desired));
    const double ext_real = std::max(0.0, shoulder_extension(cfg, theta_real));
    const double p_ff = scasper_pressure_for_torque(cfg, ext_des, 0.0);
    const double m_corr =
        pid_step(cfg.control.shoulder, theta_desired - theta_real, theta_real, state, dt);
    const double m_est = total_torque(cfg.scasper, cfg.material, p_current, ext_real).m_total;
    const double p_fb = scasper_pressure_for_torque(cfg, ext_real, m_est + m_corr);
    return std::clamp(p_ff + p_fb - p_current, 0.0, cfg.sim.p_max_shoulder);
}

PressureCommand gravity_comp_step(const ModelConfig& cfg,
                                  double theta_shoulder_real, double theta_elbow_real) {
    const auto [tau_s, tau_e] = gravity_torque(cfg.arm, theta_shoulder_real, theta_elbow_real);
    PressureCommand cmd;
    const double bend = elbow_bend_angle(cfg, theta_elbow_real);
    cmd.elbow = std::clamp(lisper_pressure_for_force(cfg, bend, tau_e / cfg.lisper.l_equiv),
                           0.0, cfg.sim.p_max_elbow);
    const double ext = std::max(0.0, shoulder_extension(cfg, theta_shoulder_real));
    cmd.shoulder = std::clamp(scasper_pressure_for_torque(cfg, ext, tau_s),
                              0.0, cfg.sim.p_max_shoulder);
    return cmd;
}

double set_angle(const TrajectorySpec& spec, double t) {
    if (spec.kind == TrajectorySpec::Kind::constant) return spec.value;
    return spec.offset + spec.amplitude * std::sin(2.0 * kPi * spec.freq * t - 0.5 * kPi);
}

ScenarioResult run_scenario(const ModelConfig& cfg, const Scenario& sc) {
    if (sc.dt <= 0.0) throw ModelError("run_scenario: scenario dt must be > 0");
    if (sc.duration <= 0.0) throw ModelError("run_scenario: scenario duration must be > 0");
    const long n_steps = std::lround(sc.duration / sc.dt);
    if (n_steps < 1) throw ModelError("run_scenario: duration shorter than one plant step");
    long every = std::lround(1.0 / (cfg.sim.imu_rate * sc.dt));
    if (every < 1) every = 1;
    const double dt_ctrl = static_cast<double>(every) * sc.dt;

    const ArmParams& arm = cfg.arm;
    auto set_s_at = [&](double t) {
        return std::clamp(set_angle(sc.shoulder, t), arm.shoulder_min, arm.shoulder_max);
    };
    auto set_e_at = [&](double t) {
        return std::clamp(set_angle(sc.elbow, t), arm.elbow_min, arm.elbow_max);
    };

    GaussianRng rng(cfg.sim.seed);
    const ImuModel imu{cfg.sim.imu_rate, cfg.sim.imu_noise_std, cfg.sim.seed};

    // The arm is placed at the initial setpoints; chamber pressures are
    // initialized from the first command so runs start without a valve jump.
    PlantState st;
    st.theta_shoulder = set_s_at(0.0);
    st.theta_elbow = set_e_at(0.0);

    PidState pid_s, pid_e;
    PressureCommand cmd;
    ScenarioResult out;

    for (long k = 0; k <= n_steps; ++k) {
        const double t = static_cast<double>(k) * sc.dt;
        if (k % every == 0) {
            const auto [meas_s_deg, meas_e_deg] = measure(st, imu, rng);
            const double meas_s = deg_to_rad(meas_s_deg);
            const double meas_e = deg_to_rad(meas_e_deg);
            const double set_s = set_s_at(t);
            const double set_e = set_e_at(t);
            switch (sc.mode) {
            case ControlMode::position:
                cmd.shoulder = position_controller_step(cfg, JointId::shoulder, set_s, meas_s,
                                                        st.p_shoulder, pid_s, dt_ctrl);
                cmd.elbow = position_controller_step(cfg, JointId::elbow, set_e, meas_e,
                                                     st.p_elbow, pid_e, dt_ctrl);
                break;
            case ControlMode::gravity:
                cmd = gravity_comp_step(cfg, meas_s, meas_e);
                break;
            case ControlMode::pid_baseline:
                cmd.shoulder = std::clamp(
                    pid_step(cfg.control.baseline_shoulder, set_s - meas_s, meas_s, pid_s, dt_ctrl),
                    0.0, cfg.sim.p_max_shoulder);
                cmd.elbow = std::clamp(
                    pid_step(cfg.control.baseline_elbow, set_e - meas_e, meas_e, pid_e, dt_ctrl),
                    0.0, cfg.sim.p_max_elbow);
                break;
            }
            if (k == 0) {
                st.p_shoulder = cmd.shoulder;
                st.p_elbow = cmd.elbow;
            }
            out.shoulder.t.push_back(t);
            out.shoulder.set_angle.push_back(rad_to_deg(set_s));
            out.shoulder.real_angle.push_back(rad_to_deg(st.theta_shoulder));
            out.shoulder.p_cmd.push_back(pa_to_kpa(cmd.shoulder));
            out.shoulder.p_actual.push_back(pa_to_kpa(st.p_shoulder));
            out.shoulder.torque.push_back(
                shoulder_actuator_torque(cfg, st.p_shoulder, st.theta_shoulder));
            out.elbow.t.push_back(t);
            out.elbow.set_angle.push_back(rad_to_deg(set_e));
            out.elbow.real_angle.push_back(rad_to_deg(st.theta_elbow));
            out.elbow.p_cmd.push_back(pa_to_kpa(cmd.elbow));
            out.elbow.p_actual.push_back(pa_to_kpa(st.p_elbow));
            out.elbow.torque.push_back(elbow_actuator_torque(cfg, st.p_elbow, st.theta_elbow));
        }
        if (k == n_steps) break;
        st = step(st, cmd, cfg, sc.dt);
    }
    return out;
}

Timeseries actuator_bandwidth_run(const ModelConfig& cfg, JointId joint,
                                  double freq_hz, double cycles) {
    if (!(freq_hz > 0.0)) throw ConfigError("bandwidth: frequency must be > 0");
    if (!(cycles >= 2.0)) throw ConfigError("bandwidth: need at least 2 cycles");
    const SimParams sim = controller_sim(cfg.sim);
    const bool elbow = joint == JointId::elbow;
    const double p_max = elbow ? sim.p_max_elbow : sim.p_max_shoulder;

    // Zero-load forward and inverse maps in actuator-angle degrees.
    auto forward = [&](double p) {
        if (elbow) return rad_to_deg(free_bending_angle(cfg.lisper, cfg.material, p, sim));
        return extension_angle(cfg.scasper, p / 1000.0);
    };
    auto inverse = [&](double ang_deg) {
        if (elbow)
            return inverse_pressure(cfg.lisper, cfg.material, deg_to_rad(ang_deg), 0.0, sim);
        const auto& g = cfg.scasper;
        const double disc = g.poly_a1 * g.poly_a1 - 4.0 * g.poly_a2 * (g.poly_a0 - ang_deg);
        return 1000.0 * (-g.poly_a1 + std::sqrt(disc)) / (2.0 * g.poly_a2);
    };

    // Sine spans the zero-load range, capped at 85 deg: the extension-angle
    // fit is only trusted near its data, and the bench protocol tops out there.
    const double lo = forward(0.0);
    const double hi = std::min(85.0, forward(p_max));
    if (!(hi > lo)) throw ModelError("bandwidth: zero-load angle range is empty");
    const double mid = 0.5 * (lo + hi);
    const double amp = 0.5 * (hi - lo);
    auto set_at = [&](double t) { return mid + amp * std::sin(2.0 * kPi * freq_hz * t); };

    const long n_steps = std::lround(cycles / freq_hz / sim.dt);
    long every = std::lround(1.0 / (sim.imu_rate * sim.dt));
    if (every < 1) every = 1;

    Timeseries out;
    double p = inverse(set_at(0.0));
    double p_cmd = p;
    for (long k = 0; k <= n_steps; ++k) {
        const double t = static_cast<double>(k) * sim.dt;
        if (k % every == 0) {
            const double set = set_at(t);
            p_cmd = std::clamp(inverse(set), 0.0, p_max);
            out.t.push_back(t);
            out.set_angle.push_back(set);
            out.real_angle.push_back(forward(p));
            out.p_cmd.push_back(p_cmd / 1000.0);
            out.p_actual.push_back(p / 1000.0);
            out.torque.push_back(0.0);
        }
        if (k == n_steps) break;
        p = valve_step(p, p_cmd, sim.tau_valve, sim.slew_max, p_max, sim.dt);
    }
    return out;
}

BandwidthMetrics bandwidth_metrics(const std::vector<double>& t,
                                   const std::vector<double>& set_deg,
                                   const std::vector<double>& real_deg) {
    const std::size_t n = t.size();
    if (set_deg.size() != n || real_deg.size() != n)
        throw ModelError("bandwidth_metrics: column lengths differ");
    if (n < 4) throw ModelError("bandwidth_metrics: need at least 4 samples");
    const double dt = t[1] - t[0];
    if (dt <= 0.0) throw ModelError("bandwidth_metrics: non-increasing time column");
    for (std::size_t i = 1; i < n; ++i) {
        if (std::abs(t[i] - t[i - 1] - dt) > 1e-9)
            throw ModelError("bandwidth_metrics: non-uniform sample grid");
    }

    BandwidthMetrics bm;
    const auto [rmin, rmax] = std::minmax_element(real_deg.begin(), real_deg.end());
    bm.range_of_motion = *rmax - *rmin;

    double ms = 0.0, mr = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        ms += set_deg[i];
        mr += real_deg[i];
    }
    ms /= static_cast<double>(n);
    mr /= static_cast<double>(n);

    // Cycle period from upward mean crossings of the setpoint trace.
    double first_cross = 0.0, last_cross = 0.0;
    std::size_t n_cross = 0;
    for (std::size_t i = 1; i < n; ++i) {
        if (set_deg[i - 1] < ms && set_deg[i] >= ms) {
            if (n_cross == 0) first_cross = t[i];
            last_cross = t[i];
            ++n_cross;
        }
    }
    const double period = n_cross >= 2
        ? (last_cross - first_cross) / static_cast<double>(n_cross - 1)
        : 0.0;

    // Lag of the real trace behind the setpoint: peak of the per-lag Pearson
    // correlation, searched up to half a period. Normalizing each overlap
    // window by its own means and variances keeps the estimate free of the
    // window-shrink bias a plain sum-normalized correlation picks up on short
    // records, so a delayed copy of the setpoint peaks exactly at its delay.
    std::size_t max_lag = period > 0.0
        ? static_cast<std::size_t>(std::lround(0.5 * period / dt))
        : n / 2;
    if (max_lag > n - 2) max_lag = n - 2;
    double best_c = 0.0;
    std::size_t best_lag = 0;
    for (std::size_t lag = 0; lag <= max_lag; ++lag) {
        const std::size_t len = n - lag;
        double sw = 0.0, rw = 0.0;
        for (std::size_t i = lag; i < n; ++i) {
            sw += set_deg[i - lag];
            rw += real_deg[i];
        }
        sw /= static_cast<double>(len);
        rw /= static_cast<double>(len);
        double num = 0.0, ss = 0.0, rr = 0.0;
        for (std::size_t i = lag; i < n; ++i) {
            const double ds = set_deg[i - lag] - sw;
            const double dr = real_deg[i] - rw;
            num += ds * dr;
            ss += ds * ds;
            rr += dr * dr;
        }
        const double denom = std::sqrt(ss * rr);
        const double c = denom > 0.0 ? num / denom : -1.0;
        if (lag == 0 || c > best_c) {
            best_c = c;
            best_lag = lag;
        }
    }
    bm.mean_time_error = static_cast<double>(best_lag) * dt;

    // Peak tracking error once the first cycle's transient has passed.
    std::size_t start = period > 0.0
        ? static_cast<std::size_t>(std::lround(period / dt))
        : 0;
    if (start >= n) start = n - 1;
    double emax = 0.0;
    for (std::size_t i = start; i < n; ++i)
        emax = std::max(emax, std::abs(set_deg[i] - real_deg[i]));
    bm.max_angular_error = emax;
    return bm;
}

BandwidthMetrics bandwidth_metrics(const Timeseries& ts) {
    return bandwidth_metrics(ts.t, ts.set_angle, ts.real_angle);
}

namespace {

double scenario_number(const ConfigEntry& e) {
    const char* begin = e.value.c_str();
    char* end = nullptr;
    const double v = std::strtod(begin, &end);
    if (end == begin || *end != '\0' || !std::isfinite(v)) {
        std::ostringstream os;
        os << "line " << e.line << ": " << e.key << ": not a number: '" << e.value << "'";
        throw ConfigError(os.str());
    }
    return v;
}

// Applies one scenario.* entry; key is the part after the prefix.
void apply_scenario_entry(Scenario& sc, const std::string& key, const ConfigEntry& e,
                          bool& has_duration) {
    auto joint_field = [&](TrajectorySpec& ts, const std::string& sub) {
        if (sub == "kind") {
            if (e.value == "constant") ts.kind = TrajectorySpec::Kind::constant;
            else if (e.value == "sine") ts.kind = TrajectorySpec::Kind::sine;
            else {
                std::ostringstream os;
                os << "line " << e.line << ": " << e.key
                   << ": expected constant|sine, got '" << e.value << "'";
                throw ConfigError(os.str());
            }
        } else if (sub == "value_deg") ts.value = deg_to_rad(scenario_number(e));
        else if (sub == "amplitude_deg") ts.amplitude = deg_to_rad(scenario_number(e));
        else if (sub == "offset_deg") ts.offset = deg_to_rad(scenario_number(e));
        else if (sub == "freq_hz") ts.freq = scenario_number(e);
        else if (sub == "cycles") ts.cycles = scenario_number(e);
        else {
            std::ostringstream os;
            os << "line " << e.line << ": unknown scenario key '" << e.key << "'";
            throw ConfigError(os.str());
        }
    };

    if (key == "mode") {
        if (e.value == "position") sc.mode = ControlMode::position;
        else if (e.value == "gravity") sc.mode = ControlMode::gravity;
        else if (e.value == "pid") sc.mode = ControlMode::pid_baseline;
        else {
            std::ostringstream os;
            os << "line " << e.line << ": scenario.mode: expected position|gravity|pid, got '"
               << e.value << "'";
            throw ConfigError(os.str());
        }
    } else if (key == "dt_s") {
        sc.dt = scenario_number(e);
    } else if (key == "duration_s") {
        sc.duration = scenario_number(e);
        has_duration = true;
    } else if (key.rfind("shoulder.", 0) == 0) {
        joint_field(sc.shoulder, key.substr(9));
    } else if (key.rfind("elbow.", 0) == 0) {
        joint_field(sc.elbow, key.substr(6));
    } else {
        std::ostringstream os;
        os << "line " << e.line << ": unknown scenario key '" << e.key << "'";
        throw ConfigError(os.str());
    }
}

void validate_trajectory(const TrajectorySpec& ts, const char* name) {
    if (ts.kind == TrajectorySpec::Kind::sine && ts.freq <= 0.0) {
        std::ostringstream os;
        os << "scenario." << name << ".freq_hz: must be > 0 for a sine trajectory";
        throw ConfigError(os.str());
    }
    if (ts.cycles < 0.0) {
        std::ostringstream os;
        os << "scenario." << name << ".cycles: must be >= 0";
        throw ConfigError(os.str());
    }
}

} // namespace

ScenarioFile load_scenario_text(const std::string& text, const ModelConfig& base) {
    const std::vector<ConfigEntry> entries = parse_config_text(text);

    ScenarioFile sf;
    sf.config = base;
    sf.scenario.dt = base.sim.dt;
    sf.scenario.shoulder.value = base.arm.shoulder_min;
    sf.scenario.elbow.value = base.arm.elbow_min;

    std::vector<ConfigEntry> model_entries;
    bool has_duration = false;
    for (const ConfigEntry& e : entries) {
        if (e.key.rfind("scenario.", 0) == 0)
            apply_scenario_entry(sf.scenario, e.key.substr(9), e, has_duration);
        else
            model_entries.push_back(e);
    }
    apply_config_entries(sf.config, model_entries);
    validate_or_throw(sf.config);

    // Overrides may change the plant step; keep the scenario on it unless the
    // file pinned its own.
    bool has_dt = false;
    for (const ConfigEntry& e : entries)
        if (e.key == "scenario.dt_s") has_dt = true;
    if (!has_dt) sf.scenario.dt = sf.config.sim.dt;

    validate_trajectory(sf.scenario.shoulder, "shoulder");
    validate_trajectory(sf.scenario.elbow, "elbow");
    if (sf.scenario.dt <= 0.0)
        throw ConfigError("scenario.dt_s: must be > 0");

    if (!has_duration) {
        double d = 0.0;
        for (const TrajectorySpec* ts : {&sf.scenario.shoulder, &sf.scenario.elbow}) {
            if (ts->kind == TrajectorySpec::Kind::sine && ts->cycles > 0.0)
                d = std::max(d, ts->cycles / ts->freq);
        }
        if (d <= 0.0)
            throw ConfigError(
                "scenario.duration_s: required when no sine trajectory sets cycles");
        sf.scenario.duration = d;
    }
    if (sf.scenario.duration <= 0.0)
        throw ConfigError("scenario.duration_s: must be > 0");
    return sf;
}

ScenarioFile load_scenario_file(const std::string& path, const ModelConfig& base) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("cannot open scenario file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return load_scenario_text(buf.str(), base);
}

} // namespace pneumodel
