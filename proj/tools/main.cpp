#include "CLI11.hpp"

#include "pneumodel/config.hpp"
#include "pneumodel/control.hpp"
#include "pneumodel/csv.hpp"
#include "pneumodel/domain.hpp"
#include "pneumodel/errors.hpp"
#include "pneumodel/lisper.hpp"
#include "pneumodel/plant.hpp"
#include "pneumodel/scasper.hpp"
#include "pneumodel/units.hpp"

#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

namespace pm = pneumodel;

namespace {

double parse_num(const std::string& s, const std::string& what) {
    char* end = nullptr;
    const double v = std::strtod(s.c_str(), &end);
    if (end == s.c_str() || *end != '\0')
        throw pm::ConfigError(what + ": not a number: '" + s + "'");
    return v;
}

// Inclusive sweep start..end by step; counts points up front so accumulated
// rounding cannot drop the final value.
std::vector<double> sweep_points(double start, double end, double step, const std::string& what) {
    if (end < start) throw pm::ConfigError(what + ": end must be >= start");
    if (start == end) return {start};
    if (step <= 0.0) throw pm::ConfigError(what + ": step must be > 0");
    const long n = static_cast<long>(std::floor((end - start) / step + 1e-9)) + 1;
    std::vector<double> pts;
    pts.reserve(static_cast<std::size_t>(n));
    for (long i = 0; i < n; ++i) pts.push_back(start + static_cast<double>(i) * step);
    return pts;
}

// "a:b:step" or a single value.
std::vector<double> parse_values(const std::string& spec) {
    std::vector<std::string> parts;
    std::string cur;
    for (char c : spec) {
        if (c == ':') {
            parts.push_back(cur);
            cur.clear();
        } else {
            cur.push_back(c);
        }
    }
    parts.push_back(cur);
    if (parts.size() == 1) return {parse_num(parts[0], "--values")};
    if (parts.size() != 3)
        throw pm::ConfigError("--values: expected a:b:step or a single value, got '" + spec + "'");
    return sweep_points(parse_num(parts[0], "--values"), parse_num(parts[1], "--values"),
                        parse_num(parts[2], "--values"), "--values");
}

std::vector<double> parse_list(const std::string& spec, const std::string& what) {
    std::vector<double> out;
    std::string cur;
    for (char c : spec) {
        if (c == ',') {
            out.push_back(parse_num(cur, what));
            cur.clear();
        } else {
            cur.push_back(c);
        }
    }
    out.push_back(parse_num(cur, what));
    return out;
}

pm::ModelConfig resolve_config(const std::string& flag_path) {
    std::string path = flag_path;
    if (path.empty()) {
        if (const char* env = std::getenv("PNEUMODEL_CONFIG")) path = env;
    }
    if (path.empty()) return pm::default_config();
    return pm::load_config(path);
}

void write_output(const std::string& out_path, const std::string& text) {
    if (out_path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream f(out_path, std::ios::binary);
    if (!f) throw pm::ConfigError("cannot open output file: " + out_path);
    f << text;
    f.flush();
    if (!f) throw pm::ConfigError("write failed: " + out_path);
}

pm::CsvTable cmd_lisper_curve(const pm::ModelConfig& cfg, double p0, double p1, double dp) {
    pm::CsvTable t;
    t.header = {"pressure_kpa", "free_angle_deg"};
    for (double p : sweep_points(p0, p1, dp, "--p-start/--p-end/--p-step")) {
        const double ang =
            pm::free_bending_angle(cfg.lisper, cfg.material, pm::kpa_to_pa(p), cfg.sim);
        t.rows.push_back({p, pm::rad_to_deg(ang)});
    }
    return t;
}

pm::CsvTable cmd_lisper_force(const pm::ModelConfig& cfg, double angle_deg, double p0, double p1,
                              double dp) {
    pm::CsvTable t;
    t.header = {"pressure_kpa", "force_n", "f_total1_n", "f_total2_n", "f_total3_n",
                "bellow_contrib_pct"};
    const double th = pm::deg_to_rad(angle_deg);
    for (double p : sweep_points(p0, p1, dp, "--p-start/--p-end/--p-step")) {
        const pm::ForceBreakdown fb =
            pm::output_force(cfg.lisper, cfg.material, pm::kpa_to_pa(p), th, cfg.sim);
        if (fb.f_output == 0.0)
            throw pm::ModelError("bellow contribution undefined: net output force is zero at " +
                                 std::to_string(p) + " kPa");
        t.rows.push_back({p, fb.f_output, fb.f_total1, fb.f_total2, fb.f_total3,
                          fb.f_total1 / fb.f_output * 100.0});
    }
    return t;
}

pm::CsvTable cmd_scasper_angle(const pm::ModelConfig& cfg, double p0, double p1, double dp) {
    pm::CsvTable t;
    t.header = {"pressure_kpa", "extension_angle_deg"};
    for (double p : sweep_points(p0, p1, dp, "--p-start/--p-end/--p-step")) {
        t.rows.push_back({p, pm::extension_angle(cfg.scasper, p)});
    }
    return t;
}

pm::CsvTable cmd_scasper_torque(const pm::ModelConfig& cfg, double angle_deg, double p0, double p1,
                                double dp) {
    pm::CsvTable t;
    t.header = {"pressure_kpa", "torque_nm", "tau_bag_nm", "m_pipe_nm"};
    const double th = pm::deg_to_rad(angle_deg);
    for (double p : sweep_points(p0, p1, dp, "--p-start/--p-end/--p-step")) {
        const pm::TorqueBreakdown tb =
            pm::total_torque(cfg.scasper, cfg.material, pm::kpa_to_pa(p), th);
        t.rows.push_back({p, tb.m_total, tb.tau_bag, tb.m_pipe});
    }
    return t;
}

pm::CsvTable cmd_inverse(const pm::ModelConfig& cfg, const std::string& joint, double angle_deg,
                         double load) {
    pm::CsvTable t;
    t.header = {"pressure_kpa"};
    double p = 0.0;
    if (joint == "elbow") {
        p = pm::inverse_pressure(cfg.lisper, cfg.material, pm::deg_to_rad(angle_deg), load,
                                 cfg.sim);
    } else {
        p = pm::inverse_pressure_scasper(cfg.scasper, cfg.material, pm::deg_to_rad(angle_deg),
                                         load);
    }
    t.rows.push_back({pm::pa_to_kpa(p)});
    return t;
}

pm::CsvTable cmd_sweep(const pm::ModelConfig& base, const std::string& param,
                       const std::string& values, const std::string& metric) {
    pm::CsvTable t;
    std::string metric_col;
    if (metric == "free_angle") metric_col = "free_angle_deg";
    else if (metric == "max_force") metric_col = "max_force_n";
    else metric_col = "max_torque_nm";
    t.header = {param, metric_col};
    for (double v : parse_values(values)) {
        pm::ModelConfig cfg = base;
        char buf[40];
        std::snprintf(buf, sizeof(buf), "%.17g", v);
        pm::apply_config_entry(cfg, param, buf);
        pm::validate_or_throw(cfg);
        double m = 0.0;
        if (metric == "free_angle") {
            m = pm::rad_to_deg(
                pm::free_bending_angle(cfg.lisper, cfg.material, pm::kpa_to_pa(100.0), cfg.sim));
        } else if (metric == "max_force") {
            m = pm::output_force(cfg.lisper, cfg.material, pm::kpa_to_pa(100.0), 0.0, cfg.sim)
                    .f_output;
        } else {
            m = pm::total_torque(cfg.scasper, cfg.material, pm::kpa_to_pa(150.0), 0.0).m_total;
        }
        t.rows.push_back({v, m});
    }
    return t;
}

pm::CsvTable timeseries_table(const pm::ScenarioResult& res) {
    pm::CsvTable t;
    t.header = {"time_s",
                "shoulder_set_deg",
                "shoulder_real_deg",
                "shoulder_p_cmd_kpa",
                "shoulder_p_actual_kpa",
                "shoulder_torque_nm",
                "elbow_set_deg",
                "elbow_real_deg",
                "elbow_p_cmd_kpa",
                "elbow_p_actual_kpa",
                "elbow_torque_nm"};
    const pm::Timeseries& s = res.shoulder;
    const pm::Timeseries& e = res.elbow;
    for (std::size_t i = 0; i < s.t.size(); ++i) {
        t.rows.push_back({s.t[i], s.set_angle[i], s.real_angle[i], s.p_cmd[i], s.p_actual[i],
                          s.torque[i], e.set_angle[i], e.real_angle[i], e.p_cmd[i], e.p_actual[i],
                          e.torque[i]});
    }
    return t;
}

pm::CsvTable cmd_simulate(const pm::ModelConfig& cfg, const std::string& scenario_path,
                          const std::string& mode, std::optional<std::uint64_t> seed) {
    pm::ScenarioFile sf = pm::load_scenario_file(scenario_path, cfg);
    if (!mode.empty()) {
        if (mode == "position") sf.scenario.mode = pm::ControlMode::position;
        else if (mode == "gravity") sf.scenario.mode = pm::ControlMode::gravity;
        else sf.scenario.mode = pm::ControlMode::pid_baseline;
    }
    if (seed) sf.config.sim.seed = *seed;
    return timeseries_table(pm::run_scenario(sf.config, sf.scenario));
}

pm::CsvTable cmd_bandwidth(const pm::ModelConfig& cfg, const std::string& freqs,
                           const std::string& joint, double cycles) {
    if (cycles <= 0.0) throw pm::ConfigError("--cycles: must be > 0");
    pm::CsvTable t;
    t.header = {"freq_hz", "range_of_motion_deg", "mean_time_error_s", "max_angular_error_deg"};
    const pm::JointId jid = (joint == "elbow") ? pm::JointId::elbow : pm::JointId::shoulder;
    for (double f : parse_list(freqs, "--freqs")) {
        if (f <= 0.0) throw pm::ConfigError("--freqs: frequencies must be > 0");
        const pm::Timeseries ts = pm::actuator_bandwidth_run(cfg, jid, f, cycles);
        const pm::BandwidthMetrics bm = pm::bandwidth_metrics(ts);
        t.rows.push_back({f, bm.range_of_motion, bm.mean_time_error, bm.max_angular_error});
    }
    return t;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Quasi-static pneumatic soft-actuator models and closed-loop arm simulation"};
    app.require_subcommand(1);

    std::string config_path, out_path;
    std::uint64_t seed = 0;
    app.add_option("--config", config_path,
                   "Config file (default: $PNEUMODEL_CONFIG, else built-in defaults)");
    app.add_option("--out", out_path, "Write CSV to this file instead of stdout");
    auto* seed_opt = app.add_option("--seed", seed, "Override sim.seed for this run");

    double p_start = 0.0, p_end = 0.0, p_step = 10.0;
    double angle_deg = 0.0, load = 0.0, cycles = 6.0;
    std::string joint, param, values, metric, scenario_path, mode, freqs;

    auto* lisper = app.add_subcommand("lisper", "LISPER elbow actuator models");
    lisper->require_subcommand(1);
    lisper->fallthrough();
    auto* lcurve = lisper->add_subcommand("curve", "Free bending angle over a pressure sweep");
    lcurve->fallthrough();
    lcurve->add_option("--p-start", p_start, "Sweep start, kPa")->required();
    lcurve->add_option("--p-end", p_end, "Sweep end, kPa")->required();
    lcurve->add_option("--p-step", p_step, "Sweep step, kPa (default 10)");
    auto* lforce = lisper->add_subcommand(
        "force", "Output force breakdown over a pressure sweep at a constrained bend angle");
    lforce->fallthrough();
    lforce->add_option("--angle", angle_deg, "Constrained bend angle, deg")->required();
    lforce->add_option("--p-start", p_start, "Sweep start, kPa")->required();
    lforce->add_option("--p-end", p_end, "Sweep end, kPa")->required();
    lforce->add_option("--p-step", p_step, "Sweep step, kPa (default 10)");

    auto* scasper = app.add_subcommand("scasper", "SCASPER shoulder actuator models");
    scasper->require_subcommand(1);
    scasper->fallthrough();
    auto* sangle =
        scasper->add_subcommand("angle", "Extension angle fit over a pressure sweep");
    sangle->fallthrough();
    sangle->add_option("--p-start", p_start, "Sweep start, kPa")->required();
    sangle->add_option("--p-end", p_end, "Sweep end, kPa")->required();
    sangle->add_option("--p-step", p_step, "Sweep step, kPa (default 10)");
    auto* storque = scasper->add_subcommand(
        "torque", "Torque breakdown over a pressure sweep at a constrained extension angle");
    storque->fallthrough();
    storque->add_option("--angle", angle_deg, "Constrained extension angle, deg")->required();
    storque->add_option("--p-start", p_start, "Sweep start, kPa")->required();
    storque->add_option("--p-end", p_end, "Sweep end, kPa")->required();
    storque->add_option("--p-step", p_step, "Sweep step, kPa (default 10)");

    auto* inv = app.add_subcommand("inverse", "Pressure for a desired angle under a load");
    inv->fallthrough();
    inv->add_option("--joint", joint, "elbow | shoulder")
        ->required()
        ->check(CLI::IsMember({"elbow", "shoulder"}));
    inv->add_option("--angle", angle_deg, "Actuator angle, deg")->required();
    inv->add_option("--load", load, "Held load: N for elbow, N*m for shoulder")->required();

    auto* sweep = app.add_subcommand("sweep", "Design-parameter study on one config key");
    sweep->fallthrough();
    sweep->add_option("--param", param, "Dotted config key, e.g. lisper.l_base_m")->required();
    sweep->add_option("--values", values, "a:b:step or a single value, config units")->required();
    sweep->add_option("--metric", metric, "free_angle | max_force | max_torque")
        ->required()
        ->check(CLI::IsMember({"free_angle", "max_force", "max_torque"}));

    auto* sim = app.add_subcommand("simulate", "Closed-loop dummy-arm scenario run");
    sim->fallthrough();
    sim->add_option("--scenario", scenario_path, "Scenario file (config format, scenario.* keys)")
        ->required();
    sim->add_option("--mode", mode, "position | gravity | pid (overrides scenario.mode)")
        ->check(CLI::IsMember({"position", "gravity", "pid"}));

    auto* bw = app.add_subcommand("bandwidth", "Unloaded-actuator sine response metrics over frequencies");
    bw->fallthrough();
    bw->add_option("--freqs", freqs, "Comma-separated frequencies, Hz")->required();
    bw->add_option("--joint", joint, "elbow | shoulder")
        ->required()
        ->check(CLI::IsMember({"elbow", "shoulder"}));
    bw->add_option("--cycles", cycles, "Sine cycles per run (default 6)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << e.what() << "\n";
        return 1;
    }

    try {
        pm::ModelConfig cfg = resolve_config(config_path);
        if (seed_opt->count() > 0) cfg.sim.seed = seed;

        pm::CsvTable table;
        if (app.got_subcommand(lisper)) {
            if (lisper->got_subcommand(lcurve))
                table = cmd_lisper_curve(cfg, p_start, p_end, p_step);
            else
                table = cmd_lisper_force(cfg, angle_deg, p_start, p_end, p_step);
        } else if (app.got_subcommand(scasper)) {
            if (scasper->got_subcommand(sangle))
                table = cmd_scasper_angle(cfg, p_start, p_end, p_step);
            else
                table = cmd_scasper_torque(cfg, angle_deg, p_start, p_end, p_step);
        } else if (app.got_subcommand(inv)) {
            table = cmd_inverse(cfg, joint, angle_deg, load);
        } else if (app.got_subcommand(sweep)) {
            table = cmd_sweep(cfg, param, values, metric);
        } else if (app.got_subcommand(sim)) {
            std::optional<std::uint64_t> seed_override;
            if (seed_opt->count() > 0) seed_override = seed;
            table = cmd_simulate(cfg, scenario_path, mode, seed_override);
        } else {
            table = cmd_bandwidth(cfg, freqs, joint, cycles);
        }
        write_output(out_path, pm::to_csv(table));
        return 0;
    } catch (const pm::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 1;
    } catch (const pm::ModelError& e) {
        std::cerr << "model error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
