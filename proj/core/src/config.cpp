#include "pneumodel/config.hpp"

#include "pneumodel/errors.hpp"
#include "pneumodel/units.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <sstream>

namespace pneumodel {

namespace {

std::string trim(const std::string& s) {
    size_t b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    size_t e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

double parse_double(const std::string& key, const std::string& v) {
    const char* s = v.c_str();
    char* end = nullptr;
    double x = std::strtod(s, &end);
    if (end == s || *end != '\0')
        throw ConfigError(key + ": not a number: '" + v + "'");
    return x;
}

long long parse_int(const std::string& key, const std::string& v) {
    const char* s = v.c_str();
    char* end = nullptr;
    long long x = std::strtoll(s, &end, 10);
    if (end == s || *end != '\0')
        throw ConfigError(key + ": not an integer: '" + v + "'");
    return x;
}

bool parse_bool(const std::string& key, const std::string& v) {
    if (v == "true" || v == "1") return true;
    if (v == "false" || v == "0") return false;
    throw ConfigError(key + ": not a boolean (true/false): '" + v + "'");
}

std::string fmt_double(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

struct KeyDef {
    std::string key;
    std::function<std::string(const ModelConfig&)> get;
    std::function<void(ModelConfig&, const std::string&)> set;
};

using FieldRef = std::function<double&(ModelConfig&)>;
using IntRef = std::function<int&(ModelConfig&)>;

double& deref(const FieldRef& f, const ModelConfig& c) {
    return f(const_cast<ModelConfig&>(c));
}

// Registry of every config key, in file order. Values are stored internally
// in rad/Pa/m/s; _deg and _kpa keys convert at this boundary.
std::vector<KeyDef> build_registry() {
    std::vector<KeyDef> r;
    // scale: internal value = file value * scale
    auto scaled = [&r](const std::string& key, FieldRef f, double scale) {
        r.push_back({key,
                     [f, scale](const ModelConfig& c) { return fmt_double(deref(f, c) / scale); },
                     [f, scale, key](ModelConfig& c, const std::string& v) {
                         f(c) = parse_double(key, v) * scale;
                     }});
    };
    auto num = [&](const std::string& key, FieldRef f) { scaled(key, f, 1.0); };
    auto deg = [&](const std::string& key, FieldRef f) { scaled(key, f, kPi / 180.0); };
    auto kpa = [&](const std::string& key, FieldRef f) { scaled(key, f, 1000.0); };
    auto integer = [&r](const std::string& key, IntRef f) {
        r.push_back({key,
                     [f](const ModelConfig& c) {
                         return std::to_string(f(const_cast<ModelConfig&>(c)));
                     },
                     [f, key](ModelConfig& c, const std::string& v) {
                         f(c) = static_cast<int>(parse_int(key, v));
                     }});
    };

    num("material.e_silicone_pa", [](ModelConfig& c) -> double& { return c.material.e_silicone; });
    num("material.poisson", [](ModelConfig& c) -> double& { return c.material.poisson; });
    num("material.e_pipe_pa", [](ModelConfig& c) -> double& { return c.material.e_pipe; });

    deg("lisper.beta_deg", [](ModelConfig& c) -> double& { return c.lisper.beta; });
    num("lisper.r_inner_m", [](ModelConfig& c) -> double& { return c.lisper.r_inner; });
    num("lisper.r_outer_m", [](ModelConfig& c) -> double& { return c.lisper.r_outer; });
    num("lisper.l_thick", [](ModelConfig& c) -> double& { return c.lisper.l_thick; });
    num("lisper.l_base_m", [](ModelConfig& c) -> double& { return c.lisper.l_base; });
    num("lisper.l_wall_initial_m", [](ModelConfig& c) -> double& { return c.lisper.l_wall_initial; });
    num("lisper.h_base_m", [](ModelConfig& c) -> double& { return c.lisper.h_base; });
    num("lisper.r2_external_m", [](ModelConfig& c) -> double& { return c.lisper.r2_external; });
    num("lisper.d_bellow_wall_m", [](ModelConfig& c) -> double& { return c.lisper.d_bellow_wall; });
    integer("lisper.n_bellows", [](ModelConfig& c) -> int& { return c.lisper.n_bellows; });
    deg("lisper.gamma_deg", [](ModelConfig& c) -> double& { return c.lisper.gamma; });
    num("lisper.l_equiv_m", [](ModelConfig& c) -> double& { return c.lisper.l_equiv; });
    num("lisper.h2_m", [](ModelConfig& c) -> double& { return c.lisper.h2; });
    num("lisper.a_feet_m2", [](ModelConfig& c) -> double& { return c.lisper.a_feet; });
    num("lisper.a_base_m2", [](ModelConfig& c) -> double& { return c.lisper.a_base; });
    num("lisper.r_base_m", [](ModelConfig& c) -> double& { return c.lisper.r_base; });
    deg("lisper.theta_initial_deg", [](ModelConfig& c) -> double& { return c.lisper.theta_initial; });

    integer("scasper.n_bags", [](ModelConfig& c) -> int& { return c.scasper.n_bags; });
    num("scasper.bag_width_m", [](ModelConfig& c) -> double& { return c.scasper.bag_width; });
    num("scasper.bag_length_m", [](ModelConfig& c) -> double& { return c.scasper.bag_length; });
    num("scasper.r1_m", [](ModelConfig& c) -> double& { return c.scasper.r1; });
    num("scasper.l_pipe_m", [](ModelConfig& c) -> double& { return c.scasper.l_pipe; });
    num("scasper.d1_m", [](ModelConfig& c) -> double& { return c.scasper.d1; });
    num("scasper.d2_m", [](ModelConfig& c) -> double& { return c.scasper.d2; });
    num("scasper.poly_a2", [](ModelConfig& c) -> double& { return c.scasper.poly_a2; });
    num("scasper.poly_a1", [](ModelConfig& c) -> double& { return c.scasper.poly_a1; });
    num("scasper.poly_a0", [](ModelConfig& c) -> double& { return c.scasper.poly_a0; });

    num("arm.l1_m", [](ModelConfig& c) -> double& { return c.arm.l1; });
    num("arm.l2_m", [](ModelConfig& c) -> double& { return c.arm.l2; });
    num("arm.m1_kg", [](ModelConfig& c) -> double& { return c.arm.m1; });
    num("arm.m2_kg", [](ModelConfig& c) -> double& { return c.arm.m2; });
    num("arm.r_com1_m", [](ModelConfig& c) -> double& { return c.arm.r_com1; });
    num("arm.r_com2_m", [](ModelConfig& c) -> double& { return c.arm.r_com2; });
    num("arm.g", [](ModelConfig& c) -> double& { return c.arm.g; });
    deg("arm.elbow_min_deg", [](ModelConfig& c) -> double& { return c.arm.elbow_min; });
    deg("arm.elbow_max_deg", [](ModelConfig& c) -> double& { return c.arm.elbow_max; });
    deg("arm.shoulder_min_deg", [](ModelConfig& c) -> double& { return c.arm.shoulder_min; });
    deg("arm.shoulder_max_deg", [](ModelConfig& c) -> double& { return c.arm.shoulder_max; });

    num("sim.abs_tol", [](ModelConfig& c) -> double& { return c.sim.abs_tol; });
    num("sim.x_tol", [](ModelConfig& c) -> double& { return c.sim.x_tol; });
    integer("sim.max_iter", [](ModelConfig& c) -> int& { return c.sim.max_iter; });
    num("sim.quad_rel_tol", [](ModelConfig& c) -> double& { return c.sim.quad_rel_tol; });
    integer("sim.quad_n0", [](ModelConfig& c) -> int& { return c.sim.quad_n0; });
    integer("sim.quad_n_max", [](ModelConfig& c) -> int& { return c.sim.quad_n_max; });
    num("sim.dt_s", [](ModelConfig& c) -> double& { return c.sim.dt; });
    num("sim.tau_valve_s", [](ModelConfig& c) -> double& { return c.sim.tau_valve; });
    kpa("sim.slew_max_kpa_per_s", [](ModelConfig& c) -> double& { return c.sim.slew_max; });
    kpa("sim.p_max_elbow_kpa", [](ModelConfig& c) -> double& { return c.sim.p_max_elbow; });
    kpa("sim.p_max_shoulder_kpa", [](ModelConfig& c) -> double& { return c.sim.p_max_shoulder; });
    num("sim.damping_elbow", [](ModelConfig& c) -> double& { return c.sim.damping_elbow; });
    num("sim.damping_shoulder", [](ModelConfig& c) -> double& { return c.sim.damping_shoulder; });
    r.push_back({"sim.strip_enabled",
                 [](const ModelConfig& c) { return std::string(c.sim.strip_enabled ? "true" : "false"); },
                 [](ModelConfig& c, const std::string& v) {
                     c.sim.strip_enabled = parse_bool("sim.strip_enabled", v);
                 }});
    num("sim.strip_stiffness", [](ModelConfig& c) -> double& { return c.sim.strip_stiffness; });
    num("sim.strip_damping", [](ModelConfig& c) -> double& { return c.sim.strip_damping; });
    deg("sim.strip_rest_deg", [](ModelConfig& c) -> double& { return c.sim.strip_rest; });
    num("sim.imu_rate_hz", [](ModelConfig& c) -> double& { return c.sim.imu_rate; });
    num("sim.imu_noise_std_deg", [](ModelConfig& c) -> double& { return c.sim.imu_noise_std; });
    r.push_back({"sim.seed",
                 [](const ModelConfig& c) { return std::to_string(c.sim.seed); },
                 [](ModelConfig& c, const std::string& v) {
                     const char* s = v.c_str();
                     char* end = nullptr;
                     unsigned long long x = std::strtoull(s, &end, 10);
                     if (end == s || *end != '\0')
                         throw ConfigError("sim.seed: not an unsigned integer: '" + v + "'");
                     c.sim.seed = x;
                 }});

    auto gains = [&](const std::string& prefix, PidGains ControlParams::* member) {
        num(prefix + ".kp", [member](ModelConfig& c) -> double& { return (c.control.*member).kp; });
        num(prefix + ".ki", [member](ModelConfig& c) -> double& { return (c.control.*member).ki; });
        num(prefix + ".kd", [member](ModelConfig& c) -> double& { return (c.control.*member).kd; });
        num(prefix + ".integral_limit",
            [member](ModelConfig& c) -> double& { return (c.control.*member).integral_limit; });
    };
    gains("control.elbow", &ControlParams::elbow);
    gains("control.shoulder", &ControlParams::shoulder);
    gains("control.baseline_elbow", &ControlParams::baseline_elbow);
    gains("control.baseline_shoulder", &ControlParams::baseline_shoulder);

    return r;
}

const std::vector<KeyDef>& registry() {
    static const std::vector<KeyDef> defs = build_registry();
    return defs;
}

const KeyDef* find_key(const std::string& key) {
    for (const auto& d : registry())
        if (d.key == key) return &d;
    return nullptr;
}

} // namespace

std::vector<ConfigEntry> parse_config_text(const std::string& text) {
    std::vector<ConfigEntry> out;
    std::istringstream is(text);
    std::string line;
    int lineno = 0;
    while (std::getline(is, line)) {
        ++lineno;
        const size_t hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const size_t eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError("line " + std::to_string(lineno) + ": expected 'key = value'");
        ConfigEntry e;
        e.line = lineno;
        e.key = trim(line.substr(0, eq));
        e.value = trim(line.substr(eq + 1));
        if (e.key.empty())
            throw ConfigError("line " + std::to_string(lineno) + ": empty key");
        if (e.value.empty())
            throw ConfigError("line " + std::to_string(lineno) + ": empty value for '" + e.key + "'");
        out.push_back(std::move(e));
    }
    return out;
}

void apply_config_entry(ModelConfig& cfg, const std::string& key, const std::string& value) {
    const KeyDef* def = find_key(key);
    if (!def) throw ConfigError("unknown key '" + key + "'");
    def->set(cfg, value);
}

void apply_config_entries(ModelConfig& cfg, const std::vector<ConfigEntry>& entries) {
    for (const auto& e : entries) {
        try {
            apply_config_entry(cfg, e.key, e.value);
        } catch (const ConfigError& err) {
            throw ConfigError("line " + std::to_string(e.line) + ": " + err.what());
        }
    }
}

ModelConfig load_config_text(const std::string& text) {
    ModelConfig cfg = default_config();
    apply_config_entries(cfg, parse_config_text(text));
    validate_or_throw(cfg);
    return cfg;
}

ModelConfig load_config(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("cannot open config file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    try {
        return load_config_text(buf.str());
    } catch (const ConfigError& err) {
        throw ConfigError(path + ": " + err.what());
    }
}

std::string write_config(const ModelConfig& cfg) {
    std::ostringstream os;
    for (const auto& d : registry()) os << d.key << " = " << d.get(cfg) << "\n";
    return os.str();
}

std::vector<std::string> config_keys() {
    std::vector<std::string> out;
    for (const auto& d : registry()) out.push_back(d.key);
    return out;
}

} // namespace pneumodel
