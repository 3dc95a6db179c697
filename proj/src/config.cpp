#include "hamjac/config.hpp"

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <initializer_list>
#include <sstream>
#include <string>

#include <json.hpp>

#include "hamjac/errors.hpp"

namespace hamjac::config {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& field, const std::string& why) {
    throw ConfigError(field + ": " + why);
}

void check_keys(const json& obj, const std::string& scope,
                std::initializer_list<const char*> allowed) {
    for (auto it = obj.begin(); it != obj.end(); ++it) {
        bool known = false;
        for (const char* k : allowed)
            if (it.key() == k) {
                known = true;
                break;
            }
        if (!known) fail(scope, "unknown key '" + it.key() + "'");
    }
}

double get_num(const json& j, const std::string& path) {
    if (!j.is_number()) fail(path, "must be a number");
    return j.get<double>();
}

int get_int(const json& j, const std::string& path) {
    if (!j.is_number_integer()) fail(path, "must be an integer");
    return j.get<int>();
}

bool get_bool(const json& j, const std::string& path) {
    if (!j.is_boolean()) fail(path, "must be a boolean");
    return j.get<bool>();
}

std::string get_str(const json& j, const std::string& path) {
    if (!j.is_string()) fail(path, "must be a string");
    return j.get<std::string>();
}

dynsys::Kind parse_kind(const std::string& name) {
    if (name == "exact_relativistic") return dynsys::Kind::exact_relativistic;
    if (name == "first_order") return dynsys::Kind::first_order;
    if (name == "transformed") return dynsys::Kind::transformed;
    if (name == "quadratic_drag") return dynsys::Kind::quadratic_drag;
    if (name == "free_constant_force") return dynsys::Kind::free_constant_force;
    if (name == "harmonic_reference") return dynsys::Kind::harmonic_reference;
    fail("kind", "unknown kind '" + name + "'");
}

void parse_system(const json& j, dynsys::SystemParams& p) {
    check_keys(j, "system", {"m", "lambda", "gamma", "alpha", "c"});
    if (j.contains("m")) p.m = get_num(j["m"], "system.m");
    if (j.contains("lambda")) p.lambda = get_num(j["lambda"], "system.lambda");
    if (j.contains("gamma")) p.gamma = get_num(j["gamma"], "system.gamma");
    if (j.contains("alpha")) p.alpha = get_num(j["alpha"], "system.alpha");
    if (j.contains("c")) p.c = get_num(j["c"], "system.c");
    if (!(p.m > 0.0)) fail("system.m", "must be > 0");
    if (!(p.lambda > 0.0)) fail("system.lambda", "must be > 0");
    if (!(p.gamma >= 0.0)) fail("system.gamma", "must be >= 0");
    if (!(p.alpha >= 0.0)) fail("system.alpha", "must be >= 0");
    if (!(p.c >= 0.0)) fail("system.c", "must be >= 0");
}

void parse_integrator(const json& j, numerics::IntegratorConfig& c) {
    check_keys(j, "integrator",
               {"method", "step", "t_end", "abs_tol", "rel_tol"});
    if (j.contains("method")) {
        std::string m = get_str(j["method"], "integrator.method");
        if (m == "rk4")
            c.method = numerics::Method::rk4_fixed;
        else if (m == "dopri")
            c.method = numerics::Method::rk45_adaptive;
        else
            fail("integrator.method", "must be 'rk4' or 'dopri'");
    }
    if (j.contains("step")) c.step = get_num(j["step"], "integrator.step");
    if (j.contains("t_end")) c.t_end = get_num(j["t_end"], "integrator.t_end");
    if (j.contains("abs_tol"))
        c.abs_tol = get_num(j["abs_tol"], "integrator.abs_tol");
    if (j.contains("rel_tol"))
        c.rel_tol = get_num(j["rel_tol"], "integrator.rel_tol");
    if (!(c.step > 0.0)) fail("integrator.step", "must be > 0");
    if (!(c.t_end > 0.0)) fail("integrator.t_end", "must be > 0");
    if (!(c.abs_tol > 0.0)) fail("integrator.abs_tol", "must be > 0");
    if (!(c.rel_tol > 0.0)) fail("integrator.rel_tol", "must be > 0");
}

void parse_hj(const json& j, RunConfig::Hj& h) {
    check_keys(j, "hj", {"E", "x_lo", "x_hi", "n_grid", "rel_tol", "max_terms"});
    if (j.contains("E")) {
        h.E = get_num(j["E"], "hj.E");
        h.has_E = true;
    }
    if (j.contains("x_lo")) h.x_lo = get_num(j["x_lo"], "hj.x_lo");
    if (j.contains("x_hi")) h.x_hi = get_num(j["x_hi"], "hj.x_hi");
    if (j.contains("n_grid")) h.n_grid = get_int(j["n_grid"], "hj.n_grid");
    if (j.contains("rel_tol")) h.rel_tol = get_num(j["rel_tol"], "hj.rel_tol");
    if (j.contains("max_terms"))
        h.max_terms = get_int(j["max_terms"], "hj.max_terms");
    if (!(h.x_lo <= h.x_hi)) fail("hj.x_lo", "must be <= hj.x_hi");
    if (h.n_grid < 2) fail("hj.n_grid", "must be >= 2");
    if (!(h.rel_tol > 0.0)) fail("hj.rel_tol", "must be > 0");
    if (h.max_terms < 1) fail("hj.max_terms", "must be >= 1");
}

void parse_verify(const json& j, RunConfig::Verify& v) {
    check_keys(j, "verify",
               {"condition_tol", "energy_tol", "dkdx_tol", "el_tol",
                "roundtrip_tol", "commute_tol", "drift_tol", "tau_scale"});
    if (j.contains("condition_tol"))
        v.condition_tol = get_num(j["condition_tol"], "verify.condition_tol");
    if (j.contains("energy_tol"))
        v.energy_tol = get_num(j["energy_tol"], "verify.energy_tol");
    if (j.contains("dkdx_tol"))
        v.dkdx_tol = get_num(j["dkdx_tol"], "verify.dkdx_tol");
    if (j.contains("el_tol")) v.el_tol = get_num(j["el_tol"], "verify.el_tol");
    if (j.contains("roundtrip_tol"))
        v.roundtrip_tol = get_num(j["roundtrip_tol"], "verify.roundtrip_tol");
    if (j.contains("commute_tol"))
        v.commute_tol = get_num(j["commute_tol"], "verify.commute_tol");
    if (j.contains("drift_tol"))
        v.drift_tol = get_num(j["drift_tol"], "verify.drift_tol");
    if (j.contains("tau_scale"))
        v.tau_scale = get_num(j["tau_scale"], "verify.tau_scale");
    const std::pair<double, const char*> tols[] = {
        {v.condition_tol, "verify.condition_tol"},
        {v.energy_tol, "verify.energy_tol"},
        {v.dkdx_tol, "verify.dkdx_tol"},
        {v.el_tol, "verify.el_tol"},
        {v.roundtrip_tol, "verify.roundtrip_tol"},
        {v.commute_tol, "verify.commute_tol"},
        {v.drift_tol, "verify.drift_tol"}};
    for (auto [val, name] : tols)
        if (!(val > 0.0)) fail(name, "must be > 0");
    if (!(v.tau_scale > 0.0)) fail("verify.tau_scale", "must be > 0");
}

void parse_recover(const json& j, RunConfig::Recover& r) {
    check_keys(j, "recover", {"x0", "tol", "experiment_original"});
    if (j.contains("x0")) {
        r.x0 = get_num(j["x0"], "recover.x0");
        r.has_x0 = true;
    }
    if (j.contains("tol")) r.tol = get_num(j["tol"], "recover.tol");
    if (j.contains("experiment_original"))
        r.experiment_original =
            get_bool(j["experiment_original"], "recover.experiment_original");
    if (!(r.tol > 0.0)) fail("recover.tol", "must be > 0");
}

void parse_sweep(const json& j, RunConfig::Sweep& s) {
    check_keys(j, "sweep", {"pairs", "alpha_scan"});
    if (j.contains("pairs")) {
        const json& arr = j["pairs"];
        if (!arr.is_array()) fail("sweep.pairs", "must be an array");
        for (std::size_t i = 0; i < arr.size(); ++i) {
            std::string path = "sweep.pairs[" + std::to_string(i) + "]";
            const json& e = arr[i];
            if (!e.is_array() || e.size() != 2)
                fail(path, "must be a [gamma, alpha] pair");
            double g = get_num(e[0], path + "[0]");
            double a = get_num(e[1], path + "[1]");
            if (!(g >= 0.0)) fail(path + "[0]", "must be >= 0");
            if (!(a >= 0.0)) fail(path + "[1]", "must be >= 0");
            s.pairs.emplace_back(g, a);
        }
    }
    if (j.contains("alpha_scan")) {
        const json& arr = j["alpha_scan"];
        if (!arr.is_array()) fail("sweep.alpha_scan", "must be an array");
        for (std::size_t i = 0; i < arr.size(); ++i) {
            std::string path = "sweep.alpha_scan[" + std::to_string(i) + "]";
            double a = get_num(arr[i], path);
            if (!(a >= 0.0)) fail(path, "must be >= 0");
            s.alpha_scan.push_back(a);
        }
    }
}

std::string g17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

}  // namespace

RunConfig parse_config(const std::string& json_text) {
    json j;
    try {
        j = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("config: invalid JSON: ") + e.what());
    }
    if (!j.is_object()) throw ConfigError("config: top level must be an object");
    check_keys(j, "config",
               {"kind", "system", "initial", "integrator", "hj", "verify",
                "recover", "sweep", "out_dir", "format"});

    RunConfig cfg;
    if (j.contains("kind")) cfg.kind = parse_kind(get_str(j["kind"], "kind"));
    if (j.contains("system")) {
        if (!j["system"].is_object()) fail("system", "must be an object");
        parse_system(j["system"], cfg.system);
    } else {
        parse_system(json::object(), cfg.system);
    }
    if (j.contains("initial")) {
        const json& ini = j["initial"];
        if (!ini.is_object()) fail("initial", "must be an object");
        check_keys(ini, "initial", {"x0", "v0"});
        if (ini.contains("x0")) cfg.x0 = get_num(ini["x0"], "initial.x0");
        if (ini.contains("v0")) cfg.v0 = get_num(ini["v0"], "initial.v0");
    }
    if (j.contains("integrator")) {
        if (!j["integrator"].is_object()) fail("integrator", "must be an object");
        parse_integrator(j["integrator"], cfg.integrator);
    }
    if (j.contains("hj")) {
        if (!j["hj"].is_object()) fail("hj", "must be an object");
        parse_hj(j["hj"], cfg.hj);
    }
    if (j.contains("verify")) {
        if (!j["verify"].is_object()) fail("verify", "must be an object");
        parse_verify(j["verify"], cfg.verify);
    }
    if (j.contains("recover")) {
        if (!j["recover"].is_object()) fail("recover", "must be an object");
        parse_recover(j["recover"], cfg.recover);
    }
    if (j.contains("sweep")) {
        if (!j["sweep"].is_object()) fail("sweep", "must be an object");
        parse_sweep(j["sweep"], cfg.sweep);
    }
    if (j.contains("out_dir")) {
        cfg.out_dir = get_str(j["out_dir"], "out_dir");
        if (cfg.out_dir.empty()) fail("out_dir", "must be non-empty");
    }
    if (j.contains("format")) {
        std::string f = get_str(j["format"], "format");
        if (f == "csv")
            cfg.format = RunConfig::Format::csv;
        else if (f == "json")
            cfg.format = RunConfig::Format::json;
        else
            fail("format", "must be 'csv' or 'json'");
    }

    // Kind/parameter couplings are config errors, not runtime domain errors.
    if (cfg.kind == dynsys::Kind::exact_relativistic && !(cfg.system.c > 0.0))
        fail("system.c", "must be > 0 for kind exact_relativistic");
    if (cfg.kind == dynsys::Kind::quadratic_drag && cfg.system.alpha != 0.0)
        fail("system.alpha", "must be 0 for kind quadratic_drag");
    return cfg;
}

RunConfig load_config_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("config: cannot read file '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str());
}

std::string serialize_config(const RunConfig& cfg) {
    // Hand-assembled with sorted keys and %.17g numbers so the digest does not
    // depend on any JSON library's float formatting. out_dir and format are
    // deliberately omitted: the digest identifies the computation, not where
    // or how its tables are written.
    std::ostringstream os;
    os << "{\"hj\":{\"E\":" << (cfg.hj.has_E ? g17(cfg.hj.E) : "null")
       << ",\"max_terms\":" << cfg.hj.max_terms << ",\"n_grid\":" << cfg.hj.n_grid
       << ",\"rel_tol\":" << g17(cfg.hj.rel_tol)
       << ",\"x_hi\":" << g17(cfg.hj.x_hi) << ",\"x_lo\":" << g17(cfg.hj.x_lo)
       << "}";
    os << ",\"initial\":{\"v0\":" << g17(cfg.v0) << ",\"x0\":" << g17(cfg.x0)
       << "}";
    os << ",\"integrator\":{\"abs_tol\":" << g17(cfg.integrator.abs_tol)
       << ",\"method\":\""
       << (cfg.integrator.method == numerics::Method::rk4_fixed ? "rk4"
                                                                : "dopri")
       << "\",\"rel_tol\":" << g17(cfg.integrator.rel_tol)
       << ",\"step\":" << g17(cfg.integrator.step)
       << ",\"t_end\":" << g17(cfg.integrator.t_end) << "}";
    os << ",\"kind\":\"" << kind_name(cfg.kind) << "\"";
    os << ",\"recover\":{\"experiment_original\":"
       << (cfg.recover.experiment_original ? "true" : "false")
       << ",\"tol\":" << g17(cfg.recover.tol)
       << ",\"x0\":" << (cfg.recover.has_x0 ? g17(cfg.recover.x0) : "null")
       << "}";
    os << ",\"sweep\":{\"alpha_scan\":[";
    for (std::size_t i = 0; i < cfg.sweep.alpha_scan.size(); ++i)
        os << (i ? "," : "") << g17(cfg.sweep.alpha_scan[i]);
    os << "],\"pairs\":[";
    for (std::size_t i = 0; i < cfg.sweep.pairs.size(); ++i)
        os << (i ? "," : "") << "[" << g17(cfg.sweep.pairs[i].first) << ","
           << g17(cfg.sweep.pairs[i].second) << "]";
    os << "]}";
    os << ",\"system\":{\"alpha\":" << g17(cfg.system.alpha)
       << ",\"c\":" << g17(cfg.system.c) << ",\"gamma\":" << g17(cfg.system.gamma)
       << ",\"lambda\":" << g17(cfg.system.lambda)
       << ",\"m\":" << g17(cfg.system.m) << "}";
    os << ",\"verify\":{\"commute_tol\":" << g17(cfg.verify.commute_tol)
       << ",\"condition_tol\":" << g17(cfg.verify.condition_tol)
       << ",\"dkdx_tol\":" << g17(cfg.verify.dkdx_tol)
       << ",\"drift_tol\":" << g17(cfg.verify.drift_tol)
       << ",\"el_tol\":" << g17(cfg.verify.el_tol)
       << ",\"energy_tol\":" << g17(cfg.verify.energy_tol)
       << ",\"roundtrip_tol\":" << g17(cfg.verify.roundtrip_tol)
       << ",\"tau_scale\":" << g17(cfg.verify.tau_scale) << "}";
    os << "}";
    return os.str();
}

std::string fnv1a_hex(const std::string& bytes) {
    std::uint64_t h = 14695981039346656037ULL;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx",
                  static_cast<unsigned long long>(h));
    return buf;
}

const char* kind_name(dynsys::Kind kind) {
    switch (kind) {
        case dynsys::Kind::exact_relativistic: return "exact_relativistic";
        case dynsys::Kind::first_order: return "first_order";
        case dynsys::Kind::transformed: return "transformed";
        case dynsys::Kind::quadratic_drag: return "quadratic_drag";
        case dynsys::Kind::free_constant_force: return "free_constant_force";
        case dynsys::Kind::harmonic_reference: return "harmonic_reference";
    }
    return "unknown";
}

}  // namespace hamjac::config
