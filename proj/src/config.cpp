#include "cmpol/config.hpp"

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <fstream>
#include <functional>

#include "cmpol/constants.hpp"
#include "cmpol/errors.hpp"

namespace cmpol {

using constants::two_pi;

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

std::string lower(std::string s) {
    std::transform(s.begin(), s.end(), s.begin(),
                   [](unsigned char c) { return std::tolower(c); });
    return s;
}

// number with optional unit suffix; scales maps suffix -> multiplier and ""
// names the bare unit
double parse_suffixed(const std::string& key, const std::string& value,
                      const std::vector<std::pair<std::string, double>>& scales) {
    const std::string v = trim(value);
    char* end = nullptr;
    const double x = std::strtod(v.c_str(), &end);
    if (end == v.c_str())
        throw ConfigError(key + ": cannot parse number from '" + value + "'");
    const std::string suffix = lower(trim(std::string(end)));
    for (const auto& [name, scale] : scales)
        if (suffix == name) return x * scale;
    throw ConfigError(key + ": unknown unit '" + suffix + "' in '" + value + "'");
}

double parse_number(const std::string& key, const std::string& value) {
    return parse_suffixed(key, value, {{"", 1.0}});
}

// ordinary frequency in hz (bare numbers are hz)
double parse_frequency(const std::string& key, const std::string& value) {
    return parse_suffixed(
        key, value,
        {{"", 1.0}, {"hz", 1.0}, {"khz", 1e3}, {"mhz", 1e6}, {"ghz", 1e9}});
}

// internal convention: config frequencies are ordinary, the model is angular
double parse_angular(const std::string& key, const std::string& value) {
    return two_pi * parse_frequency(key, value);
}

double parse_length(const std::string& key, const std::string& value) {
    return parse_suffixed(
        key, value, {{"", 1.0}, {"m", 1.0}, {"mm", 1e-3}, {"um", 1e-6}, {"nm", 1e-9}});
}

int parse_int(const std::string& key, const std::string& value) {
    const double x = parse_number(key, value);
    const int n = static_cast<int>(std::lround(x));
    if (x != static_cast<double>(n))
        throw ConfigError(key + ": expected an integer, got '" + value + "'");
    return n;
}

double require_positive(const std::string& key, double v) {
    if (!(v > 0.0)) throw ConfigError(key + ": must be > 0");
    return v;
}

double require_nonnegative(const std::string& key, double v) {
    if (!(v >= 0.0)) throw ConfigError(key + ": must be >= 0");
    return v;
}

int require_dim(const std::string& key, int v) {
    if (v < 2) throw ConfigError(key + ": truncation dimension must be >= 2");
    return v;
}

struct KeySpec {
    const char* name;
    const char* doc;  // "default | meaning", config units
    std::function<void(ResolvedConfig&, const std::string&, const std::string&)>
        apply;  // (cfg, key, value)
};

const std::vector<KeySpec>& registry() {
    using R = ResolvedConfig;
    using S = const std::string&;
    static const std::vector<KeySpec> keys = {
        {"zero_field_splitting", "2.87 ghz | spin zero-field splitting",
         [](R& c, S k, S v) { c.params.D = require_nonnegative(k, parse_angular(k, v)); }},
        {"g_factor", "2 | electron g-factor",
         [](R& c, S k, S v) { c.params.g_e = require_positive(k, parse_number(k, v)); }},
        {"bias_field_spin", "0.06823 (T) | spin Zeeman field",
         [](R& c, S k, S v) { c.params.B_ex = require_nonnegative(k, parse_number(k, v)); }},
        {"bias_field_magnon", "computed (T) | magnon bias, default puts gamma B_0 at 2 ghz",
         [](R& c, S k, S v) { c.params.B_0 = require_nonnegative(k, parse_number(k, v)); }},
        {"anisotropy_constant", "computed (J/m^3) | magnetocrystalline anisotropy, default calibrates |K| to 128 hz at 50 nm",
         [](R& c, S k, S v) { c.params.K_an = parse_number(k, v); }},
        {"saturation_magnetization", "1.94e5 (A/m) | sphere magnetization",
         [](R& c, S k, S v) { c.params.M_s = require_positive(k, parse_number(k, v)); }},
        {"sphere_radius", "50 nm | magnon sphere radius",
         [](R& c, S k, S v) { c.params.R = require_positive(k, parse_length(k, v)); }},
        {"total_spin", "1e6 | total spin number of the sphere (assumed)",
         [](R& c, S k, S v) { c.params.s_total = require_nonnegative(k, parse_number(k, v)); }},
        {"cavity_frequency", "2 ghz | microwave cavity resonance",
         [](R& c, S k, S v) { c.params.omega_c = require_positive(k, parse_angular(k, v)); }},
        {"inductance", "2e-9 (H) | resonator inductance",
         [](R& c, S k, S v) { c.params.L_a = require_positive(k, parse_number(k, v)); }},
        {"wire_distance", "50 nm | spin distance from the cavity wire",
         [](R& c, S k, S v) { c.params.d = require_positive(k, parse_length(k, v)); }},
        {"drive_frequency", "0 hz | magnon drive frequency (rotating frame)",
         [](R& c, S k, S v) { c.params.omega_d = require_nonnegative(k, parse_angular(k, v)); }},
        {"drive_amplitude", "0 hz | magnon drive rate",
         [](R& c, S k, S v) { c.params.Omega_d = require_nonnegative(k, parse_angular(k, v)); }},
        {"kappa_c", "1 mhz | cavity linewidth",
         [](R& c, S k, S v) { c.params.kappa_c = require_nonnegative(k, parse_angular(k, v)); }},
        {"kappa_m", "1 mhz | magnon linewidth",
         [](R& c, S k, S v) { c.params.kappa_m = require_nonnegative(k, parse_angular(k, v)); }},
        {"kappa_minus", "1 mhz | lower-polariton decay",
         [](R& c, S k, S v) { c.params.kappa_minus = require_nonnegative(k, parse_angular(k, v)); }},
        {"gamma_perp", "1 khz | spin decay",
         [](R& c, S k, S v) { c.params.gamma_perp = require_nonnegative(k, parse_angular(k, v)); }},
        {"mean_field_mode", "squeeze_target | squeeze_target, mean_given, or steady_state",
         [](R& c, S k, S v) {
             const std::string m = lower(trim(v));
             if (m == "squeeze_target") c.params.mode = MeanFieldMode::squeeze_target;
             else if (m == "mean_given") c.params.mode = MeanFieldMode::mean_given;
             else if (m == "steady_state") c.params.mode = MeanFieldMode::steady_state;
             else throw ConfigError(k + ": unknown mode '" + v + "'");
         }},
        {"mean_m_re", "0 | real part of <m> for mean_given",
         [](R& c, S k, S v) {
             c.params.mean_m = {parse_number(k, v), c.params.mean_m.imag()};
         }},
        {"mean_m_im", "0 | imaginary part of <m> for mean_given",
         [](R& c, S k, S v) {
             c.params.mean_m = {c.params.mean_m.real(), parse_number(k, v)};
         }},
        {"r_m_target", "3 | squeezing parameter for squeeze_target",
         [](R& c, S k, S v) { c.params.r_m_target = parse_number(k, v); }},
        {"cal_g_ref", "0.2 mhz | magnon-cavity coupling at the reference radius",
         [](R& c, S k, S v) { c.params.cal.g_ref = require_positive(k, parse_angular(k, v)); }},
        {"cal_r_ref", "50 nm | reference radius of the coupling calibration",
         [](R& c, S k, S v) { c.params.cal.R_ref = require_positive(k, parse_length(k, v)); }},
        {"cal_exponent", "1 | power law of coupling versus radius",
         [](R& c, S k, S v) { c.params.cal.p = parse_number(k, v); }},
        {"scenario", "fig3a | default scenario for reproduce",
         [](R& c, S k, S v) {
             const std::string id = lower(trim(v));
             const auto& ids = scenario_ids();
             if (std::find(ids.begin(), ids.end(), id) == ids.end())
                 throw ConfigError(k + ": unknown scenario '" + v + "'");
             c.scenario = id;
         }},
        {"out_dir", "out | output directory",
         [](R& c, S, S v) { c.out_dir = trim(v); }},
        {"ratio", "1000 | Delta_c / omega_minus for cmp_vs_jc (>= 100)",
         [](R& c, S k, S v) {
             c.options.ratio = parse_number(k, v);
             if (c.options.ratio < 100.0) throw ConfigError(k + ": must be >= 100");
         }},
        {"fig_ratio", "1e6 | Delta_c / omega_minus fixing the figure time axes",
         [](R& c, S k, S v) {
             c.options.fig_ratio = parse_number(k, v);
             if (c.options.fig_ratio < 1.0) throw ConfigError(k + ": must be >= 1");
         }},
        {"g_r", "3.5 mhz | pinned spin-polariton coupling for the figure runs",
         [](R& c, S k, S v) { c.options.g_r = require_positive(k, parse_angular(k, v)); }},
        {"lambda_cmp", "7 khz | spin-cavity coupling used by cmp_vs_jc",
         [](R& c, S k, S v) { c.options.lambda = require_positive(k, parse_angular(k, v)); }},
        {"jc_dim", "10 | polariton truncation of the single-spin model",
         [](R& c, S k, S v) { c.options.jc_dim = require_dim(k, parse_int(k, v)); }},
        {"tc_dim", "10 | polariton truncation of the closed two-spin model",
         [](R& c, S k, S v) { c.options.tc_dim = require_dim(k, parse_int(k, v)); }},
        {"cmp_lp_dim", "20 | lower-polariton truncation of the two-branch model",
         [](R& c, S k, S v) { c.options.cmp_lp_dim = require_dim(k, parse_int(k, v)); }},
        {"cmp_hp_dim", "5 | upper-polariton truncation of the two-branch model",
         [](R& c, S k, S v) { c.options.cmp_hp_dim = require_dim(k, parse_int(k, v)); }},
        {"open_tc_dim", "6 | polariton truncation of the dissipative two-spin run",
         [](R& c, S k, S v) { c.options.open_tc_dim = require_dim(k, parse_int(k, v)); }},
        {"grid_per_period", "400 | output samples per oscillation period",
         [](R& c, S k, S v) {
             c.options.grid_per_period = parse_int(k, v);
             if (c.options.grid_per_period < 2) throw ConfigError(k + ": must be >= 2");
         }},
        {"fig3_periods", "3.5 | Rabi periods covered by the exchange run",
         [](R& c, S k, S v) {
             c.options.fig3_periods = require_positive(k, parse_number(k, v));
         }},
        {"fig4_periods", "2 | exchange periods covered by the dispersive run",
         [](R& c, S k, S v) {
             c.options.fig4_periods = require_positive(k, parse_number(k, v));
         }},
        {"rtol", "1e-9 | integrator relative tolerance",
         [](R& c, S k, S v) { c.options.rtol = require_positive(k, parse_number(k, v)); }},
        {"atol", "1e-12 | integrator absolute tolerance",
         [](R& c, S k, S v) { c.options.atol = require_nonnegative(k, parse_number(k, v)); }},
    };
    return keys;
}

const KeySpec* find_key(const std::string& name) {
    for (const auto& k : registry())
        if (name == k.name) return &k;
    return nullptr;
}

void read_file(const std::string& path, std::map<std::string, std::string>& raw) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file: " + path);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        const std::string s = trim(line);
        if (s.empty()) continue;
        if (s.front() == '[' && s.back() == ']') continue;  // section headers
        const auto eq = s.find('=');
        if (eq == std::string::npos)
            throw ConfigError(path + ":" + std::to_string(lineno) +
                              ": expected key = value");
        const std::string key = lower(trim(s.substr(0, eq)));
        if (key.empty())
            throw ConfigError(path + ":" + std::to_string(lineno) + ": empty key");
        raw[key] = trim(s.substr(eq + 1));
    }
}

}  // namespace

ResolvedConfig resolve_config(const std::string& path,
                              const std::vector<std::string>& overrides,
                              std::ostream& notices) {
    ResolvedConfig cfg;
    cfg.params = nominal_params();
    cfg.options.g_r = two_pi * 3.5e6;
    cfg.options.lambda = two_pi * 7e3;

    if (!path.empty()) read_file(path, cfg.raw);
    for (const auto& ov : overrides) {
        const auto eq = ov.find('=');
        if (eq == std::string::npos)
            throw ConfigError("override must look like key=value: " + ov);
        cfg.raw[lower(trim(ov.substr(0, eq)))] = trim(ov.substr(eq + 1));
    }

    for (const auto& [key, value] : cfg.raw) {
        const KeySpec* spec = find_key(key);
        if (!spec) throw ConfigError("unknown config key: " + key);
        spec->apply(cfg, key, value);
    }

    // defaults that track other inputs when not set explicitly
    if (!cfg.raw.count("bias_field_spin"))
        cfg.params.B_ex =
            two_pi * 1.91e9 * constants::hbar / (cfg.params.g_e * constants::mu_bohr);
    if (!cfg.raw.count("bias_field_magnon"))
        cfg.params.B_0 = default_bias_field(cfg.params.g_e);
    if (!cfg.raw.count("anisotropy_constant"))
        cfg.params.K_an =
            default_anisotropy_constant(cfg.params.g_e, cfg.params.M_s);

    for (const auto& k : registry())
        if (!cfg.raw.count(k.name)) cfg.defaulted.push_back(k.name);
    if (!cfg.defaulted.empty()) {
        notices << "notice: defaults used for:";
        for (const auto& k : cfg.defaulted) notices << " " << k;
        notices << "\n";
    }
    if (!cfg.raw.count("total_spin"))
        notices << "notice: total_spin 1e6 is an assumed sphere spin count; it "
                   "sets the magnon frequency shift (2 s_total - 1) K\n";
    return cfg;
}

std::vector<std::string> config_key_docs() {
    std::vector<std::string> out;
    for (const auto& k : registry())
        out.push_back(std::string(k.name) + "  " + k.doc);
    return out;
}

}  // namespace cmpol
