#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "cmpol/config.hpp"
#include "cmpol/constants.hpp"
#include "cmpol/errors.hpp"
#include "cmpol/evolve.hpp"
#include "cmpol/experiments.hpp"
#include "cmpol/hamiltonians.hpp"
#include "cmpol/lindblad.hpp"
#include "cmpol/operators.hpp"
#include "cmpol/scales.hpp"
#include "cmpol/selftest.hpp"
#include "cmpol/version.hpp"

namespace {

using nlohmann::json;
using namespace cmpol;

std::string fmtd(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

json raw_json(const std::map<std::string, std::string>& raw) {
    json j = json::object();
    for (const auto& [k, v] : raw) j[k] = v;
    return j;
}

// Atomic like write_csv: tmp then rename, partial files never land.
void write_json_file(const json& j, const std::string& path) {
    const std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::trunc);
        if (!out) throw ArtifactError("cannot open " + tmp + " for writing");
        out << j.dump(2) << "\n";
        if (!out) throw ArtifactError("write to " + tmp + " failed");
    }
    if (std::rename(tmp.c_str(), path.c_str()) != 0) {
        std::remove(tmp.c_str());
        throw ArtifactError("cannot rename " + tmp + " to " + path);
    }
}

// The one truncation a scenario or model actually varies; --dim maps there.
std::string dim_key_for(const std::string& target) {
    if (target == "fig3a" || target == "fig3b" || target == "jc") return "jc_dim";
    if (target == "fig4a" || target == "tc") return "tc_dim";
    if (target == "fig4b") return "open_tc_dim";
    if (target == "cmp_vs_jc" || target == "cmp") return "cmp_lp_dim";
    throw ConfigError("--dim does not apply to '" + target + "'");
}

int cmd_derive(const ResolvedConfig& cfg) {
    const DerivedScales s = derive_scales(cfg.params);
    json j = derive_report(cfg.params, s);
    j["config_inputs"] = raw_json(cfg.raw);
    std::cout << j.dump(2) << "\n";
    if (!s.lp_stable) {
        std::cerr << "error: lower polariton unstable at this operating point "
                     "(G above G_c), reduced models unavailable\n";
        return 2;
    }
    return 0;
}

int cmd_reproduce(const ResolvedConfig& cfg, const std::string& id_arg) {
    const std::string id = id_arg.empty() ? cfg.scenario : id_arg;
    ScenarioOutcome out = run_scenario(id, cfg.params, cfg.options);
    std::filesystem::create_directories(cfg.out_dir);
    std::string path;
    if (out.is_table) {
        out.table.provenance["config_inputs"] = raw_json(cfg.raw);
        path = cfg.out_dir + "/" + id + ".csv";
        write_csv(out.table, path);
    } else {
        out.report["config_inputs"] = raw_json(cfg.raw);
        path = cfg.out_dir + "/derive.json";
        write_json_file(out.report, path);
    }
    std::cout << "wrote " << path << "\n";
    return 0;
}

struct SweepSpec {
    std::string key;
    double from = 0.0;
    double to = 0.0;
    std::string unit;
    int points = 0;
    std::string quantity;
};

struct FieldSpec {
    const char* name;
    double DerivedScales::* member;
    bool angular;  // rad/s quantities also get an _over_2pi_hz column
};

const FieldSpec k_fields[] = {
    {"omega_nv", &DerivedScales::omega_nv, true},
    {"omega_m", &DerivedScales::omega_m, true},
    {"K", &DerivedScales::K, true},
    {"g_m", &DerivedScales::g_m, true},
    {"lambda", &DerivedScales::lambda, true},
    {"delta_m", &DerivedScales::delta_m, true},
    {"Delta_m", &DerivedScales::Delta_m, true},
    {"Delta_c", &DerivedScales::Delta_c, true},
    {"Delta_nv", &DerivedScales::Delta_nv, true},
    {"K_s", &DerivedScales::K_s, true},
    {"r_m", &DerivedScales::r_m, false},
    {"Delta_s", &DerivedScales::Delta_s, true},
    {"G", &DerivedScales::G, true},
    {"G_c", &DerivedScales::G_c, true},
    {"omega_plus", &DerivedScales::omega_plus, true},
    {"omega_minus", &DerivedScales::omega_minus, true},
    {"theta", &DerivedScales::theta, false},
    {"g_r", &DerivedScales::g_r, true},
    {"g_cr", &DerivedScales::g_cr, true},
    {"g_r_prime", &DerivedScales::g_r_prime, true},
    {"g_cr_prime", &DerivedScales::g_cr_prime, true},
    {"g_eff", &DerivedScales::g_eff, true},
    {"omega_eff", &DerivedScales::omega_eff, true},
    {"omega_minus_sq", &DerivedScales::omega_minus_sq, false},
    {"Omega_d_implied", &DerivedScales::Omega_d_implied, true},
};

const FieldSpec& find_field(const std::string& name) {
    for (const auto& f : k_fields)
        if (name == f.name) return f;
    std::string known;
    for (const auto& f : k_fields) known += std::string(" ") + f.name;
    throw ConfigError("unknown sweep quantity '" + name + "'; one of:" + known);
}

int cmd_sweep(const std::string& config_path,
              const std::vector<std::string>& base_overrides,
              const ResolvedConfig& cfg, const SweepSpec& sw) {
    const FieldSpec& field = find_field(sw.quantity);
    SweepTable t;
    const std::string axis = sw.unit.empty() ? sw.key : sw.key + "_" + sw.unit;
    t.columns = {axis, sw.quantity};
    if (field.angular) t.columns.push_back(sw.quantity + "_over_2pi_hz");
    for (int i = 0; i < sw.points; ++i) {
        const double v = sw.from + (sw.to - sw.from) * i / (sw.points - 1);
        std::vector<std::string> overrides = base_overrides;
        overrides.push_back(sw.key + "=" + fmtd(v) + sw.unit);
        std::ostringstream sink;
        const ResolvedConfig point = resolve_config(config_path, overrides, sink);
        const DerivedScales s = derive_scales(point.params);
        std::vector<double> row = {v, s.*(field.member)};
        if (field.angular) row.push_back(s.*(field.member) / constants::two_pi);
        t.rows.push_back(std::move(row));
    }
    t.provenance = json{{"scenario", "sweep"},  {"version", version},
                        {"key", sw.key},        {"from", sw.from},
                        {"to", sw.to},          {"unit", sw.unit},
                        {"points", sw.points},  {"quantity", sw.quantity},
                        {"config_inputs", raw_json(cfg.raw)}};
    std::filesystem::create_directories(cfg.out_dir);
    const std::string path = cfg.out_dir + "/sweep.csv";
    write_csv(t, path);
    std::cout << "wrote " << path << "\n";
    return 0;
}

struct EvolveSpec {
    std::string model = "jc";
    double t_end = 0.0;  // 0 = one exchange at the model's own coupling
    int intervals = 400;
    bool open_system = false;
    std::string engine = "auto";
};

int cmd_evolve(const ResolvedConfig& cfg, const EvolveSpec& ev) {
    const PhysicalParams& p = cfg.params;
    const ScenarioOptions& o = cfg.options;
    const DerivedScales s = derive_scales(p);
    if (!s.lp_stable || s.omega_minus <= 0.0)
        throw InstabilityError(
            "lower polariton unstable at this operating point, no reduced model");

    SpaceDescriptor sp;
    Operator H;
    QuantumState psi0;
    int n_spins = 1;
    double exchange = s.g_r;  // rate setting the default time span
    if (ev.model == "jc") {
        sp = SpaceDescriptor{{2, o.jc_dim}};
        H = build_h_jc(sp, s.Delta_nv, s.omega_minus, s.g_r);
        psi0 = basis_state(sp, {0, 0});
    } else if (ev.model == "tc") {
        sp = SpaceDescriptor{{2, 2, o.tc_dim}};
        H = build_h_tc(sp, s.Delta_nv, s.omega_minus, s.g_r);
        psi0 = basis_state(sp, {0, 1, 0});
        n_spins = 2;
    } else if (ev.model == "cmp") {
        sp = SpaceDescriptor{{2, o.cmp_lp_dim, o.cmp_hp_dim}};
        H = build_h_cmp(sp, s.Delta_nv, s.omega_minus, s.omega_plus, s.g_r,
                        s.g_cr, s.g_r_prime, s.g_cr_prime);
        psi0 = basis_state(sp, {0, 0, 0});
    } else {
        sp = SpaceDescriptor{{2, 2}};
        H = build_h_eff(sp, s.g_eff, s.omega_eff);
        psi0 = basis_state(sp, {0, 1});
        n_spins = 2;
        exchange = 2.0 * std::abs(s.g_eff);
    }

    double t_end = ev.t_end;
    if (t_end <= 0.0) {
        if (exchange == 0.0)
            throw ConfigError("model coupling vanishes here, pass --t-end");
        t_end = constants::pi / exchange;
    }
    const std::vector<double> grid = time_grid(0.0, t_end, ev.intervals);
    const std::vector<NamedObservable> obs = standard_observables(sp, n_spins);

    LindbladModel model(H);
    if (ev.open_system) {
        for (int k = 0; k < n_spins; ++k)
            model.add_collapse(embed(pauli_minus(), sp, k), p.gamma_perp);
        if (ev.model != "eff")
            model.add_collapse(embed(annihilation(sp.dim(n_spins)), sp, n_spins),
                               p.kappa_minus);
    }

    std::string engine = ev.engine;
    if (engine == "auto")
        engine = !ev.open_system             ? "unitary"
                 : sp.total() * sp.total() <= 4096 ? "expm"
                                                   : "rk45";
    if (engine == "unitary" && ev.open_system)
        throw ConfigError("engine 'unitary' cannot include dissipation");

    EvolveOptions eo;
    eo.rtol = o.rtol;
    eo.atol = o.atol;
    EvolutionResult r;
    if (engine == "unitary")
        r = evolve_unitary(H, psi0, grid, obs);
    else if (engine == "expm")
        r = evolve_expm(model, psi0, grid, obs, eo);
    else
        r = evolve(model, psi0, grid, obs, eo);

    SweepTable t = evolution_table(r, "t_scaled", 1.0 / t_end);
    t.provenance = json{{"scenario", "evolve"},
                        {"version", version},
                        {"model", ev.model},
                        {"dims", sp.factors() == 2
                                     ? json::array({sp.dim(0), sp.dim(1)})
                                     : json::array({sp.dim(0), sp.dim(1), sp.dim(2)})},
                        {"engine", r.engine},
                        {"open", ev.open_system},
                        {"t_end_s", t_end},
                        {"intervals", ev.intervals},
                        {"Delta_nv", s.Delta_nv},
                        {"omega_minus", s.omega_minus},
                        {"omega_plus", s.omega_plus},
                        {"g_r", s.g_r},
                        {"g_cr", s.g_cr},
                        {"g_r_prime", s.g_r_prime},
                        {"g_cr_prime", s.g_cr_prime},
                        {"g_eff", s.g_eff},
                        {"omega_eff", s.omega_eff},
                        {"config_inputs", raw_json(cfg.raw)}};
    if (ev.open_system) {
        t.provenance["kappa_minus"] = p.kappa_minus;
        t.provenance["gamma_perp"] = p.gamma_perp;
    }
    if (engine == "rk45") {
        t.provenance["rtol"] = eo.rtol;
        t.provenance["atol"] = eo.atol;
    }
    std::filesystem::create_directories(cfg.out_dir);
    const std::string path = cfg.out_dir + "/evolve.csv";
    write_csv(t, path);
    std::cout << "wrote " << path << "\n";
    return 0;
}

int cmd_selftest(const std::string& filter) {
    const std::vector<CheckResult> results = run_selftests(filter);
    if (results.empty()) {
        std::cerr << "no checks match filter '" << filter << "'\n";
        return 1;
    }
    int failed = 0;
    for (const auto& r : results) {
        std::printf("%s %-34s %s\n", r.pass ? "ok  " : "FAIL", r.name.c_str(),
                    r.detail.c_str());
        if (!r.pass) ++failed;
    }
    std::printf("%zu checks, %d failed\n", results.size(), failed);
    return failed ? 2 : 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"cavity-magnon-polariton reduction chain: derived scales, "
                 "reduced models, open-system dynamics"};
    app.set_version_flag("--version", cmpol::version);
    app.require_subcommand(1);

    std::string config_path;
    std::string out_flag;
    std::vector<std::string> sets;
    double tol = 0.0;
    int dim = 0;
    app.add_option("--config", config_path, "configuration file (key = value)");
    app.add_option("--out", out_flag, "output directory (default from config)");
    app.add_option("--set", sets, "override one config key as key=value (repeatable)");
    app.add_option("--tol", tol, "integrator relative tolerance (atol = tol/1000)")
        ->check(CLI::PositiveNumber);
    app.add_option("--dim", dim, "main Fock truncation of the chosen scenario")
        ->check(CLI::Range(2, 10000));

    auto* c_derive = app.add_subcommand(
        "derive", "print every derived scale of the reduction chain as JSON");

    std::string id;
    auto* c_repro = app.add_subcommand(
        "reproduce", "run a named scenario and write its artifact");
    std::string id_doc = "scenario id, default from config; one of:";
    for (const auto& s : cmpol::scenario_ids()) id_doc += " " + s;
    c_repro->add_option("id", id, id_doc);

    SweepSpec sw;
    auto* c_sweep = app.add_subcommand(
        "sweep", "tabulate one derived quantity against one config key");
    c_sweep->add_option("--key", sw.key, "config key to sweep")->required();
    c_sweep->add_option("--from", sw.from, "start value in --unit units")->required();
    c_sweep->add_option("--to", sw.to, "end value in --unit units")->required();
    c_sweep->add_option("--unit", sw.unit, "unit suffix for the values (nm, mhz, ...)");
    c_sweep->add_option("--points", sw.points, "grid size")
        ->required()
        ->check(CLI::Range(2, 1000000));
    c_sweep->add_option("--quantity", sw.quantity, "derived-scale name to tabulate")
        ->required();

    EvolveSpec ev;
    auto* c_evolve = app.add_subcommand(
        "evolve", "integrate one reduced model and write the time series");
    c_evolve->add_option("--model", ev.model, "jc | tc | cmp | eff")
        ->check(CLI::IsMember({"jc", "tc", "cmp", "eff"}));
    c_evolve->add_option("--t-end", ev.t_end, "span in seconds (default: one exchange)")
        ->check(CLI::PositiveNumber);
    c_evolve->add_option("--intervals", ev.intervals, "output intervals")
        ->check(CLI::Range(1, 10000000));
    c_evolve->add_flag("--open", ev.open_system, "include the dissipative channels");
    c_evolve->add_option("--engine", ev.engine, "auto | unitary | rk45 | expm")
        ->check(CLI::IsMember({"auto", "unitary", "rk45", "expm"}));

    std::string filter;
    auto* c_self =
        app.add_subcommand("selftest", "run the built-in invariant checks");
    c_self->add_option("--filter", filter, "only checks whose name contains this");

    for (auto* sub : {c_derive, c_repro, c_sweep, c_evolve, c_self})
        sub->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        std::vector<std::string> overrides = sets;
        if (app.count("--tol") > 0) {
            overrides.push_back("rtol=" + fmtd(tol));
            overrides.push_back("atol=" + fmtd(tol * 1e-3));
        }
        if (app.count("--out") > 0) overrides.push_back("out_dir=" + out_flag);
        if (app.count("--dim") > 0) {
            std::string target = ev.model;
            if (!c_evolve->parsed()) {
                target = id;
                if (target.empty()) {
                    std::ostringstream sink;
                    target = resolve_config(config_path, overrides, sink).scenario;
                }
            }
            overrides.push_back(dim_key_for(target) + "=" + std::to_string(dim));
        }
        const ResolvedConfig cfg = resolve_config(config_path, overrides, std::cerr);

        if (c_derive->parsed()) return cmd_derive(cfg);
        if (c_repro->parsed()) return cmd_reproduce(cfg, id);
        if (c_sweep->parsed()) return cmd_sweep(config_path, overrides, cfg, sw);
        if (c_evolve->parsed()) return cmd_evolve(cfg, ev);
        return cmd_selftest(filter);
    } catch (const cmpol::ConfigError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const cmpol::IntegrationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::domain_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
