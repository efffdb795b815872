#include "cmpol/experiments.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>

#include "cmpol/constants.hpp"
#include "cmpol/hamiltonians.hpp"
#include "cmpol/version.hpp"

namespace cmpol {

using constants::two_pi;
using nlohmann::json;

// ---- table output ----

namespace {

std::string fmt(double x, const char* spec) {
    char buf[40];
    std::snprintf(buf, sizeof buf, spec, x);
    return buf;
}

std::vector<double> linspace(double a, double b, int n) {
    std::vector<double> v(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i)
        v[static_cast<std::size_t>(i)] = a + (b - a) * i / (n - 1);
    v.back() = b;
    return v;
}

std::vector<double> default_radius_grid() { return linspace(10e-9, 100e-9, 91); }

json params_json(const PhysicalParams& p) {
    const char* mode = p.mode == MeanFieldMode::squeeze_target ? "squeeze_target"
                       : p.mode == MeanFieldMode::mean_given   ? "mean_given"
                                                               : "steady_state";
    return json{{"D", p.D},
                {"g_e", p.g_e},
                {"B_ex", p.B_ex},
                {"B_0", p.B_0},
                {"K_an", p.K_an},
                {"M_s", p.M_s},
                {"R", p.R},
                {"s_total", p.s_total},
                {"omega_c", p.omega_c},
                {"L_a", p.L_a},
                {"d", p.d},
                {"omega_d", p.omega_d},
                {"Omega_d", p.Omega_d},
                {"kappa_c", p.kappa_c},
                {"kappa_m", p.kappa_m},
                {"kappa_minus", p.kappa_minus},
                {"gamma_perp", p.gamma_perp},
                {"mode", mode},
                {"mean_m_re", p.mean_m.real()},
                {"mean_m_im", p.mean_m.imag()},
                {"r_m_target", p.r_m_target},
                {"cal_g_ref", p.cal.g_ref},
                {"cal_R_ref", p.cal.R_ref},
                {"cal_p", p.cal.p}};
}

json base_provenance(const std::string& scenario) {
    return json{{"scenario", scenario}, {"version", version}};
}

}  // namespace

SweepTable evolution_table(const EvolutionResult& r, const std::string& unit_col,
                           double unit_scale) {
    SweepTable t;
    t.columns = {"t_s", unit_col};
    for (const auto& n : r.names) t.columns.push_back(n);
    t.columns.push_back("trace_deviation");
    t.columns.push_back("min_eigenvalue");
    for (std::size_t i = 0; i < r.times.size(); ++i) {
        std::vector<double> row = {r.times[i], r.times[i] * unit_scale};
        for (const auto& s : r.series) row.push_back(s[i]);
        row.push_back(r.trace_deviation[i]);
        row.push_back(r.min_eigenvalue[i]);
        t.rows.push_back(std::move(row));
    }
    return t;
}

void write_csv(const SweepTable& table, const std::string& path) {
    for (const auto& row : table.rows) {
        if (row.size() != table.columns.size())
            throw ArtifactError("table is ragged: row width " +
                                std::to_string(row.size()) + " vs " +
                                std::to_string(table.columns.size()) + " columns");
        for (double x : row)
            if (!std::isfinite(x))
                throw ArtifactError("table contains a non-finite value");
    }
    const std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::trunc);
        if (!out) throw ArtifactError("cannot open " + tmp + " for writing");
        out << "# " << table.provenance.dump() << "\n";
        for (std::size_t c = 0; c < table.columns.size(); ++c)
            out << (c ? "," : "") << table.columns[c];
        out << "\n";
        for (const auto& row : table.rows) {
            for (std::size_t c = 0; c < row.size(); ++c)
                out << (c ? "," : "") << fmt(row[c], "%.12g");
            out << "\n";
        }
        out.flush();
        if (!out.good()) throw ArtifactError("write failed for " + tmp);
    }
    if (std::rename(tmp.c_str(), path.c_str()) != 0) {
        std::remove(tmp.c_str());
        throw ArtifactError("cannot rename " + tmp + " to " + path);
    }
}

// ---- sweep scenarios ----

SweepTable run_fig1c(const std::vector<double>& R_grid,
                     const CouplingCalibration& cal) {
    SweepTable t;
    t.columns = {"R_nm", "g_m_over_2pi_hz"};
    for (double R : R_grid)
        t.rows.push_back({R * 1e9, magnon_cavity_coupling(R, cal) / two_pi});
    t.provenance = base_provenance("fig1c");
    t.provenance["cal_g_ref"] = cal.g_ref;
    t.provenance["cal_R_ref"] = cal.R_ref;
    t.provenance["cal_p"] = cal.p;
    return t;
}

SweepTable run_fig2a(const std::vector<double>& R_grid,
                     const std::vector<double>& r_m_set,
                     const CouplingCalibration& cal) {
    SweepTable t;
    t.columns = {"R_nm"};
    for (double r : r_m_set)
        t.columns.push_back("G_over_2pi_hz_rm" + fmt(r, "%g"));
    for (double R : R_grid) {
        std::vector<double> row = {R * 1e9};
        const double g_m = magnon_cavity_coupling(R, cal);
        for (double r : r_m_set) row.push_back(enhanced_coupling(g_m, r) / two_pi);
        t.rows.push_back(std::move(row));
    }
    t.provenance = base_provenance("fig2a");
    t.provenance["cal_g_ref"] = cal.g_ref;
    t.provenance["cal_R_ref"] = cal.R_ref;
    t.provenance["cal_p"] = cal.p;
    t.provenance["r_m_set"] = r_m_set;
    return t;
}

SweepTable run_fig2b(const std::vector<double>& G_grid, double Delta_c,
                     double Delta_s) {
    SweepTable t;
    t.columns = {"G", "omega_plus_sq", "omega_minus_sq", "stable"};
    for (double G : G_grid) {
        const PolaritonFrequencies w = polariton_frequencies(Delta_c, Delta_s, G);
        t.rows.push_back({G, w.omega_plus * w.omega_plus, w.omega_minus_sq,
                          w.stable() ? 1.0 : 0.0});
    }
    t.provenance = base_provenance("fig2b");
    t.provenance["Delta_c"] = Delta_c;
    t.provenance["Delta_s"] = Delta_s;
    t.provenance["G_c"] = critical_coupling(Delta_c, Delta_s);
    return t;
}

// ---- evolution scenarios ----

namespace {

struct Fig3Knobs {
    double omega_minus, Delta_nv, g_r, t_end;
    int intervals;
};

Fig3Knobs fig3_knobs(const PhysicalParams& p, const ScenarioOptions& o) {
    Fig3Knobs k;
    k.omega_minus = (p.omega_c - p.omega_d) / o.fig_ratio;
    k.Delta_nv = k.omega_minus;  // resonant exchange
    k.g_r = o.g_r > 0.0 ? o.g_r : two_pi * 3.5e6;
    k.t_end = o.fig3_periods * constants::pi / k.g_r;
    k.intervals = static_cast<int>(std::lround(o.fig3_periods * o.grid_per_period));
    return k;
}

struct Fig4Knobs {
    double omega_minus, Delta_nv, g_r, g_eff, t_transfer, t_end;
    int intervals;
};

Fig4Knobs fig4_knobs(const PhysicalParams& p, const ScenarioOptions& o) {
    Fig4Knobs k;
    k.omega_minus = (p.omega_c - p.omega_d) / o.fig_ratio;
    k.Delta_nv = spin_frequency(p.D, p.g_e, p.B_ex) - p.omega_d;
    k.g_r = o.g_r > 0.0 ? o.g_r : two_pi * 3.5e6;
    k.g_eff = effective_spin_spin(k.g_r, k.Delta_nv, 0.0).g_eff;
    k.t_transfer = constants::pi / (2.0 * std::abs(k.g_eff));
    k.t_end = o.fig4_periods * 2.0 * k.t_transfer;
    k.intervals = static_cast<int>(std::lround(o.fig4_periods * o.grid_per_period));
    return k;
}

struct CmpKnobs {
    double Delta_c, Delta_s, omega_minus, omega_plus, G, theta, lambda;
    PolaritonSpinCouplings g;
    double t_end;
};

// back-solve G so the lower branch lands exactly on Delta_c / ratio
CmpKnobs cmp_knobs(const PhysicalParams& p, const ScenarioOptions& o) {
    if (o.ratio < 100.0)
        throw RegimeError("jc comparison needs ratio >= 100 for scale separation");
    CmpKnobs k;
    k.Delta_c = p.omega_c - p.omega_d;
    k.Delta_s = derive_scales(p).Delta_s;
    k.omega_minus = k.Delta_c / o.ratio;
    const double S = k.Delta_c * k.Delta_c + k.Delta_s * k.Delta_s;
    const double P = k.Delta_c * k.Delta_s;
    const double w2 = k.omega_minus * k.omega_minus;
    const double G2 = (P * P - w2 * (S - w2)) / (4.0 * P);
    if (G2 <= 0.0)
        throw InstabilityError("no stable coupling reaches the requested branch");
    k.G = std::sqrt(G2);
    k.omega_plus = std::sqrt(S - w2);
    k.theta = mixing_angle(k.Delta_c, k.Delta_s, k.G);
    k.lambda = o.lambda > 0.0 ? o.lambda : two_pi * 7e3;
    k.g = polariton_spin_couplings(k.lambda, k.theta, k.Delta_c, k.omega_minus,
                                   k.omega_plus);
    k.t_end = constants::pi / k.g.g_r;  // one full exchange period
    return k;
}

}  // namespace

EvolutionResult run_fig3(bool dissipative, const PhysicalParams& p,
                         const ScenarioOptions& o) {
    const Fig3Knobs k = fig3_knobs(p, o);
    const SpaceDescriptor space({2, o.jc_dim});
    const Operator h = build_h_jc(space, k.Delta_nv, k.omega_minus, k.g_r);
    const QuantumState psi0 = basis_state(space, {0, 0});
    const auto grid = time_grid(0.0, k.t_end, k.intervals);
    const auto obs = standard_observables(space, 1);
    if (!dissipative) return evolve_unitary(h, psi0, grid, obs);

    LindbladModel model(h);
    model.add_collapse(embed(pauli_minus(), space, 0), p.gamma_perp);
    model.add_collapse(embed(annihilation(o.jc_dim), space, 1), p.kappa_minus);
    EvolveOptions eo;
    eo.rtol = o.rtol;
    eo.atol = o.atol;
    return evolve(model, psi0, grid, obs, eo);
}

EvolutionResult run_fig4(bool dissipative, const PhysicalParams& p,
                         const ScenarioOptions& o) {
    const Fig4Knobs k = fig4_knobs(p, o);
    const int lp_dim = dissipative ? o.open_tc_dim : o.tc_dim;
    const SpaceDescriptor space({2, 2, lp_dim});
    const Operator h = build_h_tc(space, k.Delta_nv, k.omega_minus, k.g_r);
    const QuantumState psi0 = basis_state(space, {0, 1, 0});
    const auto grid = time_grid(0.0, k.t_end, k.intervals);
    const auto obs = standard_observables(space, 2);
    if (!dissipative) return evolve_unitary(h, psi0, grid, obs);

    LindbladModel model(h);
    model.add_collapse(embed(pauli_minus(), space, 0), p.gamma_perp);
    model.add_collapse(embed(pauli_minus(), space, 1), p.gamma_perp);
    model.add_collapse(embed(annihilation(lp_dim), space, 2), p.kappa_minus);
    EvolveOptions eo;
    eo.rtol = o.rtol;
    eo.atol = o.atol;
    // the spin detuning makes the generator stiff; the exponential propagator
    // is step-size independent
    return evolve_expm(model, psi0, grid, obs, eo);
}

PairedEvolution run_cmp_vs_jc(const PhysicalParams& p, const ScenarioOptions& o) {
    const CmpKnobs k = cmp_knobs(p, o);
    const double Delta_nv = k.omega_minus;  // resonant with the lower branch

    const SpaceDescriptor full_space({2, o.cmp_lp_dim, o.cmp_hp_dim});
    const Operator h_full =
        build_h_cmp(full_space, Delta_nv, k.omega_minus, k.omega_plus, k.g.g_r,
                    k.g.g_cr, k.g.g_r_prime, k.g.g_cr_prime);
    const SpaceDescriptor jc_space({2, o.jc_dim});
    const Operator h_jc = build_h_jc(jc_space, Delta_nv, k.omega_minus, k.g.g_r);

    const auto grid = time_grid(0.0, k.t_end, o.grid_per_period);
    PairedEvolution pe;
    pe.full = evolve_unitary(h_full, basis_state(full_space, {0, 0, 0}), grid,
                             standard_observables(full_space, 1));
    pe.reduced = evolve_unitary(h_jc, basis_state(jc_space, {0, 0}), grid,
                                standard_observables(jc_space, 1));
    for (std::size_t i = 0; i < grid.size(); ++i) {
        pe.max_spin_diff = std::max(
            pe.max_spin_diff, std::abs(pe.full.series[0][i] - pe.reduced.series[0][i]));
        pe.max_hp_occupation = std::max(pe.max_hp_occupation, pe.full.series[3][i]);
    }
    return pe;
}

// ---- derived-quantity report ----

nlohmann::json derive_report(const PhysicalParams& p, const DerivedScales& s) {
    json j;
    auto put = [&j](const char* name, double v) {
        j[name] = v;
        j[std::string(name) + "_over_2pi_hz"] = v / two_pi;
    };
    put("omega_nv", s.omega_nv);
    put("omega_m", s.omega_m);
    put("K", s.K);
    put("g_m", s.g_m);
    put("lambda", s.lambda);
    put("delta_m", s.delta_m);
    put("Delta_m", s.Delta_m);
    put("Delta_c", s.Delta_c);
    put("Delta_nv", s.Delta_nv);
    put("K_s", s.K_s);
    put("Delta_s", s.Delta_s);
    put("G", s.G);
    put("G_c", s.G_c);
    put("omega_plus", s.omega_plus);
    put("omega_minus", s.omega_minus);
    put("g_r", s.g_r);
    put("g_cr", s.g_cr);
    put("g_r_prime", s.g_r_prime);
    put("g_cr_prime", s.g_cr_prime);
    put("g_eff", s.g_eff);
    put("omega_eff", s.omega_eff);
    put("Omega_d_implied", s.Omega_d_implied);
    j["r_m"] = s.r_m;
    j["theta"] = s.theta;
    j["omega_minus_sq"] = s.omega_minus_sq;
    j["lp_stable"] = s.lp_stable;
    j["mean_m_abs"] = std::abs(s.mean_m);
    j["mean_m_sq"] = std::norm(s.mean_m);
    j["version"] = version;
    j["params_resolved"] = params_json(p);
    return j;
}

// ---- dispatcher ----

const std::vector<std::string>& scenario_ids() {
    static const std::vector<std::string> ids = {
        "fig1c", "fig2a", "fig2b",  "fig3a",     "fig3b",
        "fig4a", "fig4b", "derive", "cmp_vs_jc",
    };
    return ids;
}

ScenarioOutcome run_scenario(const std::string& id, const PhysicalParams& p,
                             const ScenarioOptions& o) {
    ScenarioOutcome out;
    if (id == "fig1c") {
        out.table = run_fig1c(default_radius_grid(), p.cal);
    } else if (id == "fig2a") {
        out.table = run_fig2a(default_radius_grid(), {0.0, 3.0, 5.0}, p.cal);
    } else if (id == "fig2b") {
        // dimensionless illustration point: branches in units of Delta_s
        const double Delta_c = 2.0, Delta_s = 1.0;
        const double G_c = critical_coupling(Delta_c, Delta_s);
        out.table = run_fig2b(linspace(0.0, 1.2 * G_c, 241), Delta_c, Delta_s);
    } else if (id == "fig3a" || id == "fig3b") {
        const bool open = id == "fig3b";
        const Fig3Knobs k = fig3_knobs(p, o);
        out.table = evolution_table(run_fig3(open, p, o), "t_times_g_r", k.g_r);
        out.table.provenance = base_provenance(id);
        out.table.provenance["omega_minus"] = k.omega_minus;
        out.table.provenance["Delta_nv"] = k.Delta_nv;
        out.table.provenance["g_r"] = k.g_r;
        out.table.provenance["lp_dim"] = o.jc_dim;
        out.table.provenance["t_end_s"] = k.t_end;
        out.table.provenance["intervals"] = k.intervals;
        if (open) {
            out.table.provenance["kappa_minus"] = p.kappa_minus;
            out.table.provenance["gamma_perp"] = p.gamma_perp;
            out.table.provenance["rtol"] = o.rtol;
            out.table.provenance["atol"] = o.atol;
        }
    } else if (id == "fig4a" || id == "fig4b") {
        const bool open = id == "fig4b";
        const Fig4Knobs k = fig4_knobs(p, o);
        out.table = evolution_table(run_fig4(open, p, o), "t_over_t_transfer",
                                    1.0 / k.t_transfer);
        out.table.provenance = base_provenance(id);
        out.table.provenance["omega_minus"] = k.omega_minus;
        out.table.provenance["Delta_nv"] = k.Delta_nv;
        out.table.provenance["g_r"] = k.g_r;
        out.table.provenance["g_eff"] = k.g_eff;
        out.table.provenance["t_transfer_s"] = k.t_transfer;
        out.table.provenance["lp_dim"] = open ? o.open_tc_dim : o.tc_dim;
        out.table.provenance["t_end_s"] = k.t_end;
        out.table.provenance["intervals"] = k.intervals;
        if (open) {
            out.table.provenance["kappa_minus"] = p.kappa_minus;
            out.table.provenance["gamma_perp"] = p.gamma_perp;
        }
    } else if (id == "cmp_vs_jc") {
        const CmpKnobs k = cmp_knobs(p, o);
        const PairedEvolution pe = run_cmp_vs_jc(p, o);
        SweepTable t;
        t.columns = {"t_s",
                     "t_times_g_r",
                     "spin1_occupation_full",
                     "spin1_occupation_reduced",
                     "abs_diff",
                     "lp_occupation_full",
                     "lp_occupation_reduced",
                     "hp_occupation",
                     "top_fock_population_full"};
        for (std::size_t i = 0; i < pe.full.times.size(); ++i) {
            const double sf = pe.full.series[0][i];
            const double sr = pe.reduced.series[0][i];
            t.rows.push_back({pe.full.times[i], pe.full.times[i] * k.g.g_r, sf, sr,
                              std::abs(sf - sr), pe.full.series[1][i],
                              pe.reduced.series[1][i], pe.full.series[3][i],
                              pe.full.series[2][i]});
        }
        t.provenance = base_provenance(id);
        t.provenance["ratio"] = o.ratio;
        t.provenance["Delta_c"] = k.Delta_c;
        t.provenance["Delta_s"] = k.Delta_s;
        t.provenance["omega_minus"] = k.omega_minus;
        t.provenance["omega_plus"] = k.omega_plus;
        t.provenance["G"] = k.G;
        t.provenance["theta"] = k.theta;
        t.provenance["lambda"] = k.lambda;
        t.provenance["g_r"] = k.g.g_r;
        t.provenance["g_cr"] = k.g.g_cr;
        t.provenance["g_r_prime"] = k.g.g_r_prime;
        t.provenance["g_cr_prime"] = k.g.g_cr_prime;
        t.provenance["lp_dim"] = o.cmp_lp_dim;
        t.provenance["hp_dim"] = o.cmp_hp_dim;
        t.provenance["max_spin_diff"] = pe.max_spin_diff;
        t.provenance["max_hp_occupation"] = pe.max_hp_occupation;
        out.table = std::move(t);
    } else if (id == "derive") {
        out.report = derive_report(p, derive_scales(p));
        out.is_table = false;
    } else {
        throw ConfigError("unknown scenario id: " + id);
    }
    if (out.is_table) out.table.provenance["params_resolved"] = params_json(p);
    return out;
}

}  // namespace cmpol
