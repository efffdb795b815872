#pragma once

#include <string>
#include <vector>

#include "json.hpp"

#include "cmpol/evolve.hpp"
#include "cmpol/scales.hpp"

namespace cmpol {

// Rectangular numeric table with a one-line JSON provenance header. The
// provenance carries everything needed to regenerate the file byte for byte
// (resolved parameters, tolerances, dimensions, engine, code version).
struct SweepTable {
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;
    nlohmann::json provenance;
};

// Writes '#'-prefixed provenance, a header row, then data rows (%.12g).
// Atomic: writes path + ".tmp" and renames. Throws ArtifactError on a ragged
// table, non-finite entries, or I/O failure.
void write_csv(const SweepTable& table, const std::string& path);

// Time series and health diagnostics as a table: t_s, a dimensionless time
// column t * unit_scale named unit_col, the observables, then trace and
// positivity diagnostics.
SweepTable evolution_table(const EvolutionResult& r, const std::string& unit_col,
                           double unit_scale);

// Tunables shared by the scenario runners. Frequencies in rad/s.
struct ScenarioOptions {
    double ratio = 1e3;      // Delta_c / omega_minus for the JC comparison
    double fig_ratio = 1e6;  // Delta_c / omega_minus fixing the figure runs
    double g_r = 0.0;        // pinned spin-polariton coupling (0 = 2pi x 3.5 MHz)
    double lambda = 0.0;     // spin-cavity coupling for cmp_vs_jc (0 = 2pi x 7 kHz)
    int jc_dim = 10;
    int tc_dim = 10;
    int cmp_lp_dim = 20;
    int cmp_hp_dim = 5;
    int open_tc_dim = 6;  // LP truncation of the dissipative two-spin run
    int grid_per_period = 400;
    double fig3_periods = 3.5;  // Rabi periods
    double fig4_periods = 2.0;  // exchange periods
    double rtol = 1e-9;
    double atol = 1e-12;
};

// magnon-cavity coupling versus sphere radius; columns (R_nm, g_m_over_2pi_hz)
SweepTable run_fig1c(const std::vector<double>& R_grid,
                     const CouplingCalibration& cal);

// squeezing-enhanced coupling versus radius, one column per squeezing value
SweepTable run_fig2a(const std::vector<double>& R_grid,
                     const std::vector<double>& r_m_set,
                     const CouplingCalibration& cal);

// squared polariton branches versus G; columns (G, omega_plus_sq,
// omega_minus_sq, stable); omega_minus_sq crosses zero at G_c
SweepTable run_fig2b(const std::vector<double>& G_grid, double Delta_c,
                     double Delta_s);

// resonant spin-polariton exchange (single spin, lower polariton); spin starts
// excited, polariton in vacuum
EvolutionResult run_fig3(bool dissipative, const PhysicalParams& p,
                         const ScenarioOptions& o);

// dispersive two-spin exchange through the virtual polariton; spin 1 excited
EvolutionResult run_fig4(bool dissipative, const PhysicalParams& p,
                         const ScenarioOptions& o);

// full two-branch model versus its rotating-wave reduction from the same
// initial state
struct PairedEvolution {
    EvolutionResult full;
    EvolutionResult reduced;
    double max_spin_diff = 0.0;
    double max_hp_occupation = 0.0;
};
PairedEvolution run_cmp_vs_jc(const PhysicalParams& p, const ScenarioOptions& o);

// flat report of the whole reduction chain: every derived quantity in rad/s
// plus an *_over_2pi_hz convenience key, diagnostics, and the resolved inputs
nlohmann::json derive_report(const PhysicalParams& p, const DerivedScales& s);

// Scenario dispatcher used by the command line: runs one named scenario with
// default grids and returns the table ("derive" returns an empty table and
// fills report). Throws ConfigError on an unknown id.
struct ScenarioOutcome {
    SweepTable table;
    nlohmann::json report;
    bool is_table = true;
};
ScenarioOutcome run_scenario(const std::string& id, const PhysicalParams& p,
                             const ScenarioOptions& o);

// ids accepted by run_scenario, in documentation order
const std::vector<std::string>& scenario_ids();

}  // namespace cmpol
