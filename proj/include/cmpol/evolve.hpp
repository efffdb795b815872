#pragma once

#include <string>
#include <vector>

#include "cmpol/lindblad.hpp"
#include "cmpol/operators.hpp"

namespace cmpol {

struct EvolveOptions {
    double rtol = 1e-8;
    double atol = 1e-10;
    // aborts with IntegrationError when the state degrades past these
    double positivity_abort = 1e-6;  // most negative density eigenvalue
    double trace_abort = 1e-6;       // |tr rho - 1|
    // IntegrationError when the controller drives h below this fraction of
    // the remaining span (stiffness guard)
    double min_step_fraction = 1e-12;
    long max_steps = 50'000'000;
};

// Time series of observables plus state-health diagnostics. series[k][i] is
// observable k at times[i]. For density-matrix engines min_eigenvalue is the
// smallest eigenvalue of rho at each grid point; for the unitary engine
// trace_deviation carries |norm(psi) - 1| and min_eigenvalue is zero.
struct EvolutionResult {
    std::vector<double> times;
    std::vector<std::string> names;
    std::vector<std::vector<double>> series;
    std::vector<double> trace_deviation;
    std::vector<double> min_eigenvalue;
    double max_trace_deviation = 0.0;
    double min_eigenvalue_overall = 0.0;
    double error_estimate = 0.0;
    long steps_accepted = 0;
    long steps_rejected = 0;
    std::string engine;
};

// Adaptive embedded Runge-Kutta 5(4) on the master equation. The state is
// re-Hermitized after every accepted step; trace and positivity are audited
// at every grid point. Time is integrated in units of an internal frequency
// scale so tolerances are dimensionless.
EvolutionResult evolve(const LindbladModel& model, const QuantumState& state0,
                       const std::vector<double>& t_grid,
                       const std::vector<NamedObservable>& observables,
                       const EvolveOptions& opts = {});

// Closed-system propagation of a pure state by eigendecomposition of H.
// Exact up to the dense eigensolve; throws NonHermitianError if H is not
// Hermitian relative to its norm.
EvolutionResult evolve_unitary(const Operator& H, const QuantumState& state0,
                               const std::vector<double>& t_grid,
                               const std::vector<NamedObservable>& observables);

// Master-equation propagation by one matrix exponential of the superoperator
// over the (uniform) grid spacing, applied repeatedly. Step-size independent,
// so it serves both as the stiff-system engine and as a cross-check oracle
// for evolve(). Throws IntegrationError on a non-uniform grid.
EvolutionResult evolve_expm(const LindbladModel& model, const QuantumState& state0,
                            const std::vector<double>& t_grid,
                            const std::vector<NamedObservable>& observables,
                            const EvolveOptions& opts = {});

// Convenience: n+1 equally spaced points from t0 to t1 inclusive.
std::vector<double> time_grid(double t0, double t1, int n_intervals);

}  // namespace cmpol
