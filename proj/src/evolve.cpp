#include "cmpol/evolve.hpp"

#include <algorithm>
#include <cmath>

#include <unsupported/Eigen/MatrixFunctions>

#include "cmpol/errors.hpp"

namespace cmpol {

namespace {

double inf_norm(const Matrix& m) { return m.cwiseAbs().rowwise().sum().maxCoeff(); }

// frequency scale making integration time dimensionless
double frequency_scale(const LindbladModel& model) {
    double s = inf_norm(model.H.mat);
    for (const auto& ch : model.channels) {
        const double ln = inf_norm(ch.op.mat);
        s += ch.rate * ln * ln;
    }
    return s > 0.0 ? s : 1.0;
}

void check_grid(const std::vector<double>& t) {
    if (t.size() < 2) throw IntegrationError("time grid needs at least two points");
    for (std::size_t i = 1; i < t.size(); ++i)
        if (!(t[i] > t[i - 1]))
            throw IntegrationError("time grid must be strictly increasing");
}

struct Diagnostics {
    double trace_dev = 0.0;
    double min_eig = 0.0;
};

Diagnostics audit_state(const Matrix& rho, const EvolveOptions& opts, double t) {
    Diagnostics d;
    d.trace_dev = std::abs(rho.trace().real() - 1.0) + std::abs(rho.trace().imag());
    Eigen::SelfAdjointEigenSolver<Matrix> es(rho, Eigen::EigenvaluesOnly);
    d.min_eig = es.eigenvalues().minCoeff();
    if (d.trace_dev > opts.trace_abort)
        throw IntegrationError("trace drifted by " + std::to_string(d.trace_dev) +
                               " at t = " + std::to_string(t));
    if (d.min_eig < -opts.positivity_abort)
        throw IntegrationError("density matrix eigenvalue " +
                               std::to_string(d.min_eig) + " at t = " +
                               std::to_string(t));
    return d;
}

void record_point(EvolutionResult& res, const std::vector<NamedObservable>& obs,
                  const Matrix& rho, const Diagnostics& d, double t) {
    res.times.push_back(t);
    for (std::size_t k = 0; k < obs.size(); ++k)
        res.series[k].push_back((obs[k].op.mat * rho).trace().real());
    res.trace_deviation.push_back(d.trace_dev);
    res.min_eigenvalue.push_back(d.min_eig);
    res.max_trace_deviation = std::max(res.max_trace_deviation, d.trace_dev);
    res.min_eigenvalue_overall = std::min(res.min_eigenvalue_overall, d.min_eig);
}

EvolutionResult make_result(const std::vector<NamedObservable>& obs,
                            const char* engine) {
    EvolutionResult res;
    res.engine = engine;
    for (const auto& o : obs) res.names.push_back(o.name);
    res.series.resize(obs.size());
    return res;
}

void check_spaces(const SpaceDescriptor& model_space, const QuantumState& state,
                  const std::vector<NamedObservable>& obs) {
    if (state.space != model_space)
        throw SpaceMismatchError("initial state lives on " + state.space.str() +
                                 ", generator on " + model_space.str());
    for (const auto& o : obs)
        if (o.op.space != model_space)
            throw SpaceMismatchError("observable " + o.name + " lives on " +
                                     o.op.space.str() + ", generator on " +
                                     model_space.str());
}

// Dormand-Prince 5(4) coefficients
constexpr double A21 = 1.0 / 5;
constexpr double A31 = 3.0 / 40, A32 = 9.0 / 40;
constexpr double A41 = 44.0 / 45, A42 = -56.0 / 15, A43 = 32.0 / 9;
constexpr double A51 = 19372.0 / 6561, A52 = -25360.0 / 2187,
                 A53 = 64448.0 / 6561, A54 = -212.0 / 729;
constexpr double A61 = 9017.0 / 3168, A62 = -355.0 / 33, A63 = 46732.0 / 5247,
                 A64 = 49.0 / 176, A65 = -5103.0 / 18656;
constexpr double B1 = 35.0 / 384, B3 = 500.0 / 1113, B4 = 125.0 / 192,
                 B5 = -2187.0 / 6784, B6 = 11.0 / 84;
constexpr double E1 = 71.0 / 57600, E3 = -71.0 / 16695, E4 = 71.0 / 1920,
                 E5 = -17253.0 / 339200, E6 = 22.0 / 525, E7 = -1.0 / 40;

}  // namespace

std::vector<double> time_grid(double t0, double t1, int n_intervals) {
    if (n_intervals < 1) throw IntegrationError("time grid needs >= 1 interval");
    if (!(t1 > t0)) throw IntegrationError("time grid needs t1 > t0");
    std::vector<double> t(static_cast<std::size_t>(n_intervals) + 1);
    for (int i = 0; i <= n_intervals; ++i)
        t[static_cast<std::size_t>(i)] = t0 + (t1 - t0) * i / n_intervals;
    t.back() = t1;
    return t;
}

EvolutionResult evolve(const LindbladModel& model, const QuantumState& state0,
                       const std::vector<double>& t_grid,
                       const std::vector<NamedObservable>& observables,
                       const EvolveOptions& opts) {
    check_grid(t_grid);
    check_spaces(model.H.space, state0, observables);
    state0.validate();

    const double w_ref = frequency_scale(model);
    // explicit return type: the quotient must materialize before the
    // liouvillian temporary dies, or the expression dangles
    auto rhs = [&](const Matrix& rho) -> Matrix {
        return liouvillian_apply(model, rho) / w_ref;
    };

    EvolutionResult res = make_result(observables, "rk45");
    Matrix y = state0.density();
    record_point(res, observables, y, audit_state(y, opts, t_grid.front()),
                 t_grid.front());

    const double tau_span = w_ref * (t_grid.back() - t_grid.front());
    double h = std::min(1e-2, tau_span);
    double tau = 0.0;

    for (std::size_t seg = 0; seg + 1 < t_grid.size(); ++seg) {
        const double tau_target = w_ref * (t_grid[seg + 1] - t_grid.front());
        while (tau < tau_target) {
            if (res.steps_accepted + res.steps_rejected >= opts.max_steps)
                throw IntegrationError("step budget exhausted");
            if (h < opts.min_step_fraction * tau_span)
                throw IntegrationError("step size collapsed at t = " +
                                       std::to_string(t_grid.front() + tau / w_ref));
            const bool clipped = tau + h >= tau_target;
            const double hs = clipped ? tau_target - tau : h;

            const Matrix k1 = rhs(y);
            const Matrix k2 = rhs(y + hs * (A21 * k1));
            const Matrix k3 = rhs(y + hs * (A31 * k1 + A32 * k2));
            const Matrix k4 = rhs(y + hs * (A41 * k1 + A42 * k2 + A43 * k3));
            const Matrix k5 =
                rhs(y + hs * (A51 * k1 + A52 * k2 + A53 * k3 + A54 * k4));
            const Matrix k6 = rhs(
                y + hs * (A61 * k1 + A62 * k2 + A63 * k3 + A64 * k4 + A65 * k5));
            const Matrix y5 =
                y + hs * (B1 * k1 + B3 * k3 + B4 * k4 + B5 * k5 + B6 * k6);
            const Matrix k7 = rhs(y5);
            const Matrix err = hs * (E1 * k1 + E3 * k3 + E4 * k4 + E5 * k5 +
                                     E6 * k6 + E7 * k7);

            // scaled RMS error norm over all matrix entries
            double acc = 0.0;
            const Eigen::Index n2 = y.size();
            for (Eigen::Index idx = 0; idx < n2; ++idx) {
                const double sc =
                    opts.atol + opts.rtol * std::max(std::abs(y.data()[idx]),
                                                     std::abs(y5.data()[idx]));
                const double e = std::abs(err.data()[idx]) / sc;
                acc += e * e;
            }
            const double err_norm = std::sqrt(acc / static_cast<double>(n2));

            if (err_norm <= 1.0) {
                tau = clipped ? tau_target : tau + hs;
                y = 0.5 * (y5 + y5.adjoint());
                res.steps_accepted += 1;
                res.error_estimate += std::sqrt(err.squaredNorm() /
                                                static_cast<double>(n2));
                const double tr = std::abs(y.trace().real() - 1.0);
                if (tr > opts.trace_abort)
                    throw IntegrationError("trace drifted by " + std::to_string(tr));
            } else {
                res.steps_rejected += 1;
            }
            const double factor = std::clamp(
                0.9 * std::pow(std::max(err_norm, 1e-10), -0.2), 0.2, 5.0);
            if (clipped && err_norm <= 1.0)
                h = std::max(h, hs);  // keep the pre-clip step for the next segment
            else
                h = hs * factor;
        }
        record_point(res, observables, y, audit_state(y, opts, t_grid[seg + 1]),
                     t_grid[seg + 1]);
    }
    return res;
}

EvolutionResult evolve_unitary(const Operator& H, const QuantumState& state0,
                               const std::vector<double>& t_grid,
                               const std::vector<NamedObservable>& observables) {
    check_grid(t_grid);
    check_spaces(H.space, state0, observables);
    if (!state0.is_pure())
        throw StateError("unitary engine needs a pure initial state");
    state0.validate();
    const double scale = std::max(1.0, inf_norm(H.mat));
    if ((H.mat - H.mat.adjoint()).cwiseAbs().maxCoeff() > 1e-12 * scale)
        throw NonHermitianError("unitary engine needs a Hermitian Hamiltonian");

    Eigen::SelfAdjointEigenSolver<Matrix> es(H.mat);
    if (es.info() != Eigen::Success)
        throw IntegrationError("eigendecomposition failed");
    const Vector c0 = es.eigenvectors().adjoint() * state0.psi;

    EvolutionResult res = make_result(observables, "unitary");
    const Complex mi(0, -1);
    for (double t : t_grid) {
        const double dt = t - t_grid.front();
        const Vector phases =
            ((mi * dt) * es.eigenvalues().cast<Complex>()).array().exp();
        const Vector psi = es.eigenvectors() * phases.cwiseProduct(c0).eval();
        res.times.push_back(t);
        for (std::size_t k = 0; k < observables.size(); ++k)
            res.series[k].push_back(
                psi.dot(observables[k].op.mat * psi).real());
        const double dev = std::abs(psi.norm() - 1.0);
        res.trace_deviation.push_back(dev);
        res.min_eigenvalue.push_back(0.0);
        res.max_trace_deviation = std::max(res.max_trace_deviation, dev);
    }
    res.steps_accepted = static_cast<long>(t_grid.size()) - 1;
    return res;
}

EvolutionResult evolve_expm(const LindbladModel& model, const QuantumState& state0,
                            const std::vector<double>& t_grid,
                            const std::vector<NamedObservable>& observables,
                            const EvolveOptions& opts) {
    check_grid(t_grid);
    check_spaces(model.H.space, state0, observables);
    state0.validate();
    const double dt = t_grid[1] - t_grid[0];
    for (std::size_t i = 1; i < t_grid.size(); ++i)
        if (std::abs((t_grid[i] - t_grid[i - 1]) - dt) > 1e-9 * dt)
            throw IntegrationError("exponential propagator needs a uniform grid");

    const Eigen::Index n = model.H.mat.rows();
    const Matrix prop = (superoperator_matrix(model) * Complex(dt, 0)).exp();

    EvolutionResult res = make_result(observables, "expm");
    Matrix rho = state0.density();
    Vector v = Eigen::Map<const Vector>(rho.data(), n * n);
    for (std::size_t i = 0; i < t_grid.size(); ++i) {
        if (i > 0) {
            v = prop * v;
            Matrix r = Eigen::Map<const Matrix>(v.data(), n, n);
            r = 0.5 * (r + r.adjoint()).eval();
            v = Eigen::Map<const Vector>(r.data(), n * n);
            res.steps_accepted += 1;
        }
        const Matrix r = Eigen::Map<const Matrix>(v.data(), n, n);
        record_point(res, observables, r, audit_state(r, opts, t_grid[i]),
                     t_grid[i]);
    }
    return res;
}

}  // namespace cmpol
