#include "cmpol/selftest.hpp"

#include <cmath>
#include <functional>
#include <random>
#include <sstream>

#include "cmpol/constants.hpp"
#include "cmpol/evolve.hpp"
#include "cmpol/experiments.hpp"
#include "cmpol/hamiltonians.hpp"
#include "cmpol/lindblad.hpp"
#include "cmpol/operators.hpp"
#include "cmpol/scales.hpp"

namespace cmpol {

namespace {

using constants::pi;

std::string num(double x) {
    std::ostringstream os;
    os.precision(6);
    os << x;
    return os.str();
}

CheckResult pass_result(const std::string& name, const std::string& detail) {
    return {name, true, detail};
}

CheckResult fail_result(const std::string& name, const std::string& detail) {
    return {name, false, detail};
}

Matrix random_matrix(std::mt19937& gen, int n) {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    Matrix m(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) m(i, j) = Complex(u(gen), u(gen));
    return m;
}

Matrix random_hermitian(std::mt19937& gen, int n) {
    const Matrix m = random_matrix(gen, n);
    return 0.5 * (m + m.adjoint());
}

Vector random_state(std::mt19937& gen, int n) {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    Vector v(n);
    for (int i = 0; i < n; ++i) v(i) = Complex(u(gen), u(gen));
    return v / v.norm();
}

// ---- quantum-core checks ----

CheckResult check_corner_identity() {
    const char* name = "corner_identity";
    for (int d = 2; d <= 12; ++d) {
        const Matrix a = annihilation(d);
        const Matrix comm = a * a.adjoint() - a.adjoint() * a;
        const Matrix expect =
            identity(d) - static_cast<double>(d) * fock_projector(d, d - 1);
        const double dev = (comm - expect).cwiseAbs().maxCoeff();
        if (dev > 1e-13 * d)
            return fail_result(name, "dim " + std::to_string(d) + " deviates by " +
                                         num(dev));
    }
    return pass_result(name, "dims 2..12");
}

CheckResult check_adjoint_properties() {
    const char* name = "adjoint_properties";
    std::mt19937 gen(12001);
    std::uniform_int_distribution<int> dim(2, 8);
    for (int it = 0; it < 500; ++it) {
        const int n = dim(gen);
        const Matrix a = random_matrix(gen, n), b = random_matrix(gen, n);
        if (((a * b).adjoint() - b.adjoint() * a.adjoint()).cwiseAbs().maxCoeff() >
            1e-12 * n)
            return fail_result(name, "(AB)^dag != B^dag A^dag at case " +
                                         std::to_string(it));
        const Matrix h1 = 0.5 * (a + a.adjoint()), h2 = 0.5 * (b + b.adjoint());
        const Matrix c = h1 * h2 - h2 * h1;
        if ((c + c.adjoint()).cwiseAbs().maxCoeff() > 1e-12 * n)
            return fail_result(name, "[H1,H2] not anti-Hermitian at case " +
                                         std::to_string(it));
    }
    return pass_result(name, "500 cases");
}

CheckResult check_embed_layout() {
    const char* name = "embed_layout";
    const SpaceDescriptor sp({2, 3});
    const Matrix z = embed(pauli_z(), sp, 0).mat;
    Matrix want = Matrix::Zero(6, 6);
    for (int i = 0; i < 6; ++i) want(i, i) = i < 3 ? 1.0 : -1.0;
    if ((z - want).cwiseAbs().maxCoeff() > 0)
        return fail_result(name, "slot 0 of (2,3) is not the slow factor");

    std::mt19937 gen(12002);
    std::uniform_int_distribution<int> dim(2, 4);
    for (int it = 0; it < 500; ++it) {
        const SpaceDescriptor space({dim(gen), dim(gen), dim(gen)});
        std::uniform_int_distribution<int> pick(0, 2);
        const int slot = pick(gen);
        const Matrix op = random_matrix(gen, space.dim(slot));
        const Operator big = embed(op, space, slot);
        const double other = space.total() / space.dim(slot);
        if (std::abs(big.mat.trace() - op.trace() * other) >
            1e-10 * (1.0 + std::abs(op.trace()) * other))
            return fail_result(name, "trace mismatch at case " + std::to_string(it));
        if (std::abs(big.mat.squaredNorm() - op.squaredNorm() * other) >
            1e-10 * (1.0 + op.squaredNorm() * other))
            return fail_result(name, "norm mismatch at case " + std::to_string(it));
    }
    try {
        embed(pauli_z(), sp, 2);
        return fail_result(name, "out-of-range slot accepted");
    } catch (const DimensionError&) {
    }
    try {
        identity_on(sp) + identity_on(SpaceDescriptor({3, 2}));
        return fail_result(name, "cross-space arithmetic accepted");
    } catch (const SpaceMismatchError&) {
    }
    return pass_result(name, "500 cases + layout probes");
}

CheckResult check_expectation_real() {
    const char* name = "expectation_real";
    std::mt19937 gen(12003);
    std::uniform_int_distribution<int> dim(2, 9);
    for (int it = 0; it < 500; ++it) {
        const int n = dim(gen);
        const SpaceDescriptor sp({n});
        const Operator h(sp, random_hermitian(gen, n));
        const QuantumState psi = QuantumState::pure(sp, random_state(gen, n));
        if (std::abs(expectation(h, psi).imag()) > 1e-11 * n)
            return fail_result(name, "pure case " + std::to_string(it));
        const Matrix v1 = random_state(gen, n) * random_state(gen, n).adjoint();
        const Matrix rho = 0.5 * (v1 + v1.adjoint()) +
                           Matrix::Identity(n, n) * (1.0 / n);
        const QuantumState mixed =
            QuantumState::mixed(sp, rho / rho.trace().real());
        if (std::abs(expectation(h, mixed).imag()) > 1e-11 * n)
            return fail_result(name, "mixed case " + std::to_string(it));
    }
    return pass_result(name, "500 cases");
}

// ---- Hamiltonian builder checks ----

CheckResult check_builders_hermitian() {
    const char* name = "builders_hermitian";
    std::mt19937 gen(12004);
    std::uniform_real_distribution<double> u(-5.0, 5.0);
    for (int it = 0; it < 80; ++it) {
        const Operator hs[] = {
            build_h_sys(SpaceDescriptor({2, 3, 4}), u(gen), u(gen), u(gen), u(gen),
                        std::abs(u(gen)), u(gen), u(gen)),
            build_h_lin(SpaceDescriptor({2, 3, 4}), u(gen), u(gen), u(gen), u(gen),
                        u(gen), u(gen)),
            build_h_cms(SpaceDescriptor({3, 4}), u(gen), u(gen), u(gen)),
            build_h_cmp(SpaceDescriptor({2, 3, 3}), u(gen), u(gen), u(gen), u(gen),
                        u(gen), u(gen), u(gen)),
            build_h_jc(SpaceDescriptor({2, 4}), u(gen), u(gen), u(gen)),
            build_h_tc(SpaceDescriptor({2, 2, 3}), u(gen), u(gen), u(gen)),
            build_h_eff(SpaceDescriptor({2, 2}), u(gen), u(gen)),
        };
        for (const auto& h : hs)
            if (!h.is_hermitian(1e-9))
                return fail_result(name, "non-Hermitian builder output at case " +
                                             std::to_string(it));
    }
    try {
        build_h_jc(SpaceDescriptor({3, 4}), 1, 1, 1);
        return fail_result(name, "non-qubit spin slot accepted");
    } catch (const DimensionError&) {
    }
    try {
        build_h_tc(SpaceDescriptor({2, 4}), 1, 1, 1);
        return fail_result(name, "wrong factor count accepted");
    } catch (const DimensionError&) {
    }
    return pass_result(name, "560 cases + layout probes");
}

CheckResult check_squeeze_transform() {
    const char* name = "squeeze_transform";
    const double Delta_m = 5.0, K_s = -2.0;
    const double r = squeezing_parameter(Delta_m, K_s);
    const double Delta_s = squeezed_frequency(Delta_m, K_s);
    // r is about 0.55 here; the transformed block converges slowly in the
    // truncation, and dim 80 puts the 8x8 corner at the 1e-12 level
    const int d = 80;
    const Matrix m = annihilation(d);
    const Matrix h = Delta_m * number_operator(d) +
                     K_s * (m * m + m.adjoint() * m.adjoint());
    const Matrix u = squeeze_operator(d, r);
    const Matrix t = u.adjoint() * h * u;
    const Matrix want = Delta_s * number_operator(d) +
                        0.5 * (Delta_s - Delta_m) * identity(d);
    // compare away from the truncation edge
    const double dev = (t - want).topLeftCorner(8, 8).cwiseAbs().maxCoeff();
    if (dev > 1e-9 * Delta_s)
        return fail_result(name, "transformed block deviates by " + num(dev));
    const double unitary_dev =
        (u.adjoint() * u - identity(d)).cwiseAbs().maxCoeff();
    if (unitary_dev > 1e-12)
        return fail_result(name, "squeeze operator not unitary: " + num(unitary_dev));
    return pass_result(name, "block deviation " + num(dev));
}

// ---- model (scalar chain) checks ----

CheckResult check_polariton_vs_hopfield() {
    const char* name = "polariton_vs_hopfield";
    std::mt19937 gen(12005);
    std::uniform_real_distribution<double> decade(-2.0, 2.0), frac(0.0, 0.95);
    for (int it = 0; it < 1000; ++it) {
        const double dc = std::pow(10.0, decade(gen));
        const double ds = std::pow(10.0, decade(gen));
        const double gc = critical_coupling(dc, ds);
        const double g = frac(gen) * gc;
        const PolaritonFrequencies w = polariton_frequencies(dc, ds, g);
        const BogoliubovSpectrum b = bogoliubov_spectrum(dc, ds, g);
        if (!b.stable)
            return fail_result(name, "oracle flags stable point unstable at case " +
                                         std::to_string(it));
        const double wm = std::sqrt(w.omega_minus_sq);
        if (std::abs(wm - b.omega_minus) > 1e-10 * w.omega_plus ||
            std::abs(w.omega_plus - b.omega_plus) > 1e-10 * w.omega_plus)
            return fail_result(
                name, "branch mismatch at case " + std::to_string(it) + ": " +
                          num(wm) + " vs " + num(b.omega_minus));
    }
    std::uniform_real_distribution<double> over(1.05, 2.0);
    for (int it = 0; it < 200; ++it) {
        const double dc = std::pow(10.0, decade(gen));
        const double ds = std::pow(10.0, decade(gen));
        const double g = over(gen) * critical_coupling(dc, ds);
        if (polariton_frequencies(dc, ds, g).stable() ||
            bogoliubov_spectrum(dc, ds, g).stable)
            return fail_result(name, "unstable point not flagged at case " +
                                         std::to_string(it));
    }
    return pass_result(name, "1000 stable + 200 unstable cases");
}

CheckResult check_critical_zero() {
    const char* name = "critical_zero";
    std::mt19937 gen(12006);
    std::uniform_real_distribution<double> decade(-2.0, 2.0);
    for (int it = 0; it < 1000; ++it) {
        const double dc = std::pow(10.0, decade(gen));
        const double ds = std::pow(10.0, decade(gen));
        const PolaritonFrequencies w =
            polariton_frequencies(dc, ds, critical_coupling(dc, ds));
        if (std::abs(w.omega_minus_sq) > 1e-10 * w.omega_plus * w.omega_plus)
            return fail_result(name, "omega_minus^2 at G_c is " +
                                         num(w.omega_minus_sq) + " at case " +
                                         std::to_string(it));
    }
    return pass_result(name, "1000 cases");
}

CheckResult check_branch_monotonicity() {
    const char* name = "branch_monotonicity";
    std::mt19937 gen(12007);
    std::uniform_real_distribution<double> decade(-1.0, 1.0);
    for (int it = 0; it < 200; ++it) {
        const double dc = std::pow(10.0, decade(gen));
        const double ds = std::pow(10.0, decade(gen));
        const double gc = critical_coupling(dc, ds);
        double prev_minus = 0.0, prev_plus = 0.0;
        for (int i = 0; i <= 50; ++i) {
            const PolaritonFrequencies w =
                polariton_frequencies(dc, ds, gc * 0.99 * i / 50.0);
            const double wm = std::sqrt(w.omega_minus_sq);
            if (i > 0 && (wm >= prev_minus || w.omega_plus <= prev_plus))
                return fail_result(name, "branch not monotone at case " +
                                             std::to_string(it));
            prev_minus = wm;
            prev_plus = w.omega_plus;
        }
    }
    return pass_result(name, "200 curves x 51 points");
}

CheckResult check_symplectic_norm() {
    const char* name = "symplectic_norm";
    std::mt19937 gen(12008);
    std::uniform_real_distribution<double> th(-pi / 4 + 1e-3, pi / 4 - 1e-3),
        decade(-2.0, 2.0);
    for (int it = 0; it < 500; ++it) {
        const double dc = std::pow(10.0, decade(gen));
        const double wm = std::pow(10.0, decade(gen));
        const double wp = std::pow(10.0, decade(gen));
        const CavityDecomposition c = cavity_in_polariton_basis(th(gen), dc, wm, wp);
        const double s = (c.u_minus * c.u_minus - c.v_minus * c.v_minus) +
                         (c.u_plus * c.u_plus - c.v_plus * c.v_plus);
        if (std::abs(s - 1.0) > 1e-12)
            return fail_result(name, "symplectic sum " + num(s) + " at case " +
                                         std::to_string(it));
    }
    return pass_result(name, "500 cases");
}

CheckResult check_squeeze_consistency() {
    const char* name = "squeeze_consistency";
    std::mt19937 gen(12009);
    std::uniform_real_distribution<double> mag(0.1, 10.0), frac(0.0, 0.98),
        sign(-1.0, 1.0);
    for (int it = 0; it < 500; ++it) {
        const double dm = (sign(gen) < 0 ? -1.0 : 1.0) * mag(gen);
        const double ks = 0.5 * frac(gen) * dm * (sign(gen) < 0 ? -1.0 : 1.0);
        const double r = squeezing_parameter(dm, ks);
        const double dsq = squeezed_frequency(dm, ks);
        if (std::abs(std::tanh(2.0 * r) + 2.0 * ks / dm) > 1e-12)
            return fail_result(name, "tanh identity fails at case " +
                                         std::to_string(it));
        if (std::abs(dsq * dsq + 4.0 * ks * ks - dm * dm) > 1e-12 * dm * dm)
            return fail_result(name, "frequency identity fails at case " +
                                         std::to_string(it));
    }
    try {
        squeezing_parameter(1.0, 0.5);
        return fail_result(name, "hyperbolic boundary accepted");
    } catch (const SqueezingError&) {
    }
    return pass_result(name, "500 cases + boundary probe");
}

CheckResult check_steady_state_roots() {
    const char* name = "steady_state_roots";
    std::mt19937 gen(12010);
    std::uniform_real_distribution<double> mag(0.1, 10.0), kmag(0.01, 1.0),
        kap(0.01, 1.0), om(0.0, 3.0), sign(-1.0, 1.0);
    int multi = 0;
    for (int it = 0; it < 500; ++it) {
        const double delta = (sign(gen) < 0 ? -1.0 : 1.0) * mag(gen);
        const double K = (sign(gen) < 0 ? -1.0 : 1.0) * kmag(gen);
        const double kappa = kap(gen);
        const double Omega = om(gen);
        const auto roots = steady_state_magnon(delta, K, kappa, Omega);
        if (roots.empty())
            return fail_result(name, "no roots at case " + std::to_string(it));
        if (roots.size() > 1) ++multi;
        double n_max = Omega + 1.0;
        for (const auto& r : roots) n_max = std::max(n_max, 2.0 * r.n + 1.0);
        auto f = [&](double n) {
            const double det = delta + 2.0 * K * n;
            return n * (det * det + 0.25 * kappa * kappa) - Omega * Omega;
        };
        for (const auto& r : roots) {
            const double scale =
                Omega * Omega + r.n * (delta * delta + kappa * kappa) + 1.0;
            if (std::abs(f(r.n)) > 1e-8 * scale)
                return fail_result(name, "residual " + num(f(r.n)) + " at case " +
                                             std::to_string(it));
            const double h = 1e-6 * (1.0 + r.n);
            const double slope = (f(r.n + h) - f(std::max(r.n - h, 0.0))) /
                                 (r.n + h - std::max(r.n - h, 0.0));
            if (std::abs(slope) > 1e-6 * scale && (slope > 0.0) != r.stable)
                return fail_result(name, "stability tag disagrees with slope at "
                                         "case " + std::to_string(it));
        }
        // independent root count by sign scanning, skipped near tangencies
        const int grid = 20000;
        double min_sep = n_max;
        for (std::size_t i = 1; i < roots.size(); ++i)
            min_sep = std::min(min_sep, roots[i].n - roots[i - 1].n);
        if (roots.front().n > 0.0) min_sep = std::min(min_sep, roots.front().n);
        if (min_sep > 5.0 * n_max / grid) {
            int crossings = 0;
            double prev = f(0.0);
            if (prev == 0.0) ++crossings;
            for (int i = 1; i <= grid; ++i) {
                const double cur = f(n_max * i / grid);
                if ((prev < 0.0 && cur >= 0.0) || (prev > 0.0 && cur <= 0.0))
                    ++crossings;
                prev = cur;
            }
            if (crossings != static_cast<int>(roots.size()))
                return fail_result(name, "scan finds " + std::to_string(crossings) +
                                             " roots, solver " +
                                             std::to_string(roots.size()) +
                                             " at case " + std::to_string(it));
        }
    }
    if (multi == 0) return fail_result(name, "bistable branch never sampled");
    return pass_result(name, "500 cases, " + std::to_string(multi) + " multistable");
}

CheckResult check_fig2b_stability_flag() {
    const char* name = "fig2b_stability_flag";
    std::vector<double> grid;
    for (int i = 0; i <= 120; ++i) grid.push_back(0.012 * i);
    const SweepTable t = run_fig2b(grid, 2.0, 1.0);
    for (const auto& row : t.rows)
        if ((row[3] != 0.0) != (row[2] >= 0.0))
            return fail_result(name, "flag disagrees with sign at G = " +
                                         num(row[0]));
    return pass_result(name, "121 grid points");
}

// ---- dynamics checks ----

LindbladModel decaying_jc(int dim, double delta, double omega, double g,
                          double gamma, double kappa) {
    const SpaceDescriptor sp({2, dim});
    LindbladModel model(build_h_jc(sp, delta, omega, g));
    model.add_collapse(embed(pauli_minus(), sp, 0), gamma);
    model.add_collapse(embed(annihilation(dim), sp, 1), kappa);
    return model;
}

CheckResult check_gamma_decay() {
    const char* name = "gamma_decay_analytic";
    const SpaceDescriptor sp({2});
    const double delta = 3.0, gamma = 0.7;
    LindbladModel model(Operator(sp, 0.5 * delta * pauli_z()));
    model.add_collapse(Operator(sp, pauli_minus()), gamma);
    Vector plus(2);
    plus << 1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0);
    const QuantumState psi0 = QuantumState::pure(sp, plus);
    std::vector<NamedObservable> obs = standard_observables(sp, 1);
    obs.push_back({"sx", Operator(sp, pauli_x())});
    EvolveOptions eo;
    eo.rtol = 1e-10;
    eo.atol = 1e-13;
    const EvolutionResult r = evolve(model, psi0, time_grid(0.0, 3.0, 60), obs, eo);
    for (std::size_t i = 0; i < r.times.size(); ++i) {
        const double t = r.times[i];
        const double want_occ = 0.5 * std::exp(-gamma * t);
        const double want_sx =
            std::exp(-0.5 * gamma * t) * std::cos(delta * t);
        if (std::abs(r.series[0][i] - want_occ) > 1e-6)
            return fail_result(name, "occupation off by " +
                                         num(r.series[0][i] - want_occ));
        if (std::abs(r.series[1][i] - want_sx) > 1e-6)
            return fail_result(name, "coherence off by " +
                                         num(r.series[1][i] - want_sx));
    }
    return pass_result(name, "population and coherence over 61 points");
}

CheckResult check_rk_vs_expm() {
    const char* name = "rk_vs_expm";
    LindbladModel model = decaying_jc(5, 1.3, 1.0, 0.8, 0.05, 0.12);
    const SpaceDescriptor sp = model.H.space;
    const QuantumState psi0 = basis_state(sp, {0, 0});
    const auto grid = time_grid(0.0, 8.0, 40);
    const auto obs = standard_observables(sp, 1);
    EvolveOptions eo;
    eo.rtol = 1e-10;
    eo.atol = 1e-13;
    const EvolutionResult a = evolve(model, psi0, grid, obs, eo);
    const EvolutionResult b = evolve_expm(model, psi0, grid, obs, eo);
    for (std::size_t k = 0; k < obs.size(); ++k)
        for (std::size_t i = 0; i < grid.size(); ++i)
            if (std::abs(a.series[k][i] - b.series[k][i]) > 1e-8)
                return fail_result(name, "series " + a.names[k] + " differs by " +
                                             num(a.series[k][i] - b.series[k][i]));
    return pass_result(name, "3 series x 41 points within 1e-8");
}

CheckResult check_unitary_vs_rk() {
    const char* name = "unitary_vs_rk";
    const SpaceDescriptor sp({2, 4});
    const Operator h = build_h_jc(sp, 0.9, 1.1, 0.6);
    const QuantumState psi0 = basis_state(sp, {0, 1});
    const auto grid = time_grid(0.0, 10.0, 50);
    const auto obs = standard_observables(sp, 1);
    const EvolutionResult a = evolve_unitary(h, psi0, grid, obs);
    EvolveOptions eo;
    eo.rtol = 1e-11;
    eo.atol = 1e-13;
    const EvolutionResult b = evolve(LindbladModel(h), psi0, grid, obs, eo);
    for (std::size_t k = 0; k < obs.size(); ++k)
        for (std::size_t i = 0; i < grid.size(); ++i)
            if (std::abs(a.series[k][i] - b.series[k][i]) > 1e-8)
                return fail_result(name, "series " + a.names[k] + " differs by " +
                                             num(a.series[k][i] - b.series[k][i]));
    return pass_result(name, "closed-system engines agree within 1e-8");
}

CheckResult check_convergence() {
    const char* name = "tolerance_convergence";
    LindbladModel model = decaying_jc(4, 0.7, 1.0, 0.9, 0.08, 0.2);
    const SpaceDescriptor sp = model.H.space;
    const QuantumState psi0 = basis_state(sp, {0, 0});
    const auto grid = time_grid(0.0, 6.0, 12);
    const auto obs = standard_observables(sp, 1);
    const EvolutionResult ref = evolve_expm(model, psi0, grid, obs);
    auto max_err = [&](const EvolutionResult& r) {
        double e = 0.0;
        for (std::size_t k = 0; k < obs.size(); ++k)
            for (std::size_t i = 0; i < grid.size(); ++i)
                e = std::max(e, std::abs(r.series[k][i] - ref.series[k][i]));
        return e;
    };
    EvolveOptions lo, hi;
    lo.rtol = 1e-4;
    lo.atol = 1e-7;
    hi.rtol = 1e-9;
    hi.atol = 1e-12;
    const EvolutionResult rl = evolve(model, psi0, grid, obs, lo);
    const EvolutionResult rh = evolve(model, psi0, grid, obs, hi);
    if (!(max_err(rh) < max_err(rl)))
        return fail_result(name, "tighter tolerance did not reduce error: " +
                                     num(max_err(rh)) + " vs " + num(max_err(rl)));
    if (max_err(rh) > 1e-7)
        return fail_result(name, "tight-tolerance error " + num(max_err(rh)));
    if (!(rh.error_estimate < rl.error_estimate))
        return fail_result(name, "error estimate did not shrink");
    return pass_result(name, "errors " + num(max_err(rl)) + " -> " +
                                 num(max_err(rh)));
}

CheckResult check_trace_positivity() {
    const char* name = "trace_positivity";
    LindbladModel model = decaying_jc(6, 1.0, 1.0, 0.75, 0.1, 0.3);
    const SpaceDescriptor sp = model.H.space;
    EvolveOptions eo;
    eo.rtol = 1e-9;
    eo.atol = 1e-12;
    const EvolutionResult r =
        evolve(model, basis_state(sp, {0, 1}), time_grid(0.0, 12.0, 48),
               standard_observables(sp, 1), eo);
    if (r.max_trace_deviation > 1e-8)
        return fail_result(name, "trace deviation " + num(r.max_trace_deviation));
    if (r.min_eigenvalue_overall < -1e-8)
        return fail_result(name, "negative eigenvalue " +
                                     num(r.min_eigenvalue_overall));
    return pass_result(name, "trace dev " + num(r.max_trace_deviation) +
                                 ", min eig " + num(r.min_eigenvalue_overall));
}

CheckResult check_jc_rabi() {
    const char* name = "jc_rabi_analytic";
    const double g = 2.0;
    const SpaceDescriptor sp({2, 3});
    const Operator h = build_h_jc(sp, 5.0, 5.0, g);  // resonant
    const auto grid = time_grid(0.0, pi / g, 80);
    const EvolutionResult r = evolve_unitary(h, basis_state(sp, {0, 0}), grid,
                                             standard_observables(sp, 1));
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const double c = std::cos(g * grid[i]);
        if (std::abs(r.series[0][i] - c * c) > 1e-10)
            return fail_result(name, "occupation deviates by " +
                                         num(r.series[0][i] - c * c));
        if (std::abs(r.series[0][i] + r.series[1][i] - 1.0) > 1e-10)
            return fail_result(name, "excitation not conserved");
    }
    return pass_result(name, "cos^2(gt) over 81 points");
}

CheckResult check_frame_invariance() {
    const char* name = "frame_invariance";
    const SpaceDescriptor sp({2, 6});
    const double shift = 2.7;
    const QuantumState psi0 = basis_state(sp, {0, 1});
    const auto grid = time_grid(0.0, 7.0, 35);
    const auto obs = standard_observables(sp, 1);
    const EvolutionResult a =
        evolve_unitary(build_h_jc(sp, 1.2, 0.8, 0.5), psi0, grid, obs);
    // co-shifting spin and mode frequencies changes only the frame
    const EvolutionResult b = evolve_unitary(
        build_h_jc(sp, 1.2 + shift, 0.8 + shift, 0.5), psi0, grid, obs);
    const Operator hc =
        build_h_jc(sp, 1.2, 0.8, 0.5) + 4.2 * identity_on(sp);
    const EvolutionResult c = evolve_unitary(hc, psi0, grid, obs);
    for (std::size_t k = 0; k < obs.size(); ++k)
        for (std::size_t i = 0; i < grid.size(); ++i) {
            if (std::abs(a.series[k][i] - b.series[k][i]) > 1e-9)
                return fail_result(name, "co-shifted frame differs by " +
                                             num(a.series[k][i] - b.series[k][i]));
            if (std::abs(a.series[k][i] - c.series[k][i]) > 1e-11)
                return fail_result(name, "global shift differs by " +
                                             num(a.series[k][i] - c.series[k][i]));
        }
    return pass_result(name, "co-shift within 1e-9, global shift within 1e-11");
}

CheckResult check_dispersive_exchange() {
    const char* name = "dispersive_exchange";
    const double g = 1.0, delta = 100.0;
    const double g_eff = effective_spin_spin(g, delta, 0.0).g_eff;
    const SpaceDescriptor sp({2, 2, 4});
    const Operator h = build_h_tc(sp, delta, 0.0, g);
    const double t_x = pi / (2.0 * std::abs(g_eff));
    const auto grid = time_grid(0.0, t_x, 200);
    const EvolutionResult r = evolve_unitary(h, basis_state(sp, {0, 1, 0}), grid,
                                             standard_observables(sp, 2));
    const double spin2_final = r.series[1].back();
    if (std::abs(spin2_final - 1.0) > 0.05)
        return fail_result(name, "transfer at pi/(2 g_eff) reaches only " +
                                     num(spin2_final));
    double lp_max = 0.0;
    for (double v : r.series[2]) lp_max = std::max(lp_max, v);
    if (lp_max > 4.0 * (g / delta) * (g / delta))
        return fail_result(name, "polariton occupation " + num(lp_max));
    return pass_result(name, "transfer " + num(spin2_final) + ", lp max " +
                                 num(lp_max));
}

// ---- experiment-level checks ----

CheckResult check_fig3_truncation() {
    const char* name = "fig3_truncation";
    ScenarioOptions o;
    o.g_r = 2.0 * pi * 3.5e6;
    const EvolutionResult r = run_fig3(false, nominal_params(), o);
    double top = 0.0, sum_dev = 0.0;
    for (std::size_t i = 0; i < r.times.size(); ++i) {
        top = std::max(top, r.series[2][i]);
        sum_dev = std::max(sum_dev,
                           std::abs(r.series[0][i] + r.series[1][i] - 1.0));
    }
    if (top > 1e-8) return fail_result(name, "top Fock level reaches " + num(top));
    if (sum_dev > 1e-8)
        return fail_result(name, "excitation sum deviates by " + num(sum_dev));
    return pass_result(name, "top Fock " + num(top) + ", sum dev " + num(sum_dev));
}

CheckResult check_fig4_truncation() {
    const char* name = "fig4_truncation";
    ScenarioOptions o;
    o.g_r = 2.0 * pi * 3.5e6;
    const EvolutionResult r = run_fig4(false, nominal_params(), o);
    double lp = 0.0, top = 0.0;
    for (std::size_t i = 0; i < r.times.size(); ++i) {
        lp = std::max(lp, r.series[2][i]);
        top = std::max(top, r.series[3][i]);
    }
    if (lp > 0.05) return fail_result(name, "polariton occupation " + num(lp));
    if (top > 1e-8) return fail_result(name, "top Fock level reaches " + num(top));
    return pass_result(name, "lp max " + num(lp) + ", top Fock " + num(top));
}

}  // namespace

std::vector<CheckResult> run_selftests(const std::string& filter) {
    using Entry = std::pair<const char*, CheckResult (*)()>;
    static const Entry checks[] = {
        {"corner_identity", check_corner_identity},
        {"adjoint_properties", check_adjoint_properties},
        {"embed_layout", check_embed_layout},
        {"expectation_real", check_expectation_real},
        {"builders_hermitian", check_builders_hermitian},
        {"squeeze_transform", check_squeeze_transform},
        {"polariton_vs_hopfield", check_polariton_vs_hopfield},
        {"critical_zero", check_critical_zero},
        {"branch_monotonicity", check_branch_monotonicity},
        {"symplectic_norm", check_symplectic_norm},
        {"squeeze_consistency", check_squeeze_consistency},
        {"steady_state_roots", check_steady_state_roots},
        {"fig2b_stability_flag", check_fig2b_stability_flag},
        {"gamma_decay_analytic", check_gamma_decay},
        {"rk_vs_expm", check_rk_vs_expm},
        {"unitary_vs_rk", check_unitary_vs_rk},
        {"tolerance_convergence", check_convergence},
        {"trace_positivity", check_trace_positivity},
        {"jc_rabi_analytic", check_jc_rabi},
        {"frame_invariance", check_frame_invariance},
        {"dispersive_exchange", check_dispersive_exchange},
        {"fig3_truncation", check_fig3_truncation},
        {"fig4_truncation", check_fig4_truncation},
    };
    std::vector<CheckResult> out;
    for (const auto& [name, fn] : checks) {
        if (!filter.empty() && std::string(name).find(filter) == std::string::npos)
            continue;
        CheckResult r = fn();
        if (r.name != name) r.detail += " (registered as " + std::string(name) + ")";
        out.push_back(std::move(r));
    }
    return out;
}

}  // namespace cmpol
