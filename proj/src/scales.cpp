#include "cmpol/scales.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <complex>

#include "cmpol/constants.hpp"

namespace cmpol {

using constants::gyromagnetic_ratio;
using constants::hbar;
using constants::mu_bohr;
using constants::mu_vacuum;
using constants::pi;
using constants::two_pi;

// ---- scalar operations ----

double spin_frequency(double D, double g_e, double B_ex) {
    const double omega = D - g_e * mu_bohr * B_ex / hbar;
    if (omega <= 0.0)
        throw RegimeError("spin frequency nonpositive: field beyond the zero crossing");
    return omega;
}

double kerr_coefficient(double K_an, double g_e, double M_s, double R) {
    if (R <= 0.0) throw RegimeError("kerr coefficient: sphere radius must be > 0");
    if (M_s <= 0.0) throw RegimeError("kerr coefficient: magnetization must be > 0");
    const double gamma = gyromagnetic_ratio(g_e);
    const double V_m = (4.0 / 3.0) * pi * R * R * R;
    return mu_vacuum * K_an * gamma * gamma / (M_s * M_s * V_m);
}

double magnon_frequency(double B_0, double g_e, double K, double s_total) {
    const double omega = gyromagnetic_ratio(g_e) * B_0 - (2.0 * s_total - 1.0) * K;
    if (omega <= 0.0)
        throw RegimeError("magnon frequency nonpositive: anisotropy overwhelms bias");
    return omega;
}

double spin_cavity_coupling(double omega_c, double L_a, double d, double g_e) {
    if (omega_c <= 0.0) throw RegimeError("spin-cavity coupling: omega_c must be > 0");
    if (L_a <= 0.0) throw RegimeError("spin-cavity coupling: inductance must be > 0");
    if (d <= 0.0) throw RegimeError("spin-cavity coupling: wire distance must be > 0");
    const double I_rms = std::sqrt(hbar * omega_c / (2.0 * L_a));
    const double B_rms = mu_vacuum * I_rms / (two_pi * d);
    return 2.0 * g_e * mu_bohr * B_rms / hbar;
}

double magnon_cavity_coupling(double R, const CouplingCalibration& cal) {
    if (R <= 0.0) throw RegimeError("magnon-cavity coupling: radius must be > 0");
    if (cal.g_ref <= 0.0 || cal.R_ref <= 0.0)
        throw RegimeError("magnon-cavity coupling: calibration anchor must be positive");
    return cal.g_ref * std::pow(R / cal.R_ref, cal.p);
}

// f(n) = n[(delta + 2Kn)^2 + kappa^2/4] - Omega^2; roots are steady states,
// f'(n) > 0 marks the stable branches.
static double cubic_f(double n, double delta, double K, double kappa, double Omega) {
    const double det = delta + 2.0 * K * n;
    return n * (det * det + 0.25 * kappa * kappa) - Omega * Omega;
}

static double cubic_fprime(double n, double delta, double K, double kappa) {
    const double det = delta + 2.0 * K * n;
    return det * det + 4.0 * K * n * det + 0.25 * kappa * kappa;
}

std::vector<MagnonRoot> steady_state_magnon(double delta_m, double K, double kappa_m,
                                            double Omega_d) {
    if (kappa_m < 0.0) throw RegimeError("steady state: kappa_m must be >= 0");
    if (Omega_d < 0.0) throw RegimeError("steady state: Omega_d must be >= 0");

    std::vector<double> candidates;
    if (K == 0.0) {
        const double denom = delta_m * delta_m + 0.25 * kappa_m * kappa_m;
        if (denom == 0.0) {
            if (Omega_d == 0.0) return {{0.0, true}};
            throw RegimeError("steady state: undamped resonant drive has no fixed point");
        }
        candidates.push_back(Omega_d * Omega_d / denom);
    } else {
        // monic cubic n^3 + c2 n^2 + c1 n + c0 = 0 via companion eigenvalues
        const double a = 4.0 * K * K;
        const double c2 = 4.0 * K * delta_m / a;
        const double c1 = (delta_m * delta_m + 0.25 * kappa_m * kappa_m) / a;
        const double c0 = -Omega_d * Omega_d / a;
        Eigen::Matrix3cd companion = Eigen::Matrix3cd::Zero();
        companion(0, 2) = -c0;
        companion(1, 2) = -c1;
        companion(2, 2) = -c2;
        companion(1, 0) = 1.0;
        companion(2, 1) = 1.0;
        Eigen::ComplexEigenSolver<Eigen::Matrix3cd> es(companion, false);
        const double scale =
            std::max({1.0, std::abs(delta_m) / std::abs(2.0 * K), Omega_d});
        for (int i = 0; i < 3; ++i) {
            std::complex<double> z = es.eigenvalues()(i);
            if (std::abs(z.imag()) > 1e-8 * std::max(1.0, std::abs(z))) continue;
            double n = z.real();
            // polish; companion roots of ill-scaled cubics drift at ~1e-10
            for (int it = 0; it < 4; ++it) {
                const double fp = cubic_fprime(n, delta_m, K, kappa_m);
                if (fp == 0.0) break;
                n -= cubic_f(n, delta_m, K, kappa_m, Omega_d) / fp;
            }
            if (n < -1e-12 * scale) continue;
            candidates.push_back(std::max(n, 0.0));
        }
    }

    std::sort(candidates.begin(), candidates.end());
    std::vector<MagnonRoot> roots;
    for (double n : candidates) {
        if (!roots.empty() &&
            std::abs(n - roots.back().n) <= 1e-9 * std::max(1.0, std::abs(n)))
            continue;  // dedup multiple roots
        roots.push_back({n, cubic_fprime(n, delta_m, K, kappa_m) > 0.0});
    }
    return roots;
}

TwoMagnonParams two_magnon_params(double delta_m, double K,
                                  std::complex<double> mean_m) {
    // phase reference fixed so <m>^2 is real and K_s carries the sign of K
    const double n = std::norm(mean_m);
    return {delta_m + 4.0 * K * n, K * n};
}

double squeezing_parameter(double Delta_m, double K_s) {
    const double num = Delta_m - 2.0 * K_s;
    const double den = Delta_m + 2.0 * K_s;
    if (den == 0.0 || num / den <= 0.0)
        throw SqueezingError("squeezing undefined: |Delta_m| <= 2|K_s| (hyperbolic regime)");
    return 0.25 * std::log(num / den);
}

double squeezed_frequency(double Delta_m, double K_s) {
    const double arg = Delta_m * Delta_m - 4.0 * K_s * K_s;
    if (arg <= 0.0)
        throw SqueezingError("squeezed frequency undefined: |Delta_m| <= 2|K_s|");
    return std::sqrt(arg);
}

double enhanced_coupling(double g_m, double r_m) {
    if (g_m <= 0.0) throw RegimeError("enhanced coupling: g_m must be > 0");
    return 0.5 * g_m * std::exp(r_m);
}

PolaritonFrequencies polariton_frequencies(double Delta_c, double Delta_s, double G) {
    if (Delta_c <= 0.0 || Delta_s <= 0.0)
        throw RegimeError("polariton frequencies: detunings must be > 0");
    if (G < 0.0) throw RegimeError("polariton frequencies: G must be >= 0");
    const double S = Delta_c * Delta_c + Delta_s * Delta_s;
    const double D = Delta_c * Delta_c - Delta_s * Delta_s;
    const double P = Delta_c * Delta_s;
    const double rad = std::sqrt(D * D + 16.0 * G * G * P);
    PolaritonFrequencies w;
    w.omega_plus = std::sqrt(0.5 * (S + rad));
    // product form avoids the S - rad cancellation near criticality
    w.omega_minus_sq = P * (P - 4.0 * G * G) / (0.5 * (S + rad));
    return w;
}

double critical_coupling(double Delta_c, double Delta_s) {
    const double P = Delta_c * Delta_s;
    if (P < 0.0)
        throw RegimeError("critical coupling undefined: Delta_c Delta_s < 0");
    return 0.5 * std::sqrt(P);
}

double mixing_angle(double Delta_c, double Delta_s, double G) {
    if (Delta_c * Delta_s < 0.0)
        throw RegimeError("mixing angle: Delta_c Delta_s must be >= 0");
    if (Delta_c == Delta_s)
        throw DegeneracyError("mixing angle undefined for Delta_c == Delta_s");
    const double num = 4.0 * G * std::sqrt(Delta_c * Delta_s);
    const double den = Delta_c * Delta_c - Delta_s * Delta_s;
    return 0.5 * std::atan(num / den);
}

static void check_polariton_inputs(double Delta_c, double omega_minus,
                                   double omega_plus) {
    if (Delta_c <= 0.0) throw RegimeError("polariton couplings: Delta_c must be > 0");
    if (omega_minus <= 0.0)
        throw InstabilityError(
            "lower polariton frequency not positive (critical or unstable point)");
    if (omega_plus <= 0.0)
        throw RegimeError("polariton couplings: omega_plus must be > 0");
}

PolaritonSpinCouplings polariton_spin_couplings(double lambda, double theta,
                                                double Delta_c, double omega_minus,
                                                double omega_plus) {
    const CavityDecomposition c =
        cavity_in_polariton_basis(theta, Delta_c, omega_minus, omega_plus);
    return {lambda * c.u_minus, lambda * c.v_minus, lambda * c.u_plus,
            lambda * c.v_plus};
}

CavityDecomposition cavity_in_polariton_basis(double theta, double Delta_c,
                                              double omega_minus, double omega_plus) {
    check_polariton_inputs(Delta_c, omega_minus, omega_plus);
    const double cm = std::cos(theta), sm = std::sin(theta);
    const double dm = 2.0 * std::sqrt(Delta_c * omega_minus);
    const double dp = 2.0 * std::sqrt(Delta_c * omega_plus);
    return {cm * (Delta_c + omega_minus) / dm, cm * (Delta_c - omega_minus) / dm,
            sm * (Delta_c + omega_plus) / dp, sm * (Delta_c - omega_plus) / dp};
}

EffectiveSpinSpin effective_spin_spin(double g_r, double Delta_nv, double n_minus) {
    if (Delta_nv == 0.0)
        throw RegimeError("effective coupling undefined at Delta_nv = 0");
    if (n_minus < 0.0)
        throw RegimeError("effective coupling: polariton occupation must be >= 0");
    const double g_eff = -g_r * g_r / Delta_nv;
    return {g_eff, Delta_nv + 2.0 * g_eff * n_minus + g_eff};
}

BogoliubovSpectrum bogoliubov_spectrum(double Delta_c, double Delta_s, double G) {
    if (Delta_c <= 0.0 || Delta_s <= 0.0)
        throw RegimeError("bogoliubov spectrum: detunings must be > 0");
    if (G < 0.0) throw RegimeError("bogoliubov spectrum: G must be >= 0");
    // dynamical matrix of (a, m, a^dag, m^dag) under
    // H = Dc a^dag a + Ds m^dag m + G (a + a^dag)(m + m^dag)
    Eigen::Matrix4cd M = Eigen::Matrix4cd::Zero();
    M(0, 0) = Delta_c;
    M(0, 1) = G;
    M(0, 3) = G;
    M(1, 0) = G;
    M(1, 1) = Delta_s;
    M(1, 2) = G;
    M(2, 1) = -G;
    M(2, 2) = -Delta_c;
    M(2, 3) = -G;
    M(3, 0) = -G;
    M(3, 2) = -G;
    M(3, 3) = -Delta_s;
    Eigen::ComplexEigenSolver<Eigen::Matrix4cd> es(M, false);

    const double scale = std::max({1.0, Delta_c, Delta_s, G});
    BogoliubovSpectrum out;
    std::vector<double> pos;
    for (int i = 0; i < 4; ++i) {
        const std::complex<double> z = es.eigenvalues()(i);
        if (std::abs(z.imag()) > 1e-9 * scale) out.stable = false;
        if (z.real() > 1e-12 * scale) pos.push_back(z.real());
    }
    std::sort(pos.begin(), pos.end());
    if (out.stable && pos.size() == 2) {
        out.omega_minus = pos[0];
        out.omega_plus = pos[1];
    } else {
        out.stable = false;
        out.omega_minus = 0.0;
        out.omega_plus = pos.empty() ? 0.0 : pos.back();
    }
    return out;
}

// ---- full chain ----

DerivedScales derive_scales(const PhysicalParams& p, double n_minus) {
    DerivedScales s;
    s.omega_nv = spin_frequency(p.D, p.g_e, p.B_ex);
    s.K = kerr_coefficient(p.K_an, p.g_e, p.M_s, p.R);
    s.g_m = magnon_cavity_coupling(p.R, p.cal);
    s.lambda = spin_cavity_coupling(p.omega_c, p.L_a, p.d, p.g_e);
    s.omega_m = magnon_frequency(p.B_0, p.g_e, s.K, p.s_total);

    s.Delta_nv = s.omega_nv - p.omega_d;
    s.Delta_c = p.omega_c - p.omega_d;
    s.delta_m = s.omega_m - p.omega_d;

    double n = 0.0;
    switch (p.mode) {
        case MeanFieldMode::squeeze_target: {
            // invert tanh(2 r_m) = -2 K_s / Delta_m with K_s = K n,
            // Delta_m = delta_m + 4 K n
            const double T = std::tanh(2.0 * p.r_m_target);
            if (T == 0.0) {
                n = 0.0;
                break;
            }
            if (s.K == 0.0)
                throw RegimeError("squeeze target needs a nonzero Kerr coefficient");
            n = -T * s.delta_m / (2.0 * s.K * (1.0 + 2.0 * T));
            if (n < 0.0)
                throw RegimeError("squeeze target unreachable: implied |<m>|^2 < 0");
            break;
        }
        case MeanFieldMode::mean_given:
            n = std::norm(p.mean_m);
            break;
        case MeanFieldMode::steady_state: {
            const auto roots =
                steady_state_magnon(s.delta_m, s.K, p.kappa_m, p.Omega_d);
            double best = -1.0;
            for (const auto& r : roots)
                if (r.stable) best = std::max(best, r.n);
            if (best < 0.0)
                throw RegimeError("steady state: no stable branch at this drive");
            n = best;
            break;
        }
    }
    s.mean_m = std::sqrt(n);  // phase convention: real, nonnegative
    const double det = s.delta_m + 2.0 * s.K * n;
    s.Omega_d_implied = std::sqrt(n * (det * det + 0.25 * p.kappa_m * p.kappa_m));

    const TwoMagnonParams tm = two_magnon_params(s.delta_m, s.K, s.mean_m);
    s.Delta_m = tm.Delta_m;
    s.K_s = tm.K_s;
    if (s.K_s == 0.0) {
        s.r_m = 0.0;
        s.Delta_s = std::abs(s.Delta_m);
    } else {
        s.r_m = squeezing_parameter(s.Delta_m, s.K_s);
        s.Delta_s = squeezed_frequency(s.Delta_m, s.K_s);
    }

    s.G = enhanced_coupling(s.g_m, s.r_m);
    s.G_c = critical_coupling(s.Delta_c, s.Delta_s);

    const PolaritonFrequencies w = polariton_frequencies(s.Delta_c, s.Delta_s, s.G);
    s.omega_plus = w.omega_plus;
    s.omega_minus_sq = w.omega_minus_sq;
    s.lp_stable = w.stable();
    s.omega_minus = s.lp_stable ? std::sqrt(w.omega_minus_sq) : 0.0;
    s.theta = mixing_angle(s.Delta_c, s.Delta_s, s.G);

    if (s.lp_stable && s.omega_minus > 0.0) {
        const PolaritonSpinCouplings g = polariton_spin_couplings(
            s.lambda, s.theta, s.Delta_c, s.omega_minus, s.omega_plus);
        s.g_r = g.g_r;
        s.g_cr = g.g_cr;
        s.g_r_prime = g.g_r_prime;
        s.g_cr_prime = g.g_cr_prime;
        const EffectiveSpinSpin e = effective_spin_spin(s.g_r, s.Delta_nv, n_minus);
        s.g_eff = e.g_eff;
        s.omega_eff = e.omega_eff;
    }
    return s;
}

// ---- default-parameter helpers ----

double default_anisotropy_constant(double g_e, double M_s) {
    const double R_anchor = 50e-9;
    const double K_target = two_pi * 128.0;  // rad/s at the anchor radius
    const double gamma = gyromagnetic_ratio(g_e);
    const double V_m = (4.0 / 3.0) * pi * R_anchor * R_anchor * R_anchor;
    return -K_target * M_s * M_s * V_m / (mu_vacuum * gamma * gamma);
}

double default_bias_field(double g_e) {
    return two_pi * 2e9 / gyromagnetic_ratio(g_e);
}

PhysicalParams nominal_params() {
    PhysicalParams p;
    p.D = two_pi * 2.87e9;
    p.g_e = 2.0;
    // Zeeman shift g_e mu_B B_ex / hbar = 2pi x 1.91 GHz, so omega_nv is
    // 2pi x 960 MHz in the omega_d -> 0 frame.
    p.B_ex = two_pi * 1.91e9 * hbar / (p.g_e * mu_bohr);
    p.M_s = 1.94e5;
    p.K_an = default_anisotropy_constant(p.g_e, p.M_s);
    p.R = 50e-9;
    p.s_total = 1e6;
    p.B_0 = default_bias_field(p.g_e);
    p.omega_c = two_pi * 2e9;
    p.L_a = 2e-9;
    p.d = 50e-9;
    p.omega_d = 0.0;
    p.Omega_d = 0.0;
    p.kappa_c = two_pi * 1e6;
    p.kappa_m = two_pi * 1e6;
    p.kappa_minus = two_pi * 1e6;
    p.gamma_perp = two_pi * 1e3;
    p.mode = MeanFieldMode::squeeze_target;
    p.r_m_target = 3.0;
    p.cal = {two_pi * 0.2e6, 50e-9, 1.0};
    return p;
}

}  // namespace cmpol
