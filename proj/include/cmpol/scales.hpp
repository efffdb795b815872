#pragma once

#include <complex>
#include <vector>

#include "cmpol/errors.hpp"

namespace cmpol {

// ---- input parameters ----

// Size calibration of the magnon-cavity coupling: g_m = g_ref (R/R_ref)^p.
// Single anchor from the device estimate (g_ref at R_ref); exponent exposed.
struct CouplingCalibration {
    double g_ref = 0.0;  // rad/s at R_ref
    double R_ref = 0.0;  // m
    double p = 1.0;
};

// How the magnon mean field is fixed before linearization.
enum class MeanFieldMode {
    squeeze_target,  // back-solve |<m>| from a target squeezing parameter r_m
    mean_given,      // use mean_m as supplied
    steady_state,    // largest stable root of the driven Kerr steady state
};

// Device and drive parameters, SI units, angular frequencies in rad/s.
struct PhysicalParams {
    double D = 0.0;        // spin zero-field splitting, rad/s
    double g_e = 2.0;      // electron g-factor
    double B_ex = 0.0;     // spin bias field, T
    double B_0 = 0.0;      // magnon bias field, T
    double K_an = 0.0;     // anisotropy energy density, J/m^3 (sign sets sign of K)
    double M_s = 0.0;      // saturation magnetization, A/m
    double R = 0.0;        // sphere radius, m
    double s_total = 0.0;  // total spin number of the sphere
    double omega_c = 0.0;  // cavity frequency, rad/s
    double L_a = 0.0;      // resonator inductance, H
    double d = 0.0;        // spin-to-wire distance, m
    double omega_d = 0.0;  // drive frequency, rad/s
    double Omega_d = 0.0;  // drive amplitude, rad/s

    double kappa_c = 0.0;      // cavity linewidth, rad/s
    double kappa_m = 0.0;      // magnon linewidth, rad/s
    double kappa_minus = 0.0;  // lower-polariton decay, rad/s
    double gamma_perp = 0.0;   // spin dephasing-limited decay, rad/s

    MeanFieldMode mode = MeanFieldMode::squeeze_target;
    std::complex<double> mean_m = 0.0;  // used when mode == mean_given
    double r_m_target = 0.0;            // used when mode == squeeze_target

    CouplingCalibration cal;
};

// ---- derived quantities ----

// Everything the reduction chain produces. Angular frequencies in rad/s;
// r_m and theta dimensionless. Member names match the serialized field names
// (delta_m is the bare drive detuning, Delta_m the mean-field-shifted one).
struct DerivedScales {
    double omega_nv = 0.0;
    double omega_m = 0.0;
    double K = 0.0;
    double g_m = 0.0;
    double lambda = 0.0;
    double delta_m = 0.0;
    double Delta_m = 0.0;
    double Delta_c = 0.0;
    double Delta_nv = 0.0;
    double K_s = 0.0;
    double r_m = 0.0;
    double Delta_s = 0.0;
    double G = 0.0;
    double G_c = 0.0;
    double omega_plus = 0.0;
    double omega_minus = 0.0;  // sqrt of omega_minus_sq when stable, else 0
    double theta = 0.0;
    double g_r = 0.0;
    double g_cr = 0.0;
    double g_r_prime = 0.0;
    double g_cr_prime = 0.0;
    double g_eff = 0.0;
    double omega_eff = 0.0;

    // diagnostics
    double omega_minus_sq = 0.0;  // signed; negative marks instability
    bool lp_stable = true;
    std::complex<double> mean_m = 0.0;
    double Omega_d_implied = 0.0;  // drive consistent with the mean field
};

// ---- scalar operations of the reduction chain ----

// omega_NV = D - g_e mu_B B_ex / hbar.
double spin_frequency(double D, double g_e, double B_ex);

// K = mu0 K_an gamma^2 / (M^2 V_m), V_m = (4/3) pi R^3, gamma = g_e mu_B/hbar.
// Sign follows K_an (crystal-axis choice).
double kerr_coefficient(double K_an, double g_e, double M_s, double R);

// omega_m = gamma B_0 - (2 s_total - 1) K.
double magnon_frequency(double B_0, double g_e, double K, double s_total);

// lambda = 2 g_e mu_B B_rms / hbar with B_rms = mu0 I_rms / (2 pi d) and
// I_rms = sqrt(hbar omega_c / (2 L_a)).
double spin_cavity_coupling(double omega_c, double L_a, double d, double g_e);

// g_m = g_ref (R / R_ref)^p.
double magnon_cavity_coupling(double R, const CouplingCalibration& cal);

// One root of the driven Kerr steady state n[(delta_m + 2Kn)^2 + kappa^2/4] =
// Omega_d^2, with the slope-criterion stability tag.
struct MagnonRoot {
    double n = 0.0;
    bool stable = true;
};

// All nonnegative real roots, ascending. Linear case (K = 0) has one root.
std::vector<MagnonRoot> steady_state_magnon(double delta_m, double K,
                                            double kappa_m, double Omega_d);

// Delta_m = delta_m + 4K|<m>|^2, K_s = K|<m>|^2 (phase fixed so K_s is real,
// sign following K).
struct TwoMagnonParams {
    double Delta_m = 0.0;
    double K_s = 0.0;
};
TwoMagnonParams two_magnon_params(double delta_m, double K,
                                  std::complex<double> mean_m);

// r_m = (1/4) ln[(Delta_m - 2K_s)/(Delta_m + 2K_s)]. Throws SqueezingError in
// the hyperbolic regime |Delta_m| <= 2|K_s|.
double squeezing_parameter(double Delta_m, double K_s);

// Delta_s = sqrt(Delta_m^2 - 4 K_s^2) (same domain as the squeezing parameter).
double squeezed_frequency(double Delta_m, double K_s);

// G = (1/2) g_m exp(r_m).
double enhanced_coupling(double g_m, double r_m);

// omega_pm^2 = (1/2)[Dc^2 + Ds^2 +- sqrt((Dc^2 - Ds^2)^2 + 16 G^2 Dc Ds)].
// omega_minus_sq is returned signed: negative means the lower branch is
// unstable (G > G_c).
struct PolaritonFrequencies {
    double omega_plus = 0.0;
    double omega_minus_sq = 0.0;
    bool stable() const { return omega_minus_sq >= 0.0; }
};
PolaritonFrequencies polariton_frequencies(double Delta_c, double Delta_s, double G);

// G_c = (1/2) sqrt(Delta_c Delta_s).
double critical_coupling(double Delta_c, double Delta_s);

// theta = (1/2) arctan[4 G sqrt(Dc Ds)/(Dc^2 - Ds^2)], principal branch in
// (-pi/4, pi/4). Throws DegeneracyError when Delta_c == Delta_s.
double mixing_angle(double Delta_c, double Delta_s, double G);

// Spin couplings to both polariton branches:
//   g_r  = lambda cos(theta) (Dc + w-)/(2 sqrt(Dc w-)),
//   g_cr = lambda cos(theta) (Dc - w-)/(2 sqrt(Dc w-)),
// and the primed pair with sin(theta), w+.
struct PolaritonSpinCouplings {
    double g_r = 0.0;
    double g_cr = 0.0;
    double g_r_prime = 0.0;
    double g_cr_prime = 0.0;
};
PolaritonSpinCouplings polariton_spin_couplings(double lambda, double theta,
                                                double Delta_c, double omega_minus,
                                                double omega_plus);

// Bogoliubov coefficients of the cavity mode in the polariton basis:
// a = u- a- + v- a-^dag + u+ a+ + v+ a+^dag, (u-^2 - v-^2) + (u+^2 - v+^2) = 1.
struct CavityDecomposition {
    double u_minus = 0.0;
    double v_minus = 0.0;
    double u_plus = 0.0;
    double v_plus = 0.0;
};
CavityDecomposition cavity_in_polariton_basis(double theta, double Delta_c,
                                              double omega_minus, double omega_plus);

// g_eff = -g_r^2 / Delta_nv, omega_eff = Delta_nv + 2 g_eff n_minus + g_eff.
struct EffectiveSpinSpin {
    double g_eff = 0.0;
    double omega_eff = 0.0;
};
EffectiveSpinSpin effective_spin_spin(double g_r, double Delta_nv, double n_minus);

// Independent oracle for the polariton frequencies: eigenvalues of the 4x4
// dynamical matrix of the quadratic cavity-magnon Hamiltonian. Frequencies
// come back sorted ascending; stable is false when eigenvalues leave the
// real axis (G > G_c).
struct BogoliubovSpectrum {
    double omega_minus = 0.0;
    double omega_plus = 0.0;
    bool stable = true;
};
BogoliubovSpectrum bogoliubov_spectrum(double Delta_c, double Delta_s, double G);

// ---- full chain ----

// Runs the whole reduction at the given operating point. n_minus is the
// lower-polariton occupation entering omega_eff (0 for vacuum).
DerivedScales derive_scales(const PhysicalParams& p, double n_minus = 0.0);

// --- default-parameter helpers (values carrying the device anchors) ---

// K_an magnitude calibrated so |K| = 2pi x 128 Hz at R = 50 nm with the
// default M_s; returned negative (K < 0, K_s < 0 squeezing branch).
double default_anisotropy_constant(double g_e, double M_s);

// B_0 such that gamma B_0 = 2pi x 2 GHz.
double default_bias_field(double g_e);

// The nominal operating point used by the scenarios and the CLI defaults.
PhysicalParams nominal_params();

}  // namespace cmpol
