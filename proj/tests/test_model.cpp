#include <cmath>
#include <random>

#include "doctest.h"

#include "cmpol/constants.hpp"
#include "cmpol/errors.hpp"
#include "cmpol/hamiltonians.hpp"
#include "cmpol/scales.hpp"
#include "helpers.hpp"

using namespace cmpol;
using constants::two_pi;
using test_util::rel_err;

TEST_SUITE("model") {

TEST_CASE("spin frequency subtracts the Zeeman shift") {
    const double D = two_pi * 2.87e9;
    CHECK(spin_frequency(D, 0.0, 1.0) == D);
    CHECK(spin_frequency(D, 2.0, 0.0) == D);
    const double B_ex = two_pi * 1.91e9 * constants::hbar / (2.0 * constants::mu_bohr);
    CHECK(rel_err(spin_frequency(D, 2.0, B_ex), two_pi * 0.96e9) < 1e-12);
    // fields beyond the zero crossing are unphysical for this model
    CHECK_THROWS_AS(spin_frequency(D, 2.0, 10.0 * B_ex), RegimeError);
}

TEST_CASE("kerr coefficient anchor and volume scaling") {
    const double g_e = 2.0;
    const double M_s = 1.94e5;
    const double K_an = default_anisotropy_constant(g_e, M_s);
    CHECK(K_an < 0.0);
    const double K50 = kerr_coefficient(K_an, g_e, M_s, 50e-9);
    CHECK(rel_err(K50, -two_pi * 128.0) < 1e-12);
    // pure 1/R^3: anchor scaled to a half-millimetre sphere
    const double Kmm = kerr_coefficient(K_an, g_e, M_s, 0.5e-3);
    CHECK(rel_err(Kmm / K50, std::pow(50e-9 / 0.5e-3, 3)) < 1e-12);
    CHECK(rel_err(std::abs(Kmm) / two_pi, 1.28e-10) < 1e-12);
    CHECK(rel_err(kerr_coefficient(K_an, g_e, M_s, 100e-9), K50 / 8.0) < 1e-12);
    CHECK_THROWS_AS(kerr_coefficient(K_an, g_e, M_s, 0.0), RegimeError);
    CHECK_THROWS_AS(kerr_coefficient(K_an, g_e, 0.0, 50e-9), RegimeError);
}

TEST_CASE("magnon frequency combines bias and anisotropy") {
    const double g_e = 2.0;
    const double B_0 = default_bias_field(g_e);
    CHECK(rel_err(constants::gyromagnetic_ratio(g_e) * B_0, two_pi * 2e9) < 1e-12);
    CHECK(rel_err(magnon_frequency(B_0, g_e, 0.0, 1e6), two_pi * 2e9) < 1e-12);
    CHECK(rel_err(magnon_frequency(B_0, g_e, two_pi * 128.0, 0.5), two_pi * 2e9) <
          1e-12);
    // (2s-1)K with s = 1e6, K = 2pi x 128 Hz removes 255 999 872 Hz
    CHECK(rel_err(magnon_frequency(B_0, g_e, two_pi * 128.0, 1e6),
                  two_pi * 1744000128.0) < 1e-12);
    // the negative-K default raises the frequency instead
    CHECK(rel_err(magnon_frequency(B_0, g_e, -two_pi * 128.0, 1e6),
                  two_pi * 2255999872.0) < 1e-12);
    CHECK_THROWS_AS(magnon_frequency(B_0, g_e, two_pi * 128.0, 1e12), RegimeError);
}

TEST_CASE("spin-cavity coupling follows the wire field") {
    const double omega_c = two_pi * 2e9;
    const double L_a = 2e-9;
    const double l50 = spin_cavity_coupling(omega_c, L_a, 50e-9, 2.0);
    // frozen from an independent evaluation of sqrt(hbar w/2L) mu0/(2 pi d)
    CHECK(rel_err(l50 / two_pi, 4076.097220687012) < 1e-12);
    const double l5um = spin_cavity_coupling(omega_c, L_a, 5e-6, 2.0);
    CHECK(rel_err(l5um * 5e-6, l50 * 50e-9) < 1e-12);  // lambda ~ 1/d
    CHECK(rel_err(spin_cavity_coupling(4.0 * omega_c, L_a, 50e-9, 2.0), 2.0 * l50) <
          1e-12);  // lambda ~ sqrt(omega_c)
    CHECK_THROWS_AS(spin_cavity_coupling(omega_c, L_a, 0.0, 2.0), RegimeError);
    CHECK_THROWS_AS(spin_cavity_coupling(omega_c, 0.0, 50e-9, 2.0), RegimeError);
}

TEST_CASE("magnon-cavity coupling is a calibrated power law") {
    const CouplingCalibration cal{two_pi * 0.2e6, 50e-9, 1.0};
    CHECK(magnon_cavity_coupling(50e-9, cal) == cal.g_ref);
    CHECK(rel_err(magnon_cavity_coupling(100e-9, cal), two_pi * 0.4e6) < 1e-12);
    CouplingCalibration steep = cal;
    steep.p = 1.5;
    CHECK(rel_err(magnon_cavity_coupling(200e-9, steep), 8.0 * cal.g_ref) < 1e-12);
    CHECK_THROWS_AS(magnon_cavity_coupling(0.0, cal), RegimeError);
}

TEST_CASE("steady-state magnon roots solve the cubic with tagged stability") {
    SUBCASE("undriven oscillator sits at the origin") {
        const auto roots = steady_state_magnon(-3.0, 1.0, 0.2, 0.0);
        REQUIRE(roots.size() == 1);
        CHECK(roots[0].n == 0.0);
        CHECK(roots[0].stable);
    }
    SUBCASE("linear response at zero Kerr") {
        const auto roots = steady_state_magnon(2.0, 0.0, 0.5, 1.5);
        REQUIRE(roots.size() == 1);
        CHECK(rel_err(roots[0].n, 1.5 * 1.5 / (4.0 + 0.0625)) < 1e-12);
        CHECK_THROWS_AS(steady_state_magnon(0.0, 0.0, 0.0, 1.0), RegimeError);
    }
    SUBCASE("bistable example has three tagged roots") {
        const auto roots = steady_state_magnon(-3.0, 1.0, 0.2, 1.0);
        REQUIRE(roots.size() == 3);
        const double expected[3] = {0.1337517626232193, 1.0033445316542748,
                                    1.8629037057225046};
        const bool stab[3] = {true, false, true};
        for (int i = 0; i < 3; ++i) {
            CHECK(rel_err(roots[static_cast<std::size_t>(i)].n, expected[i]) < 1e-10);
            CHECK(roots[static_cast<std::size_t>(i)].stable == stab[i]);
            const double det = -3.0 + 2.0 * roots[static_cast<std::size_t>(i)].n;
            const double residual =
                roots[static_cast<std::size_t>(i)].n * (det * det + 0.01) - 1.0;
            CHECK(std::abs(residual) < 1e-10);
        }
        // dense scan agrees on the bracketing intervals
        int crossings = 0;
        auto f = [](double n) { return n * ((-3.0 + 2.0 * n) * (-3.0 + 2.0 * n) + 0.01) - 1.0; };
        for (double n = 0.0; n < 5.0; n += 1e-4)
            if (f(n) * f(n + 1e-4) < 0.0) ++crossings;
        CHECK(crossings == 3);
    }
    SUBCASE("random draws back-substitute below 1e-10") {
        std::mt19937 rng(53001);
        std::uniform_real_distribution<double> delta(-5.0, 5.0);
        std::uniform_real_distribution<double> kerr(-2.0, 2.0);
        std::uniform_real_distribution<double> kap(0.01, 1.0);
        std::uniform_real_distribution<double> drive(0.0, 3.0);
        for (int i = 0; i < 500; ++i) {
            const double d = delta(rng), K = kerr(rng), k = kap(rng), W = drive(rng);
            for (const auto& root : steady_state_magnon(d, K, k, W)) {
                const double det = d + 2.0 * K * root.n;
                const double residual =
                    root.n * (det * det + 0.25 * k * k) - W * W;
                CHECK(std::abs(residual) < 1e-10 * std::max(1.0, W * W));
                CHECK(root.n >= 0.0);
            }
        }
    }
}

TEST_CASE("two-magnon parameters fix the phase so K_s is real") {
    const auto zero = two_magnon_params(1.5, -0.5, 0.0);
    CHECK(zero.Delta_m == 1.5);
    CHECK(zero.K_s == 0.0);
    const auto ex = two_magnon_params(1.0, -0.5, 2.0);
    CHECK(rel_err(ex.Delta_m, -7.0) < 1e-14);
    CHECK(rel_err(ex.K_s, -2.0) < 1e-14);
    // phase of <m> is absorbed into the drive reference: only |<m>| matters
    const auto rot = two_magnon_params(1.0, -0.5, std::complex<double>(0.0, 2.0));
    CHECK(rot.Delta_m == ex.Delta_m);
    CHECK(rot.K_s == ex.K_s);
    CHECK(two_magnon_params(1.0, -0.25, 1.0).K_s < 0.0);
    CHECK(two_magnon_params(1.0, 0.25, 1.0).K_s > 0.0);
}

TEST_CASE("squeezing parameter matches the quarter-log form") {
    CHECK(squeezing_parameter(3.7, 0.0) == 0.0);
    CHECK(rel_err(squeezing_parameter(5.0, -2.0), 0.5493061443340549) < 1e-14);
    CHECK_THROWS_AS(squeezing_parameter(1.0, 0.5), SqueezingError);
    CHECK_THROWS_AS(squeezing_parameter(1.0, -0.5), SqueezingError);
    CHECK_THROWS_AS(squeezing_parameter(1.0, 2.0), SqueezingError);
}

TEST_CASE("squeezed frequency and the hyperbolic identity") {
    CHECK(squeezed_frequency(5.0, -2.0) == doctest::Approx(3.0).epsilon(1e-14));
    CHECK(squeezed_frequency(-4.0, 0.0) == 4.0);
    CHECK_THROWS_AS(squeezed_frequency(1.0, 0.5), SqueezingError);
    std::mt19937 rng(53002);
    std::uniform_real_distribution<double> dm(0.5, 10.0);
    std::uniform_real_distribution<double> frac(-0.49, 0.49);
    for (int i = 0; i < 500; ++i) {
        const double Delta_m = dm(rng);
        const double K_s = frac(rng) * Delta_m;
        const double Delta_s = squeezed_frequency(Delta_m, K_s);
        CHECK(rel_err(Delta_s * Delta_s + 4.0 * K_s * K_s, Delta_m * Delta_m) < 1e-12);
        // sign convention: Delta_s cosh(2r) = Delta_m, Delta_s sinh(2r) = -2 K_s
        const double r = squeezing_parameter(Delta_m, K_s);
        CHECK(rel_err(Delta_s * std::cosh(2.0 * r), Delta_m) < 1e-10);
        CHECK(std::abs(Delta_s * std::sinh(2.0 * r) + 2.0 * K_s) <
              1e-10 * Delta_m);
        if (K_s < 0.0) CHECK(r > 0.0);
    }
}

TEST_CASE("enhanced coupling grows exponentially with squeezing") {
    const double g_m = two_pi * 0.2e6;
    CHECK(enhanced_coupling(g_m, 0.0) == 0.5 * g_m);
    CHECK(rel_err(enhanced_coupling(g_m, 3.0) / two_pi, 2008553.6923187668) < 1e-12);
    CHECK(rel_err(enhanced_coupling(g_m, 5.0) / two_pi, 14841315.91025766) < 1e-12);
    CHECK_THROWS_AS(enhanced_coupling(0.0, 1.0), RegimeError);
}

TEST_CASE("polariton frequencies: limits, frozen point, exact critical zero") {
    SUBCASE("decoupled limit returns the bare detunings") {
        const auto w = polariton_frequencies(2.0, 1.0, 0.0);
        CHECK(rel_err(w.omega_plus, 2.0) < 1e-14);
        CHECK(rel_err(w.omega_minus_sq, 1.0) < 1e-14);
        const auto flipped = polariton_frequencies(1.0, 2.0, 0.0);
        CHECK(rel_err(flipped.omega_plus, 2.0) < 1e-14);
        CHECK(rel_err(flipped.omega_minus_sq, 1.0) < 1e-14);
    }
    SUBCASE("frozen interior point") {
        const auto w = polariton_frequencies(2.0, 1.0, 0.5);
        CHECK(rel_err(w.omega_plus * w.omega_plus, 4.561552812808831) < 1e-14);
        CHECK(rel_err(w.omega_minus_sq, 0.4384471871911697) < 1e-13);
        CHECK(w.stable());
    }
    SUBCASE("the critical zero survives at roundoff level") {
        // the product form leaves only the rounding of G_c^2 back to
        // Delta_c Delta_s / 4, a few ulp of the frequency scale
        std::mt19937 rng(53003);
        std::uniform_real_distribution<double> u(0.1, 10.0);
        for (int i = 0; i < 500; ++i) {
            const double Dc = u(rng), Ds = u(rng);
            const auto w = polariton_frequencies(Dc, Ds, critical_coupling(Dc, Ds));
            CHECK(std::abs(w.omega_minus_sq) < 1e-14 * (Dc * Dc + Ds * Ds));
        }
    }
    SUBCASE("beyond critical the squared branch goes negative") {
        const auto w = polariton_frequencies(2.0, 1.0, 0.9);
        CHECK(w.omega_minus_sq < 0.0);
        CHECK_FALSE(w.stable());
    }
    CHECK_THROWS_AS(polariton_frequencies(-1.0, 1.0, 0.1), RegimeError);
    CHECK_THROWS_AS(polariton_frequencies(1.0, 1.0, -0.1), RegimeError);
}

TEST_CASE("critical coupling closed form") {
    CHECK(critical_coupling(1.0, 1.0) == 0.5);
    CHECK(rel_err(critical_coupling(2.0, 1.0), 0.7071067811865476) < 1e-15);
    CHECK_THROWS_AS(critical_coupling(-2.0, 1.0), RegimeError);
}

TEST_CASE("mixing angle: principal branch and limits") {
    CHECK(mixing_angle(2.0, 1.0, 0.0) == 0.0);
    CHECK(rel_err(mixing_angle(2.0, 1.0, 0.5), 0.3779847052119539) < 1e-14);
    CHECK_THROWS_AS(mixing_angle(1.0, 1.0, 0.1), DegeneracyError);
    const double far = mixing_angle(100.0, 1.0, 0.5);
    const double near = mixing_angle(10.0, 1.0, 0.5);
    CHECK(far < near);
    CHECK(far < 1.1e-3);
    CHECK(std::abs(mixing_angle(2.0, 1.0, 0.5)) < constants::pi / 4.0);
}

TEST_CASE("polariton-spin couplings: limits and the dispersive enhancement") {
    SUBCASE("zero mixing decouples the upper branch") {
        const auto g = polariton_spin_couplings(1.0, 0.0, 2.0, 0.5, 3.0);
        CHECK(g.g_r_prime == 0.0);
        CHECK(g.g_cr_prime == 0.0);
        CHECK(g.g_r > 0.0);
    }
    SUBCASE("resonant limit collapses the counter-rotating part") {
        const double theta = 0.2;
        const auto g = polariton_spin_couplings(1.0, theta, 2.0, 2.0, 3.0);
        CHECK(rel_err(g.g_r, std::cos(theta)) < 1e-14);
        CHECK(std::abs(g.g_cr) < 1e-14);
    }
    SUBCASE("frequency-ratio enhancement reaches the quoted megahertz scale") {
        const double lambda = two_pi * 7e3;
        const double omega_minus = two_pi * 2e3;
        const double Delta_c = 1e6 * omega_minus;
        const auto g =
            polariton_spin_couplings(lambda, 0.0, Delta_c, omega_minus, 2.0 * Delta_c);
        CHECK(rel_err(g.g_r / two_pi, 3.5e6) < 0.01);
        // exact formula value: (1e6 + 1)/2000 times lambda
        CHECK(rel_err(g.g_r, lambda * (1e6 + 1.0) / 2000.0) < 1e-12);
        CHECK(rel_err(g.g_cr, lambda * (1e6 - 1.0) / 2000.0) < 1e-12);
    }
    CHECK_THROWS_AS(polariton_spin_couplings(1.0, 0.1, 2.0, -0.5, 3.0),
                    InstabilityError);
    CHECK_THROWS_AS(polariton_spin_couplings(1.0, 0.1, 0.0, 0.5, 3.0), RegimeError);
}

TEST_CASE("effective spin-spin coupling and Lamb-shifted frequency") {
    const double g_r = two_pi * 3.5e6;
    const double Delta_nv = two_pi * 960e6;
    const auto eff = effective_spin_spin(g_r, Delta_nv, 0.0);
    CHECK(rel_err(eff.g_eff / two_pi, -12760.416666666666) < 1e-12);
    CHECK(rel_err(eff.omega_eff, Delta_nv + eff.g_eff) < 1e-12);
    const auto occupied = effective_spin_spin(g_r, Delta_nv, 2.0);
    CHECK(rel_err(occupied.omega_eff, Delta_nv + 5.0 * eff.g_eff) < 1e-12);
    CHECK(effective_spin_spin(0.0, Delta_nv, 0.0).g_eff == 0.0);
    CHECK(effective_spin_spin(0.0, Delta_nv, 0.0).omega_eff == Delta_nv);
    CHECK_THROWS_AS(effective_spin_spin(g_r, 0.0, 0.0), RegimeError);
}

TEST_CASE("cavity decomposition satisfies the symplectic identity") {
    const auto trivial = cavity_in_polariton_basis(0.0, 2.0, 2.0, 3.0);
    CHECK(rel_err(trivial.u_minus, 1.0) < 1e-14);
    CHECK(std::abs(trivial.v_minus) < 1e-14);
    CHECK(trivial.u_plus == 0.0);
    CHECK(trivial.v_plus == 0.0);

    std::mt19937 rng(53004);
    std::uniform_real_distribution<double> u(0.1, 10.0);
    std::uniform_real_distribution<double> gfrac(0.0, 0.99);
    int checked = 0;
    while (checked < 500) {
        const double Dc = u(rng), Ds = u(rng);
        if (std::abs(Dc - Ds) < 1e-3) continue;
        const double G = gfrac(rng) * critical_coupling(Dc, Ds);
        const auto w = polariton_frequencies(Dc, Ds, G);
        const double wm = std::sqrt(w.omega_minus_sq);
        const auto c =
            cavity_in_polariton_basis(mixing_angle(Dc, Ds, G), Dc, wm, w.omega_plus);
        const double sympl = (c.u_minus * c.u_minus - c.v_minus * c.v_minus) +
                             (c.u_plus * c.u_plus - c.v_plus * c.v_plus);
        CHECK(std::abs(sympl - 1.0) < 1e-12);
        ++checked;
    }
}

TEST_CASE("hopfield oracle agrees with the closed form") {
    SUBCASE("decoupled and frozen points") {
        const auto bare = bogoliubov_spectrum(2.0, 1.0, 0.0);
        CHECK(rel_err(bare.omega_minus, 1.0) < 1e-12);
        CHECK(rel_err(bare.omega_plus, 2.0) < 1e-12);
        CHECK(bare.stable);
        const auto mid = bogoliubov_spectrum(2.0, 1.0, 0.5);
        CHECK(rel_err(mid.omega_minus, 0.6621534468619564) < 1e-10);
        CHECK(rel_err(mid.omega_plus, 2.135779205069857) < 1e-10);
        CHECK_FALSE(bogoliubov_spectrum(2.0, 1.0, 0.9).stable);
    }
    SUBCASE("randomized agreement to 1e-10 relative") {
        std::mt19937 rng(53005);
        std::uniform_real_distribution<double> u(0.1, 10.0);
        std::uniform_real_distribution<double> gfrac(0.0, 0.99);
        for (int i = 0; i < 1000; ++i) {
            const double Dc = u(rng), Ds = u(rng);
            const double G = gfrac(rng) * critical_coupling(Dc, Ds);
            const auto w = polariton_frequencies(Dc, Ds, G);
            const auto oracle = bogoliubov_spectrum(Dc, Ds, G);
            REQUIRE(oracle.stable);
            CHECK(rel_err(oracle.omega_plus, w.omega_plus) < 1e-10);
            CHECK(std::abs(oracle.omega_minus - std::sqrt(w.omega_minus_sq)) <
                  1e-10 * w.omega_plus);
        }
    }
}

TEST_CASE("branch monotonicity in the coupling") {
    const double Dc = 2.0, Ds = 1.0;
    const double Gc = critical_coupling(Dc, Ds);
    double prev_plus = 0.0, prev_minus = 1e300;
    for (int i = 0; i <= 50; ++i) {
        const double G = 0.99 * Gc * i / 50.0;
        const auto w = polariton_frequencies(Dc, Ds, G);
        const double wp2 = w.omega_plus * w.omega_plus;
        if (i > 0) {
            CHECK(wp2 > prev_plus);
            CHECK(w.omega_minus_sq < prev_minus);
        }
        prev_plus = wp2;
        prev_minus = w.omega_minus_sq;
    }
}

TEST_CASE("effective coupling matches the Tavis-Cummings splitting") {
    // dispersive point: |Delta_nv - omega_minus| = 100 g_r
    const double omega_minus = 1.0, g_r = 1.0, Delta_nv = 101.0;
    const int dim = 8;
    const SpaceDescriptor space({2, 2, dim});
    const Operator h = build_h_tc(space, Delta_nv, omega_minus, g_r);
    // one-excitation block spanned by |e g 0>, |g e 0>, |g g 1>
    const int idx[3] = {0 * 2 * dim + 1 * dim + 0, 1 * 2 * dim + 0 * dim + 0,
                        1 * 2 * dim + 1 * dim + 1};
    Matrix block(3, 3);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) block(i, j) = h.mat(idx[i], idx[j]);
    Eigen::SelfAdjointEigenSolver<Matrix> es(block, Eigen::EigenvaluesOnly);
    // lowest eigenvalue is photon-like; the upper two are the dressed spin pair
    const double splitting = es.eigenvalues()(2) - es.eigenvalues()(1);
    const double g_eff = effective_spin_spin(g_r, Delta_nv, 0.0).g_eff;
    CHECK(rel_err(0.5 * splitting, std::abs(g_eff)) < 0.05);
}

TEST_CASE("full chain at the nominal operating point") {
    const PhysicalParams p = nominal_params();
    const DerivedScales s = derive_scales(p);
    CHECK(rel_err(s.omega_nv / two_pi, 0.96e9) < 1e-12);
    CHECK(rel_err(s.omega_m / two_pi, 2255999872.0) < 1e-12);
    CHECK(rel_err(s.K / two_pi, -128.0) < 1e-12);
    CHECK(rel_err(s.g_m / two_pi, 0.2e6) < 1e-12);
    CHECK(rel_err(s.lambda / two_pi, 4076.097220687012) < 1e-12);
    CHECK(std::abs(s.r_m - 3.0) < 1e-9);
    CHECK(rel_err(std::norm(s.mean_m), 2937487.800893515) < 1e-9);
    CHECK(rel_err(s.Delta_m / two_pi, 752006117.9425207) < 1e-9);
    CHECK(rel_err(s.Delta_s / two_pi, 3728050.6974889752) < 1e-9);
    CHECK(rel_err(s.G / two_pi, 2008553.692320358) < 1e-9);
    CHECK(rel_err(s.G_c / two_pi, 43174359.85332599) < 1e-9);
    CHECK(s.lp_stable);
    CHECK(rel_err(s.omega_minus / two_pi, 3724014.2103459523) < 1e-9);
    CHECK(rel_err(s.omega_plus / two_pi, 2000000007.520041) < 1e-9);
    CHECK(rel_err(s.theta, 8.67183203381174e-05) < 1e-6);
    CHECK(rel_err(s.g_r / two_pi, 47318.588062054914) < 1e-8);
    CHECK(rel_err(s.g_eff / two_pi, -2.3323424751942143) < 1e-8);
    CHECK(s.Omega_d_implied > 0.0);
}

TEST_CASE("mean-field modes agree where they overlap") {
    const PhysicalParams base = nominal_params();
    const DerivedScales target = derive_scales(base);

    PhysicalParams given = base;
    given.mode = MeanFieldMode::mean_given;
    given.mean_m = target.mean_m;
    const DerivedScales replay = derive_scales(given);
    CHECK(rel_err(replay.Delta_m, target.Delta_m) < 1e-12);
    CHECK(rel_err(replay.K_s, target.K_s) < 1e-12);
    CHECK(rel_err(replay.G, target.G) < 1e-12);

    PhysicalParams quiet = base;
    quiet.r_m_target = 0.0;
    const DerivedScales bare = derive_scales(quiet);
    CHECK(bare.r_m == 0.0);
    CHECK(std::abs(bare.mean_m) == 0.0);
    CHECK(rel_err(bare.G, 0.5 * bare.g_m) < 1e-12);

    PhysicalParams flipped = base;
    flipped.K_an = -flipped.K_an;  // positive Kerr cannot reach r_m > 0 here
    CHECK_THROWS_AS(derive_scales(flipped), RegimeError);
}

TEST_CASE("steady-state mode selects the largest stable root") {
    PhysicalParams p = nominal_params();
    p.mode = MeanFieldMode::steady_state;

    SUBCASE("weak drive: single root, linear response") {
        p.Omega_d = two_pi * 1e7;
        const DerivedScales s = derive_scales(p);
        const auto roots =
            steady_state_magnon(s.delta_m, s.K, p.kappa_m, p.Omega_d);
        REQUIRE(roots.size() == 1);
        CHECK(roots[0].stable);
        CHECK(rel_err(std::norm(s.mean_m), roots[0].n) < 1e-12);
        const double linear = p.Omega_d * p.Omega_d /
                              (s.delta_m * s.delta_m +
                               0.25 * p.kappa_m * p.kappa_m);
        CHECK(rel_err(std::norm(s.mean_m), linear) < 1e-6);
        CHECK(rel_err(s.Omega_d_implied, p.Omega_d) < 1e-9);
    }
    SUBCASE("bistable drive: the higher stable branch wins") {
        // a drive deep inside the bistable window (the folds sit near
        // 2pi x 1.5e9 and 2pi x 2.6e12 for the nominal magnon) gives three
        // well-separated roots, and selection must take the top one
        p.Omega_d = two_pi * 1e11;
        const DerivedScales s = derive_scales(p);
        const auto roots =
            steady_state_magnon(s.delta_m, s.K, p.kappa_m, p.Omega_d);
        REQUIRE(roots.size() == 3);
        CHECK(roots[0].stable);
        CHECK_FALSE(roots[1].stable);
        CHECK(roots[2].stable);
        CHECK(rel_err(std::norm(s.mean_m), roots[2].n) < 1e-12);
        CHECK(roots[2].n > 100.0 * roots[0].n);
        CHECK(rel_err(s.Omega_d_implied, p.Omega_d) < 1e-9);
    }
}

}  // TEST_SUITE
