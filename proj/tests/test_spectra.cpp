#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>

#include "oracles.hpp"
#include "rezqu/errors.hpp"
#include "rezqu/hamiltonian.hpp"
#include "rezqu/spectra.hpp"

using namespace rezqu;

namespace {

DeviceParams standard_device() {
    return DeviceParams{7.0, 6.0, 0.2, 0.025, 0.025, false};
}

} // namespace

TEST_CASE("decoupled limit: eigenvalues equal bare energies, labels identity") {
    DeviceParams dp = standard_device();
    dp.g_m_ghz = 1e-12;
    dp.g_b_ghz = 1e-12;
    const Basis basis(2);
    for (int n : {1, 2}) {
        const EigenSystem es = diagonalize_block(dp, angular(6.43), n);
        const Eigen::MatrixXcd h = assemble_block(dp, angular(6.43), n);
        for (int k = 0; k < basis.block_dim(n); ++k) {
            const BasisLabel l = basis.block_label(n, k);
            CHECK(es.energy_of(basis, l) ==
                  doctest::Approx(h(k, k).real()).epsilon(1e-12));
            CHECK(es.overlaps[k] > 1.0 - 1e-12);
        }
    }
}

TEST_CASE("single-excitation energies at the standard operating point") {
    const DeviceParams dp = standard_device();
    const Basis basis(2);
    const double wq = angular(6.5);
    const EigenSystem es = diagonalize_block(dp, wq, 1);

    // cross-check against a characteristic-polynomial bisection oracle
    Eigen::Matrix3d h3 = assemble_block(dp, wq, 1).real();
    const auto roots = oracle::symmetric3_eigenvalues(h3);
    REQUIRE(roots.size() == 3);
    for (int k = 0; k < 3; ++k)
        CHECK(es.eigenvalues(k) == doctest::Approx(roots[k]).epsilon(1e-10));

    // dressed memory level sits one avoided-crossing shift above f_m
    const double eps100 = linear(es.energy_of(basis, {1, 0, 0}));
    CHECK(eps100 == doctest::Approx(7.0012484).epsilon(3e-7));
    // first-order estimate g^2/Delta = 0.025^2/0.5
    CHECK(eps100 - 7.0 == doctest::Approx(0.00125).epsilon(5e-3));
    const double eps001 = linear(es.energy_of(basis, {0, 0, 1}));
    CHECK(eps001 == doctest::Approx(5.9987516).epsilon(3e-7));
}

TEST_CASE("eigen residual and unit norm across random parameter draws") {
    oracle::Rng rng(42);
    const Basis basis(2);
    for (int draw = 0; draw < 20; ++draw) {
        DeviceParams dp;
        dp.f_m_ghz = rng.uniform(6.8, 7.3);
        dp.f_b_ghz = rng.uniform(5.7, 6.2);
        dp.eta_ghz = rng.uniform(0.1, 0.3);
        dp.g_m_ghz = rng.uniform(0.01, 0.05);
        dp.g_b_ghz = rng.uniform(0.01, 0.05);
        const double wq = angular(rng.uniform(6.25, 6.55));
        for (int n : {1, 2}) {
            const Eigen::MatrixXcd h = assemble_block(dp, wq, n);
            const EigenSystem es = diagonalize_block(h, n, LabelPolicy::Lenient);
            const double hnorm = h.norm();
            for (int c = 0; c < h.rows(); ++c) {
                CHECK(std::abs(es.eigenvectors.col(c).norm() - 1.0) < 1e-12);
                CHECK((h * es.eigenvectors.col(c) -
                       es.eigenvalues(c) * es.eigenvectors.col(c))
                          .norm() < 1e-10 * hnorm);
            }
            // phase convention: largest component real positive
            for (int c = 0; c < h.rows(); ++c) {
                Eigen::Index imax;
                es.eigenvectors.col(c).cwiseAbs().maxCoeff(&imax);
                CHECK(es.eigenvectors(imax, c).imag() == doctest::Approx(0.0));
                CHECK(es.eigenvectors(imax, c).real() > 0.0);
            }
        }
    }
}

TEST_CASE("labeling fails across the memory resonance region") {
    // the bus dressing shifts the degeneracy slightly off f_q = f_m, so probe
    // a small band around it
    const DeviceParams dp = standard_device();
    bool threw = false;
    double min_overlap = 1.0;
    for (int k = 0; k <= 40; ++k) {
        const double fq = 6.998 + 0.004 * k / 40.0;
        try {
            diagonalize_block(dp, angular(fq), 1);
        } catch (const LabelingError&) {
            threw = true;
        }
        const EigenSystem es =
            diagonalize_block(dp, angular(fq), 1, LabelPolicy::Lenient);
        min_overlap = std::min(min_overlap, es.overlaps[2]);
    }
    CHECK(threw);
    CHECK(min_overlap < 0.51);
}

TEST_CASE("lenient labeling keeps usable states near a two-excitation crossing") {
    DeviceParams dp = standard_device();
    dp.g_m_ghz = dp.g_b_ghz = 0.05;
    const Basis basis(2);
    // |011> and |020> cross around f_q = f_b + eta = 6.2
    bool found_ambiguous = false;
    for (int k = 0; k <= 40; ++k) {
        const double fq = 6.18 + 0.04 * k / 40.0;
        const EigenSystem es =
            diagonalize_block(dp, angular(fq), 2, LabelPolicy::Lenient);
        CHECK_NOTHROW(es.energy_of(basis, {1, 0, 1}));
        if (!es.fully_labeled()) {
            found_ambiguous = true;
            CHECK_THROWS_AS(es.index_of(basis, {0, 1, 1}), LabelingError);
            CHECK_THROWS_AS(
                diagonalize_block(dp, angular(fq), 2, LabelPolicy::Strict),
                LabelingError);
            break;
        }
    }
    CHECK(found_ambiguous);
}

TEST_CASE("fourth-order single-excitation series") {
    const DeviceParams dp = standard_device();

    SUBCASE("decoupled limit returns bare frequencies") {
        DeviceParams tiny = dp;
        tiny.g_m_ghz = 1e-12;
        tiny.g_b_ghz = 1e-12;
        const auto s = single_excitation_energies_4th(tiny, angular(6.5));
        CHECK(linear(s.eps_100) == doctest::Approx(7.0).epsilon(1e-12));
        CHECK(linear(s.eps_001) == doctest::Approx(6.0).epsilon(1e-12));
    }

    SUBCASE("standard point value") {
        const auto s = single_excitation_energies_4th(dp, angular(6.5));
        CHECK(linear(s.eps_100) == doctest::Approx(7.0012484).epsilon(2e-7));
        CHECK_FALSE(s.near_degenerate);
    }

    SUBCASE("residual against exact diagonalization scales as g^6") {
        const Basis basis(2);
        const auto residual = [&](double scale) {
            DeviceParams d = dp;
            d.g_m_ghz *= scale;
            d.g_b_ghz *= scale;
            const auto s = single_excitation_energies_4th(d, angular(6.5));
            const EigenSystem es = diagonalize_block(d, angular(6.5), 1);
            return std::abs(es.energy_of(basis, {1, 0, 0}) - s.eps_100) +
                   std::abs(es.energy_of(basis, {0, 0, 1}) - s.eps_001);
        };
        const double ratio = residual(1.0) / residual(0.5);
        CHECK(ratio > 40.0);
        CHECK(ratio < 90.0);
    }

    SUBCASE("zero detuning rejected, near-degeneracy flagged") {
        CHECK_THROWS_AS(single_excitation_energies_4th(dp, dp.omega_m()),
                        std::invalid_argument);
        const auto s = single_excitation_energies_4th(dp, angular(6.9)); // D_m = 4 g
        CHECK(s.near_degenerate);
    }
}

TEST_CASE("conditional shift: midpoint zero and off-midpoint value") {
    const DeviceParams dp = standard_device();

    const ZZReport mid = omega_zz(dp, angular(6.5));
    CHECK(mid.omega_zz_4th == 0.0); // numerator w_m + w_b - 2 w_q vanishes exactly

    const ZZReport z = omega_zz(dp, angular(6.7));
    CHECK(linear(z.omega_zz_4th) == doctest::Approx(-7.086168e-6).epsilon(1e-6));
    CHECK(linear(z.omega_zz_exact) == doctest::Approx(-6.93565e-6).epsilon(1e-4));
    CHECK(std::abs(z.omega_zz_4th - z.omega_zz_exact) <
          0.1 * std::abs(z.omega_zz_exact));
}

TEST_CASE("conditional shift vanishes with the anharmonicity") {
    DeviceParams dp = standard_device();
    const double base = std::abs(omega_zz(dp, angular(6.7)).omega_zz_exact);
    dp.eta_ghz = 1e-4;
    const ZZReport z = omega_zz(dp, angular(6.7));
    CHECK(std::abs(z.omega_zz_exact) < 1e-3 * base + 1e-12);
    CHECK(std::abs(z.omega_zz_4th) < 1e-3 * base);
    CHECK(std::abs(z.omega_zz_eta_pert) < 1e-3 * base);
}

TEST_CASE("second-order amplitudes: two printed forms agree") {
    const DeviceParams dp = standard_device();
    oracle::Rng rng(7);
    for (int k = 0; k < 10; ++k) {
        const double wq = angular(rng.uniform(6.15, 6.45));
        const auto a = second_order_amplitudes(dp, wq);
        const double d_m = dp.omega_m() - wq, d_b = wq - dp.omega_b();
        const double alt = std::sqrt(2.0) * dp.g_m() * dp.g_b() *
                           (1.0 / d_b - 1.0 / d_m) /
                           (2.0 * wq - dp.eta() - dp.omega_m() - dp.omega_b());
        CHECK(a.alpha_020 == doctest::Approx(alt).epsilon(1e-12));
    }
}

TEST_CASE("eta-perturbative value stays within the bracket set by the last fraction") {
    const DeviceParams dp = standard_device();
    for (double fq : {6.3, 6.42, 6.55, 6.68}) {
        const ZZReport z = omega_zz(dp, angular(fq));
        const double s = dp.omega_m() + dp.omega_b() - 2.0 * angular(fq);
        const double fraction = s / (s + dp.eta());
        const double lo = std::min(fraction, 1.0 / fraction) - 1e-9;
        const double hi = std::max(fraction, 1.0 / fraction) + 1e-9;
        const double ratio = z.omega_zz_eta_pert / z.omega_zz_4th;
        CHECK(ratio >= lo);
        CHECK(ratio <= hi);
    }
}

TEST_CASE("exact and fourth-order values agree in the perturbative window") {
    // deep-perturbative couplings, away from the crossing and the |020> pole
    oracle::Rng rng(11);
    for (int k = 0; k < 25; ++k) {
        DeviceParams dp = standard_device();
        dp.g_m_ghz = dp.g_b_ghz = rng.uniform(0.008, 0.02);
        double fq = rng.uniform(6.4, 6.59);
        if (std::abs(fq - 6.5) < 5.0 * dp.g_m_ghz * dp.g_m_ghz / 0.5) fq = 6.45;
        const ZZReport z = omega_zz(dp, angular(fq));
        if (std::abs(z.omega_zz_4th) < 1e-13) continue;
        const double rel = std::abs(z.omega_zz_4th - z.omega_zz_exact) /
                           std::abs(z.omega_zz_exact);
        CAPTURE(fq);
        CAPTURE(dp.g_m_ghz);
        CHECK(rel < 0.1);
        // signs agree where the formula dominates its own residual
        if (std::abs(z.omega_zz_4th) >
            10.0 * std::abs(z.omega_zz_4th - z.omega_zz_exact))
            CHECK(std::signbit(z.omega_zz_4th) == std::signbit(z.omega_zz_exact));
    }
}

TEST_CASE("exact zero crossing sits within g^2/Delta of the midpoint") {
    for (double g : {0.025, 0.05}) {
        DeviceParams dp = standard_device();
        dp.g_m_ghz = dp.g_b_ghz = g;
        double lo = 6.45, hi = 6.55;
        const double sign_lo =
            omega_zz(dp, angular(lo)).omega_zz_exact < 0.0 ? -1.0 : 1.0;
        for (int it = 0; it < 60; ++it) {
            const double mid = 0.5 * (lo + hi);
            const double v = omega_zz(dp, angular(mid)).omega_zz_exact;
            ((v * sign_lo > 0.0) ? lo : hi) = mid;
        }
        const double crossing = 0.5 * (lo + hi);
        CHECK(std::abs(crossing - 6.5) < g * g / 0.5);
    }
}

TEST_CASE("direct-coupling shifts cancel in the conditional frequency") {
    const DeviceParams dp = standard_device();
    const double wq = angular(6.7);
    const GdShift s = gd_shift_cancellation(dp, wq);

    const double g_d = direct_coupling(dp, wq);
    const double predicted = 2.0 * g_d * dp.g_m() * dp.g_b() /
                             ((dp.omega_m() - wq) * (wq - dp.omega_b()));
    CHECK(s.shift_single == doctest::Approx(predicted).epsilon(0.02));
    CHECK(s.shift_double == doctest::Approx(predicted).epsilon(0.02));

    const double dzz = s.shift_double - s.shift_single;
    const ZZReport z = omega_zz(dp, wq);
    CHECK(std::abs(dzz) < 0.01 * std::abs(z.omega_zz_exact));

    SUBCASE("shifts scale as the fourth power of the couplings") {
        DeviceParams doubled = dp;
        doubled.g_m_ghz *= 2.0;
        doubled.g_b_ghz *= 2.0;
        const GdShift s2 = gd_shift_cancellation(doubled, wq);
        CHECK(s2.shift_single / s.shift_single == doctest::Approx(16.0).epsilon(0.08));
        CHECK(s2.shift_double / s.shift_double == doctest::Approx(16.0).epsilon(0.08));
    }

    SUBCASE("shifts vanish with the couplings") {
        DeviceParams tiny = dp;
        tiny.g_m_ghz *= 1e-3;
        tiny.g_b_ghz *= 1e-3;
        const GdShift s0 = gd_shift_cancellation(tiny, wq);
        CHECK(std::abs(s0.shift_single) < 1e-11);
        CHECK(std::abs(s0.shift_double) < 1e-11);
    }
}
