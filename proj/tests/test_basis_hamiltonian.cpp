#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <complex>

#include "oracles.hpp"
#include "rezqu/basis.hpp"
#include "rezqu/hamiltonian.hpp"
#include "rezqu/units.hpp"

using namespace rezqu;

TEST_CASE("basis enumeration order and size") {
    const auto one = enumerate_basis(1);
    REQUIRE(one.size() == 4);
    CHECK(one[0] == BasisLabel{0, 0, 0});
    CHECK(one[1] == BasisLabel{0, 0, 1});
    CHECK(one[2] == BasisLabel{0, 1, 0});
    CHECK(one[3] == BasisLabel{1, 0, 0});

    const auto two = enumerate_basis(2);
    REQUIRE(two.size() == 10);
    // two-excitation block, lexicographic in (n_m, n_q, n_b)
    CHECK(two[4] == BasisLabel{0, 0, 2});
    CHECK(two[5] == BasisLabel{0, 1, 1});
    CHECK(two[6] == BasisLabel{0, 2, 0});
    CHECK(two[7] == BasisLabel{1, 0, 1});
    CHECK(two[8] == BasisLabel{1, 1, 0});
    CHECK(two[9] == BasisLabel{2, 0, 0});

    CHECK_THROWS_AS(enumerate_basis(0), std::invalid_argument);
    CHECK_THROWS_AS(enumerate_basis(3), std::invalid_argument);
}

TEST_CASE("basis block bookkeeping") {
    const Basis basis(2);
    CHECK(basis.block_offset(0) == 0);
    CHECK(basis.block_dim(0) == 1);
    CHECK(basis.block_offset(1) == 1);
    CHECK(basis.block_dim(1) == 3);
    CHECK(basis.block_offset(2) == 4);
    CHECK(basis.block_dim(2) == 6);
    CHECK(basis.index_of({1, 0, 1}) == 7);
    CHECK(basis.block_index_of({1, 0, 1}) == 3);
    CHECK(basis.index_of({2, 1, 0}) == -1);
}

namespace {

DeviceParams standard_device() {
    DeviceParams dp;
    dp.f_m_ghz = 7.0;
    dp.f_b_ghz = 6.0;
    dp.eta_ghz = 0.2;
    dp.g_m_ghz = 0.025;
    dp.g_b_ghz = 0.025;
    return dp;
}

} // namespace

TEST_CASE("decoupled hamiltonian is the bare diagonal") {
    DeviceParams dp = standard_device();
    dp.g_m_ghz = 1e-30;
    dp.g_b_ghz = 1e-30;
    const Basis basis(2);
    const Eigen::MatrixXcd h = assemble_hamiltonian(dp, angular(6.5), basis);
    for (int i = 0; i < basis.size(); ++i) {
        const BasisLabel l = basis.labels()[i];
        const double expected = l.n_m * dp.omega_m() + l.n_b * dp.omega_b() +
                                (l.n_q == 0 ? 0.0
                                 : l.n_q == 1
                                     ? angular(6.5)
                                     : 2.0 * angular(6.5) - dp.eta());
        CHECK(h(i, i).real() == doctest::Approx(expected).epsilon(1e-14));
        for (int j = 0; j < basis.size(); ++j)
            if (i != j) CHECK(std::abs(h(i, j)) < 1e-20);
    }
}

TEST_CASE("single-excitation block coupling structure") {
    const DeviceParams dp = standard_device();
    const Eigen::MatrixXcd h = assemble_block(dp, angular(6.5), 1);
    // order: (0,0,1), (0,1,0), (1,0,0)
    const double g = angular(0.025);
    CHECK(h(0, 1).real() == doctest::Approx(g).epsilon(1e-14));
    CHECK(h(1, 2).real() == doctest::Approx(g).epsilon(1e-14));
    CHECK(std::abs(h(0, 2)) == doctest::Approx(0.0)); // no direct element
    CHECK(h(0, 0).real() == doctest::Approx(dp.omega_b()).epsilon(1e-15));
    CHECK(h(1, 1).real() == doctest::Approx(angular(6.5)).epsilon(1e-15));
    CHECK(h(2, 2).real() == doctest::Approx(dp.omega_m()).epsilon(1e-15));
}

TEST_CASE("direct coupling element appears with include_gd") {
    DeviceParams dp = standard_device();
    dp.include_gd = true;
    const double f_q = 6.5;
    const Eigen::MatrixXcd h = assemble_block(dp, angular(f_q), 1);
    // g_d = 2 g_m g_b / omega_q: 2 * 0.025^2 / 6.5 GHz in linear units
    const double expected_ghz = 2.0 * 0.025 * 0.025 / 6.5;
    CHECK(linear(h(0, 2).real()) == doctest::Approx(expected_ghz).epsilon(1e-12));
    CHECK(expected_ghz == doctest::Approx(1.923e-4).epsilon(1e-3));
}

TEST_CASE("hermiticity and block structure for random parameter draws") {
    oracle::Rng rng(20260808);
    const Basis basis(2);
    for (int draw = 0; draw < 30; ++draw) {
        DeviceParams dp;
        dp.f_m_ghz = rng.uniform(6.5, 7.5);
        dp.f_b_ghz = rng.uniform(5.5, 6.4);
        dp.eta_ghz = rng.uniform(0.05, 0.4);
        dp.g_m_ghz = rng.uniform(0.005, 0.08);
        dp.g_b_ghz = rng.uniform(0.005, 0.08);
        dp.include_gd = draw % 2 == 0;
        const double wq = angular(rng.uniform(6.05, 6.95));
        const Eigen::MatrixXcd h = assemble_hamiltonian(dp, wq, basis);

        const double hmax = h.cwiseAbs().maxCoeff();
        CHECK((h - h.adjoint()).cwiseAbs().maxCoeff() < 1e-14 * hmax);
        for (int i = 0; i < basis.size(); ++i)
            for (int j = 0; j < basis.size(); ++j)
                if (basis.labels()[i].total() != basis.labels()[j].total())
                    CHECK(h(i, j) == std::complex<double>(0.0, 0.0));
    }
}

TEST_CASE("coupling terms are linear in (g_m, g_b) without gd") {
    DeviceParams dp = standard_device();
    dp.include_gd = false;
    const double wq = angular(6.43);
    const Eigen::MatrixXcd h1 = assemble_hamiltonian(dp, wq);
    DeviceParams half = dp;
    half.g_m_ghz *= 0.5;
    half.g_b_ghz *= 0.5;
    const Eigen::MatrixXcd h_half = assemble_hamiltonian(half, wq);
    DeviceParams tiny = dp;
    tiny.g_m_ghz = 1e-30;
    tiny.g_b_ghz = 1e-30;
    const Eigen::MatrixXcd h0 = assemble_hamiltonian(tiny, wq);
    CHECK(((h1 - h0) - 2.0 * (h_half - h0)).cwiseAbs().maxCoeff() < 1e-13);
}

TEST_CASE("gd block scales quadratically in the couplings") {
    DeviceParams dp = standard_device();
    const double wq = angular(6.5);
    const auto direct_element = [&](double scale) {
        DeviceParams d = dp;
        d.g_m_ghz *= scale;
        d.g_b_ghz *= scale;
        d.include_gd = true;
        DeviceParams off = d;
        off.include_gd = false;
        return (assemble_block(d, wq, 1) - assemble_block(off, wq, 1))(0, 2).real();
    };
    const double base = direct_element(1.0);
    const double doubled = direct_element(2.0);
    CHECK(doubled == doctest::Approx(4.0 * base).epsilon(1e-12));
}

TEST_CASE("invalid arguments are rejected") {
    const DeviceParams dp = standard_device();
    CHECK_THROWS_AS(assemble_hamiltonian(dp, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(assemble_hamiltonian(dp, -1.0), std::invalid_argument);
    DeviceParams bad = dp;
    bad.f_b_ghz = 8.0; // above f_m
    CHECK_THROWS_AS(assemble_hamiltonian(bad, angular(6.5)), std::invalid_argument);
}
