#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>

#include "oracles.hpp"
#include "rezqu/dynamics.hpp"
#include "rezqu/errors.hpp"
#include "rezqu/hamiltonian.hpp"
#include "rezqu/spectra.hpp"

using namespace rezqu;
using C = std::complex<double>;

namespace {

DeviceParams standard_device() {
    return DeviceParams{7.0, 6.0, 0.2, 0.025, 0.025, false};
}

PulseShape constant_pulse(double f_ghz, double t_f) {
    return PulseShape(PiecewiseLinearPulse({{0.0, angular(f_ghz)},
                                            {t_f, angular(f_ghz)}}));
}

PulseShape smooth_pulse() {
    return PulseShape(ErfRampPulse(angular(6.6), {{angular(0.35), 3.0, 1.0}}, 8.0));
}

} // namespace

TEST_CASE("stationary state acquires a pure phase") {
    const DeviceParams dp = standard_device();
    const Basis basis(2);
    const PulseShape pulse = constant_pulse(6.62, 5.0);
    const EigenSystem es = diagonalize_block(dp, pulse.omega(0.0), 1);

    StateVector psi0{es.state_of(basis, {0, 1, 0}), 1, 0.0};
    const StateVector psi = evolve(dp, pulse, psi0, 5.0, {.dt = 5e-4});

    for (int k = 0; k < 3; ++k)
        CHECK(std::abs(std::norm(psi.amps(k)) - std::norm(psi0.amps(k))) < 1e-10);
    const double eps = es.energy_of(basis, {0, 1, 0});
    const C expected = std::polar(1.0, -eps * 5.0);
    CHECK(std::abs(psi0.amps.dot(psi.amps) - expected) < 1e-8);
}

TEST_CASE("resonant memory-qubit pi pulse transfers the full population") {
    DeviceParams dp = standard_device();
    dp.g_b_ghz = 1e-9; // decouple the bus
    const double t_pi = std::numbers::pi / (2.0 * dp.g_m());
    const PulseShape pulse = constant_pulse(7.0, t_pi); // on memory resonance

    StateVector psi0;
    psi0.n_exc = 1;
    psi0.t_ns = 0.0;
    psi0.amps = Eigen::Vector3cd(0.0, 1.0, 0.0); // bare qubit
    const StateVector psi = evolve(dp, pulse, psi0, t_pi, {.dt = 5e-4});
    CHECK(std::norm(psi.amps(2)) == doctest::Approx(1.0).epsilon(1e-8));
    CHECK(std::norm(psi.amps(1)) < 1e-8);
}

TEST_CASE("fourth-order convergence under step halving") {
    const DeviceParams dp = standard_device();
    const Basis basis(2);
    const PulseShape pulse = smooth_pulse();
    const EigenSystem es = diagonalize_block(dp, pulse.omega(0.0), 1);
    StateVector psi0{es.state_of(basis, {0, 1, 0}), 1, 0.0};

    const auto final_at = [&](double dt) {
        PropagateOptions opts;
        opts.dt = dt;
        opts.check_norm = false; // coarse steps drift on purpose here
        return evolve(dp, pulse, psi0, pulse.duration(), opts).amps;
    };
    const Eigen::VectorXcd ref = final_at(1e-3 / 8.0);
    const double err1 = (final_at(8e-3) - ref).norm();
    const double err2 = (final_at(4e-3) - ref).norm();
    const double ratio = err1 / err2;
    CHECK(ratio > 12.0);
    CHECK(ratio < 20.0);
}

TEST_CASE("norm is conserved to tight tolerance") {
    const DeviceParams dp = standard_device();
    const Basis basis(2);
    const PulseShape pulse = smooth_pulse();
    for (int n : {1, 2}) {
        const EigenSystem es = diagonalize_block(dp, pulse.omega(0.0), n,
                                                 LabelPolicy::Lenient);
        StateVector psi0;
        psi0.n_exc = n;
        psi0.t_ns = 0.0;
        psi0.amps = es.eigenvectors.col(0);
        const StateVector psi = evolve(dp, pulse, psi0, pulse.duration(), {.dt = 2.5e-4});
        CHECK(std::abs(psi.amps.norm() - 1.0) < 1e-10);
    }
}

TEST_CASE("propagator: identity at zero duration, composition, trivial vacuum") {
    const DeviceParams dp = standard_device();
    const PulseShape pulse = smooth_pulse();

    const Eigen::MatrixXcd u0 =
        propagator_over(dp, constant_pulse(6.6, 0.0), 1, {.dt = 1e-3});
    CHECK((u0 - Eigen::MatrixXcd::Identity(3, 3)).cwiseAbs().maxCoeff() < 1e-12);

    // vacuum block evolves trivially
    const Eigen::MatrixXcd uvac = propagator_over(dp, pulse, 0, {.dt = 1e-3});
    CHECK(std::abs(uvac(0, 0) - 1.0) < 1e-12);

    // composition across an interior time
    const double t_mid = 3.7, t_f = pulse.duration();
    const Basis basis(2);
    Eigen::MatrixXcd u_full(3, 3), u_a(3, 3), u_b(3, 3);
    for (int c = 0; c < 3; ++c) {
        StateVector e;
        e.n_exc = 1;
        e.t_ns = 0.0;
        e.amps = Eigen::Vector3cd::Zero();
        e.amps(c) = 1.0;
        u_full.col(c) = evolve(dp, pulse, e, t_f, {.dt = 2.5e-4}).amps;
        const StateVector mid = evolve(dp, pulse, e, t_mid, {.dt = 2.5e-4});
        u_a.col(c) = mid.amps;
        StateVector from_mid{Eigen::Vector3cd::Zero(), 1, t_mid};
        from_mid.amps(c) = 1.0;
        u_b.col(c) = evolve(dp, pulse, from_mid, t_f, {.dt = 2.5e-4}).amps;
    }
    CHECK((u_full - u_b * u_a).cwiseAbs().maxCoeff() < 1e-8);
    CHECK((u_full.adjoint() * u_full - Eigen::MatrixXcd::Identity(3, 3))
              .cwiseAbs().maxCoeff() < 1e-8);
}

TEST_CASE("co-moving transform: identity at t = 0, unit modulus, involution") {
    const DeviceParams dp = standard_device();
    const PulseShape pulse = smooth_pulse();
    oracle::Rng rng(5);
    for (int n : {1, 2}) {
        const Basis basis(2);
        StateVector s;
        s.n_exc = n;
        s.t_ns = 0.0;
        s.amps = Eigen::VectorXcd::Random(basis.block_dim(n)).normalized();

        const StateVector at0 = to_comoving(s, pulse, dp);
        CHECK((at0.amps - s.amps).norm() < 1e-14);

        s.t_ns = rng.uniform(1.0, 6.0);
        const StateVector moved = to_comoving(s, pulse, dp);
        CHECK(std::abs(moved.amps.norm() - s.amps.norm()) < 1e-13);
        const StateVector back = from_comoving(moved, pulse, dp);
        CHECK((back.amps - s.amps).norm() < 1e-13);
    }
}

TEST_CASE("co-moving amplitudes precess at the dressed shifts only") {
    const DeviceParams dp = standard_device();
    const Basis basis(2);
    const PulseShape pulse = constant_pulse(6.62, 20.0);
    const EigenSystem es = diagonalize_block(dp, pulse.omega(0.0), 1);
    StateVector psi0{es.state_of(basis, {0, 1, 0}), 1, 0.0};

    const double t1 = 4.0, t2 = 14.0;
    const StateVector a = to_comoving(evolve(dp, pulse, psi0, t1, {.dt = 5e-4}),
                                      pulse, dp);
    const StateVector b = to_comoving(evolve(dp, pulse, psi0, t2, {.dt = 5e-4}),
                                      pulse, dp);
    // qubit component rotates at -(eps_dressed - omega_q)
    const double rate = std::arg(b.amps(1) / a.amps(1)) / (t2 - t1);
    const double expected = -(es.energy_of(basis, {0, 1, 0}) - pulse.omega(0.0));
    CHECK(rate == doctest::Approx(expected).epsilon(1e-6));
}

TEST_CASE("refinement reduces the step until agreement") {
    const DeviceParams dp = standard_device();
    const PulseShape pulse = smooth_pulse();
    const Basis basis(2);
    const EigenSystem es = diagonalize_block(dp, pulse.omega(0.0), 1);
    StateVector psi0{es.state_of(basis, {0, 1, 0}), 1, 0.0};

    PropagateOptions opts;
    opts.dt = 4e-3;
    opts.refine_tol = 1e-10;
    const Trajectory traj = propagate(dp, pulse, psi0, pulse.duration(), opts);
    CHECK(traj.dt_used < 4e-3);
}

TEST_CASE("transfer fidelity is frame covariant") {
    const DeviceParams dp = standard_device();
    const Basis basis(2);
    const PulseShape pulse = smooth_pulse();
    const EigenSystem e0 = diagonalize_block(dp, pulse.omega(0.0), 1);
    const EigenSystem ef = diagonalize_block(dp, pulse.omega(pulse.duration()), 1);

    const StateVector psi = evolve(dp, pulse, {e0.state_of(basis, {0, 1, 0}), 1, 0.0},
                                   pulse.duration(), {.dt = 5e-4});
    StateVector target{ef.state_of(basis, {1, 0, 0}), 1, pulse.duration()};

    const double bare = std::norm(target.amps.dot(psi.amps));
    const StateVector psi_cm = to_comoving(psi, pulse, dp);
    const StateVector target_cm = to_comoving(target, pulse, dp);
    const double comoving = std::norm(target_cm.amps.dot(psi_cm.amps));
    CHECK(std::abs(bare - comoving) < 1e-10);
}

TEST_CASE("excess norm drift raises a step-size error") {
    const DeviceParams dp = standard_device();
    const PulseShape pulse = smooth_pulse();
    const Basis basis(2);
    const EigenSystem es = diagonalize_block(dp, pulse.omega(0.0), 1);
    StateVector psi0{es.state_of(basis, {0, 1, 0}), 1, 0.0};
    PropagateOptions coarse;
    coarse.dt = 8e-3; // drifts around 5e-8 on this pulse
    CHECK_THROWS_AS(evolve(dp, pulse, psi0, pulse.duration(), coarse),
                    ConvergenceError);
}

TEST_CASE("initial state must be normalized and time-ordered") {
    const DeviceParams dp = standard_device();
    const PulseShape pulse = smooth_pulse();
    StateVector bad;
    bad.n_exc = 1;
    bad.t_ns = 0.0;
    bad.amps = Eigen::Vector3cd(0.5, 0.0, 0.0);
    CHECK_THROWS_AS(evolve(dp, pulse, bad, 1.0), std::invalid_argument);
    bad.amps = Eigen::Vector3cd(1.0, 0.0, 0.0);
    bad.t_ns = 2.0;
    CHECK_THROWS_AS(evolve(dp, pulse, bad, 1.0), std::invalid_argument);
}

TEST_CASE("trajectory table carries amplitudes and both population sets") {
    const DeviceParams dp = standard_device();
    const PulseShape pulse = smooth_pulse();
    const Basis basis(2);
    const EigenSystem es = diagonalize_block(dp, pulse.omega(0.0), 1);
    StateVector psi0{es.state_of(basis, {0, 1, 0}), 1, 0.0};

    PropagateOptions opts;
    opts.dt = 1e-3;
    opts.sample_stride = 500;
    const Trajectory traj = propagate(dp, pulse, psi0, pulse.duration(), opts);
    REQUIRE(traj.times.size() > 3);

    const TrajectoryTable table = trajectory_table(traj, dp, pulse);
    CHECK(table.columns.size() == 2 + 3 * 2 + 3 + 3);
    CHECK(table.rows.size() == traj.times.size());
    for (const auto& row : table.rows) {
        REQUIRE(row.size() == table.columns.size());
        double bare = 0.0, eig = 0.0;
        for (int k = 0; k < 3; ++k) {
            bare += row[8 + k];
            eig += row[11 + k];
        }
        CHECK(bare == doctest::Approx(1.0).epsilon(1e-9));
        CHECK(eig == doctest::Approx(1.0).epsilon(1e-9));
    }

    const std::string csv = trajectory_csv(traj, dp, pulse);
    CHECK(csv.find("t_ns,f_q_ghz,re_001") == 0);
}
