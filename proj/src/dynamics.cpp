#include "rezqu/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdio>
#include <sstream>
#include <stdexcept>

#include "rezqu/errors.hpp"
#include "rezqu/hamiltonian.hpp"
#include "rezqu/spectra.hpp"

namespace rezqu {

namespace {

using Eigen::MatrixXcd;
using Eigen::VectorXcd;
constexpr std::complex<double> imag_i{0.0, 1.0};

struct StepGrid {
    std::vector<double> edges; // segment boundaries (pulse knots within range)
};

StepGrid make_grid(const PulseShape& pulse, double t0, double t1) {
    StepGrid g;
    g.edges.push_back(t0);
    for (double k : pulse.knots())
        if (k > t0 && k < t1) g.edges.push_back(k);
    g.edges.push_back(t1);
    std::sort(g.edges.begin(), g.edges.end());
    return g;
}

// One RK4 run. The callback sees (step_index, t, psi) after every step.
template <typename Sampler>
void rk4_run(const BlockHamiltonian& bh, const PulseShape& pulse, double shift,
             VectorXcd& psi, double t0, double t1, double dt, Sampler&& sample) {
    const int dim = bh.dim();
    MatrixXcd h_a(dim, dim), h_m(dim, dim), h_b(dim, dim);
    VectorXcd k1(dim), k2(dim), k3(dim), k4(dim), tmp(dim);

    const StepGrid grid = make_grid(pulse, t0, t1);
    long step_index = 0;
    const auto shift_diag = [&](MatrixXcd& h) {
        for (int i = 0; i < dim; ++i) h(i, i) -= shift;
    };

    for (std::size_t seg = 1; seg < grid.edges.size(); ++seg) {
        const double a = grid.edges[seg - 1], b = grid.edges[seg];
        const long n = std::max(1L, std::lround(std::ceil((b - a) / dt - 1e-12)));
        const double h = (b - a) / double(n);
        if (b - a <= 0.0) continue;
        for (long s = 0; s < n; ++s) {
            const double t = a + h * double(s);
            bh.materialize(pulse.omega(t), h_a);
            shift_diag(h_a);
            bh.materialize(pulse.omega(t + 0.5 * h), h_m);
            shift_diag(h_m);
            bh.materialize(pulse.omega(t + h), h_b);
            shift_diag(h_b);

            k1.noalias() = -imag_i * (h_a * psi);
            tmp = psi + (0.5 * h) * k1;
            k2.noalias() = -imag_i * (h_m * tmp);
            tmp = psi + (0.5 * h) * k2;
            k3.noalias() = -imag_i * (h_m * tmp);
            tmp = psi + h * k3;
            k4.noalias() = -imag_i * (h_b * tmp);
            psi += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
            sample(++step_index, t + h, psi);
        }
    }
}

VectorXcd run_once(const DeviceParams& dp, const PulseShape& pulse,
                   const StateVector& psi0, double t_end, double dt,
                   Trajectory* traj, int stride, double shift) {
    const BlockHamiltonian bh(dp, psi0.n_exc);
    VectorXcd psi = psi0.amps;
    const double t0 = psi0.t_ns;
    // undo the frame shift when recording: psi_bare = e^{-i shift t} psi'
    const auto record = [&](double t, const VectorXcd& v) {
        traj->times.push_back(t);
        traj->states.push_back(std::polar(1.0, -shift * (t - t0)) * v);
    };
    if (traj) record(t0, psi);
    rk4_run(bh, pulse, shift, psi, t0, t_end, dt,
            [&](long idx, double t, const VectorXcd& v) {
                if (traj && stride > 0 && idx % stride == 0 && t < t_end) record(t, v);
            });
    psi *= std::polar(1.0, -shift * (t_end - t0));
    if (traj) {
        traj->times.push_back(t_end);
        traj->states.push_back(psi);
    }
    return psi;
}

} // namespace

StateVector Trajectory::final_state() const {
    if (states.empty()) throw std::logic_error("Trajectory: empty");
    return {states.back(), n_exc, times.back()};
}

Trajectory propagate(const DeviceParams& dp, const PulseShape& pulse,
                     const StateVector& psi0, double t_end,
                     const PropagateOptions& opts) {
    if (!(opts.dt > 0.0))
        throw std::invalid_argument("propagate: dt must be positive");
    if (psi0.amps.size() == 0)
        throw std::invalid_argument("propagate: empty state");
    if (t_end < psi0.t_ns)
        throw std::invalid_argument("propagate: t_end before initial time");
    if (opts.check_norm && std::abs(psi0.amps.norm() - 1.0) > 1e-8)
        throw std::invalid_argument("propagate: initial state must be normalized");

    // Exact per-block frame shift; n_exc * omega_b keeps the shifted diagonal
    // at detuning scale.
    const double shift = psi0.n_exc * dp.omega_b();

    double dt = opts.dt;
    Trajectory traj;
    traj.n_exc = psi0.n_exc;

    if (opts.refine_tol > 0.0) {
        VectorXcd prev = run_once(dp, pulse, psi0, t_end, dt, nullptr, 0, shift);
        for (;;) {
            const double dt_next = 0.5 * dt;
            VectorXcd fine = run_once(dp, pulse, psi0, t_end, dt_next, nullptr, 0, shift);
            if ((fine - prev).norm() < opts.refine_tol) break;
            dt = dt_next;
            prev = std::move(fine);
            if (dt < opts.min_dt)
                throw ConvergenceError("propagate: refinement stalled above tolerance; "
                                       "reduce dt or relax refine_tol");
        }
    }

    run_once(dp, pulse, psi0, t_end, dt, &traj, opts.sample_stride, shift);
    traj.dt_used = dt;

    if (opts.check_norm) {
        const double drift = std::abs(traj.states.back().norm() - psi0.amps.norm());
        if (drift > opts.norm_tol) {
            std::ostringstream msg;
            msg << "propagate: norm drift " << drift << " exceeds tolerance "
                << opts.norm_tol << "; refine the step size";
            throw ConvergenceError(msg.str());
        }
    }
    return traj;
}

StateVector evolve(const DeviceParams& dp, const PulseShape& pulse,
                   const StateVector& psi0, double t_end,
                   const PropagateOptions& opts) {
    PropagateOptions o = opts;
    o.sample_stride = 0;
    return propagate(dp, pulse, psi0, t_end, o).final_state();
}

namespace {

VectorXcd comoving_phases(const StateVector& state, const PulseShape& pulse,
                          const DeviceParams& dp, double sign) {
    const Basis basis(2);
    const int dim = basis.block_dim(state.n_exc);
    if (state.amps.size() != dim)
        throw std::invalid_argument("comoving transform: state/block size mismatch");
    const double t = state.t_ns;
    const double int_wq = pulse.phase(t);
    VectorXcd factors(dim);
    for (int k = 0; k < dim; ++k) {
        const BasisLabel l = basis.block_label(state.n_exc, k);
        double phase = l.n_m * dp.omega_m() * t + l.n_b * dp.omega_b() * t +
                       l.n_q * int_wq - (l.n_q == 2 ? dp.eta() * t : 0.0);
        factors(k) = std::polar(1.0, sign * phase);
    }
    return factors;
}

} // namespace

StateVector to_comoving(const StateVector& state, const PulseShape& pulse,
                        const DeviceParams& dp) {
    StateVector out = state;
    out.amps = comoving_phases(state, pulse, dp, +1.0).cwiseProduct(state.amps);
    return out;
}

StateVector from_comoving(const StateVector& state, const PulseShape& pulse,
                          const DeviceParams& dp) {
    StateVector out = state;
    out.amps = comoving_phases(state, pulse, dp, -1.0).cwiseProduct(state.amps);
    return out;
}

Eigen::MatrixXcd propagator_over(const DeviceParams& dp, const PulseShape& pulse,
                                 int n_exc, const PropagateOptions& opts) {
    const Basis basis(2);
    const int dim = basis.block_dim(n_exc);
    MatrixXcd u(dim, dim);
    PropagateOptions o = opts;
    o.sample_stride = 0;
    for (int c = 0; c < dim; ++c) {
        StateVector psi0;
        psi0.n_exc = n_exc;
        psi0.t_ns = 0.0;
        psi0.amps = VectorXcd::Zero(dim);
        psi0.amps(c) = 1.0;
        u.col(c) = evolve(dp, pulse, psi0, pulse.duration(), o).amps;
    }
    const double unitarity = (u.adjoint() * u - MatrixXcd::Identity(dim, dim))
                                 .cwiseAbs().maxCoeff();
    if (unitarity > 1e-8)
        throw ConvergenceError("propagator_over: unitarity defect above 1e-8");
    return u;
}

TrajectoryTable trajectory_table(const Trajectory& traj, const DeviceParams& dp,
                                 const PulseShape& pulse) {
    const Basis basis(2);
    const int dim = basis.block_dim(traj.n_exc);
    TrajectoryTable table;
    table.columns = {"t_ns", "f_q_ghz"};
    for (int k = 0; k < dim; ++k) {
        const BasisLabel l = basis.block_label(traj.n_exc, k);
        const std::string tag = std::to_string(l.n_m) + std::to_string(l.n_q) +
                                std::to_string(l.n_b);
        table.columns.push_back("re_" + tag);
        table.columns.push_back("im_" + tag);
    }
    for (int k = 0; k < dim; ++k) {
        const BasisLabel l = basis.block_label(traj.n_exc, k);
        table.columns.push_back("pop_" + std::to_string(l.n_m) +
                                std::to_string(l.n_q) + std::to_string(l.n_b));
    }
    for (int k = 0; k < dim; ++k)
        table.columns.push_back("eigpop_" + std::to_string(k));

    for (std::size_t r = 0; r < traj.times.size(); ++r) {
        const double t = traj.times[r];
        std::vector<double> row{t, linear(pulse.omega(t))};
        for (int k = 0; k < dim; ++k) {
            row.push_back(traj.states[r](k).real());
            row.push_back(traj.states[r](k).imag());
        }
        for (int k = 0; k < dim; ++k) row.push_back(std::norm(traj.states[r](k)));
        Eigen::SelfAdjointEigenSolver<MatrixXcd> es(
            assemble_block(dp, pulse.omega(t), traj.n_exc));
        const VectorXcd proj = es.eigenvectors().adjoint() * traj.states[r];
        for (int k = 0; k < dim; ++k) row.push_back(std::norm(proj(k)));
        table.rows.push_back(std::move(row));
    }
    return table;
}

std::string trajectory_csv(const Trajectory& traj, const DeviceParams& dp,
                           const PulseShape& pulse) {
    const TrajectoryTable table = trajectory_table(traj, dp, pulse);
    std::ostringstream out;
    for (std::size_t c = 0; c < table.columns.size(); ++c)
        out << (c ? "," : "") << table.columns[c];
    out << "\n";
    char buf[32];
    for (const auto& row : table.rows) {
        for (std::size_t c = 0; c < row.size(); ++c) {
            std::snprintf(buf, sizeof buf, "%.17g", row[c]);
            out << (c ? "," : "") << buf;
        }
        out << "\n";
    }
    return out.str();
}

} // namespace rezqu
