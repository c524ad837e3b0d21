#include "rezqu/spectra.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <sstream>
#include <stdexcept>

#include "rezqu/errors.hpp"
#include "rezqu/hamiltonian.hpp"

namespace rezqu {

namespace {

void fix_phase(Eigen::MatrixXcd& vectors) {
    for (int c = 0; c < vectors.cols(); ++c) {
        Eigen::Index imax;
        vectors.col(c).cwiseAbs().maxCoeff(&imax);
        const std::complex<double> z = vectors(imax, c);
        const double mag = std::abs(z);
        if (mag > 0.0) vectors.col(c) *= std::conj(z) / mag;
    }
}

void check_detunings(const DeviceParams& dp, double omega_q, bool* warn) {
    const double d_m = dp.omega_m() - omega_q;
    const double d_b = omega_q - dp.omega_b();
    const double d_mb = dp.omega_m() - dp.omega_b();
    if (d_m == 0.0 || d_b == 0.0 || d_mb == 0.0)
        throw std::invalid_argument("zero detuning: perturbative series undefined");
    const double g = std::max(dp.g_m(), dp.g_b());
    if (warn)
        *warn = std::min({std::abs(d_m), std::abs(d_b), std::abs(d_mb)}) < 10.0 * g;
}

} // namespace

int EigenSystem::index_of(const Basis& basis, const BasisLabel& label) const {
    const int slot = basis.block_index_of(label);
    if (slot < 0)
        throw std::invalid_argument("EigenSystem: label not in this block");
    if (label_to_index[slot] < 0) {
        std::ostringstream msg;
        msg << "no eigenstate dominated by |" << label.n_m << label.n_q << label.n_b
            << "> (best overlap " << overlaps[slot] << ", near-degeneracy)";
        throw LabelingError(msg.str());
    }
    return label_to_index[slot];
}

bool EigenSystem::fully_labeled() const {
    for (int idx : label_to_index)
        if (idx < 0) return false;
    return true;
}

double EigenSystem::energy_of(const Basis& basis, const BasisLabel& label) const {
    return eigenvalues(index_of(basis, label));
}

Eigen::VectorXcd EigenSystem::state_of(const Basis& basis, const BasisLabel& label) const {
    return eigenvectors.col(index_of(basis, label));
}

EigenSystem diagonalize_block(const Eigen::MatrixXcd& h_block, int n_exc,
                              LabelPolicy policy) {
    if (h_block.rows() != h_block.cols() || h_block.rows() == 0)
        throw std::invalid_argument("diagonalize_block: matrix must be square");
    if (n_exc < 0 || n_exc > 2)
        throw std::invalid_argument("diagonalize_block: n_exc must be 0, 1, or 2");

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(h_block);
    if (solver.info() != Eigen::Success)
        throw ConvergenceError("diagonalize_block: eigensolver failed");

    EigenSystem es;
    es.n_exc = n_exc;
    es.eigenvalues = solver.eigenvalues();
    es.eigenvectors = solver.eigenvectors();
    fix_phase(es.eigenvectors);

    const int dim = static_cast<int>(h_block.rows());
    es.label_to_index.assign(dim, -1);
    es.overlaps.assign(dim, 0.0);
    for (int slot = 0; slot < dim; ++slot) {
        int best = -1;
        double best_ov = 0.0;
        for (int c = 0; c < dim; ++c) {
            const double ov = std::norm(es.eigenvectors(slot, c));
            if (ov > best_ov) {
                best_ov = ov;
                best = c;
            }
        }
        es.overlaps[slot] = best_ov;
        if (best_ov > 0.5) es.label_to_index[slot] = best;
    }
    if (policy == LabelPolicy::Strict && !es.fully_labeled()) {
        int slot = 0;
        while (es.label_to_index[slot] >= 0) ++slot;
        std::ostringstream msg;
        msg << "dressed-state labeling failed for bare slot " << slot << " in block "
            << n_exc << " (max overlap " << es.overlaps[slot] << ")";
        throw LabelingError(msg.str());
    }
    return es;
}

EigenSystem diagonalize_block(const DeviceParams& dp, double omega_q, int n_exc,
                              LabelPolicy policy) {
    return diagonalize_block(assemble_block(dp, omega_q, n_exc), n_exc, policy);
}

SingleExcitationSeries single_excitation_energies_4th(const DeviceParams& dp,
                                                      double omega_q) {
    SingleExcitationSeries out;
    check_detunings(dp, omega_q, &out.near_degenerate);

    const double w_m = dp.omega_m(), w_b = dp.omega_b();
    const double g_m = dp.g_m(), g_b = dp.g_b();
    const double d_m = w_m - omega_q;
    const double d_b = omega_q - w_b;
    const double d_mb = w_m - w_b;

    out.eps_100 = w_m + g_m * g_m / d_m - std::pow(g_m, 4) / std::pow(d_m, 3) +
                  g_m * g_m * g_b * g_b / (d_m * d_m * d_mb);
    out.eps_001 = w_b - g_b * g_b / d_b + std::pow(g_b, 4) / std::pow(d_b, 3) -
                  g_m * g_m * g_b * g_b / (d_b * d_b * d_mb);
    return out;
}

SecondOrderAmplitudes second_order_amplitudes(const DeviceParams& dp, double omega_q) {
    check_detunings(dp, omega_q, nullptr);
    const double w_m = dp.omega_m(), w_b = dp.omega_b(), eta = dp.eta();
    const double g_m = dp.g_m(), g_b = dp.g_b();
    const double d_m = w_m - omega_q;
    const double d_b = omega_q - w_b;
    const double d_mb = w_m - w_b;
    const double s = w_m + w_b - 2.0 * omega_q;
    const double denom = s + eta; // w_m + w_b - (2 w_q - eta)
    if (denom == 0.0)
        throw std::invalid_argument("second_order_amplitudes: |020> resonance");

    const double r2 = std::sqrt(2.0);
    return {r2 * g_m * g_b / (d_b * d_mb),
            -r2 * g_m * g_b / (d_m * d_b) * s / denom,
            r2 * g_m * g_b / (d_m * d_mb)};
}

ZZReport omega_zz(const DeviceParams& dp, double omega_q) {
    ZZReport rep;
    check_detunings(dp, omega_q, &rep.near_degenerate);
    {
        // Proximity to the |020> resonance (2 w_q - eta = w_m + w_b), where
        // the dressed |101> hybridizes with the doubly excited qubit and the
        // fourth-order formula has its pole.
        const double d_m = dp.omega_m() - omega_q;
        const double d_b = omega_q - dp.omega_b();
        const double g_eff = std::sqrt(2.0) * dp.g_m() * dp.g_b() *
                             std::abs(1.0 / d_b - 1.0 / d_m);
        const double denom = dp.omega_m() + dp.omega_b() - 2.0 * omega_q + dp.eta();
        if (std::abs(denom) < 10.0 * g_eff) rep.near_degenerate = true;
    }

    const Basis basis(2);
    const EigenSystem one = diagonalize_block(dp, omega_q, 1, LabelPolicy::Lenient);
    const EigenSystem two = diagonalize_block(dp, omega_q, 2, LabelPolicy::Lenient);
    const double eps_000 = assemble_block(dp, omega_q, 0)(0, 0).real();
    rep.omega_zz_exact = two.energy_of(basis, {1, 0, 1}) + eps_000 -
                         one.energy_of(basis, {1, 0, 0}) -
                         one.energy_of(basis, {0, 0, 1});

    const double w_m = dp.omega_m(), w_b = dp.omega_b(), eta = dp.eta();
    const double g_m = dp.g_m(), g_b = dp.g_b();
    const double d_m = w_m - omega_q;
    const double d_b = omega_q - w_b;
    const double s = w_m + w_b - 2.0 * omega_q;
    rep.omega_zz_4th = -2.0 * g_m * g_m * g_b * g_b * eta / (d_m * d_m * d_b * d_b) *
                       s / (s + eta);

    const auto amps = second_order_amplitudes(dp, omega_q);
    rep.alpha_200 = amps.alpha_200;
    rep.alpha_020 = amps.alpha_020;
    rep.alpha_002 = amps.alpha_002;
    rep.omega_zz_eta_pert = -eta * amps.alpha_020 * amps.alpha_020;
    return rep;
}

GdShift gd_shift_cancellation(const DeviceParams& dp, double omega_q) {
    const Basis basis(2);
    DeviceParams with = dp, without = dp;
    with.include_gd = true;
    without.include_gd = false;

    const EigenSystem one_w = diagonalize_block(with, omega_q, 1, LabelPolicy::Lenient);
    const EigenSystem one_o = diagonalize_block(without, omega_q, 1, LabelPolicy::Lenient);
    const EigenSystem two_w = diagonalize_block(with, omega_q, 2, LabelPolicy::Lenient);
    const EigenSystem two_o = diagonalize_block(without, omega_q, 2, LabelPolicy::Lenient);

    GdShift out;
    out.shift_single = (one_w.energy_of(basis, {1, 0, 0}) + one_w.energy_of(basis, {0, 0, 1})) -
                       (one_o.energy_of(basis, {1, 0, 0}) + one_o.energy_of(basis, {0, 0, 1}));
    out.shift_double = two_w.energy_of(basis, {1, 0, 1}) - two_o.energy_of(basis, {1, 0, 1});
    return out;
}

} // namespace rezqu
