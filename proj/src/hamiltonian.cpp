#include "rezqu/hamiltonian.hpp"

#include <cmath>
#include <stdexcept>

namespace rezqu {

namespace {

// <n_q - 1| sigma_q^- |n_q> for the three-level qubit.
double qubit_lowering(int n_q_from) {
    switch (n_q_from) {
        case 1: return 1.0;
        case 2: return std::sqrt(2.0);
        default: return 0.0;
    }
}

double qubit_energy(int n_q, double omega_q, double eta) {
    switch (n_q) {
        case 0: return 0.0;
        case 1: return omega_q;
        case 2: return 2.0 * omega_q - eta;
        default: throw std::invalid_argument("qubit level out of range");
    }
}

} // namespace

double direct_coupling(const DeviceParams& dp, double omega_q) {
    if (!(omega_q > 0.0))
        throw std::invalid_argument("direct_coupling: omega_q must be positive");
    return 2.0 * dp.g_m() * dp.g_b() / omega_q;
}

Eigen::MatrixXcd assemble_hamiltonian(const DeviceParams& dp, double omega_q,
                                      const Basis& basis) {
    if (!(omega_q > 0.0))
        throw std::invalid_argument("assemble_hamiltonian: omega_q must be positive");
    dp.validate();

    const auto& labels = basis.labels();
    const int n = basis.size();
    Eigen::MatrixXcd h = Eigen::MatrixXcd::Zero(n, n);

    const double g_d = dp.include_gd ? direct_coupling(dp, omega_q) : 0.0;

    for (int j = 0; j < n; ++j) {
        const BasisLabel& s = labels[j];
        h(j, j) = s.n_m * dp.omega_m() + s.n_b * dp.omega_b() +
                  qubit_energy(s.n_q, omega_q, dp.eta());

        // g_m (a_m^† σ_q^- + h.c.): memory up, qubit down
        if (s.n_q >= 1 && s.n_m < 2) {
            const int i = basis.index_of({s.n_m + 1, s.n_q - 1, s.n_b});
            if (i >= 0) {
                const double amp = dp.g_m() * std::sqrt(s.n_m + 1.0) * qubit_lowering(s.n_q);
                h(i, j) += amp;
                h(j, i) += amp;
            }
        }
        // g_b (σ_q^- a_b^† + h.c.): bus up, qubit down
        if (s.n_q >= 1 && s.n_b < 2) {
            const int i = basis.index_of({s.n_m, s.n_q - 1, s.n_b + 1});
            if (i >= 0) {
                const double amp = dp.g_b() * std::sqrt(s.n_b + 1.0) * qubit_lowering(s.n_q);
                h(i, j) += amp;
                h(j, i) += amp;
            }
        }
        // g_d (a_m^† a_b + h.c.): memory up, bus down
        if (g_d != 0.0 && s.n_b >= 1 && s.n_m < 2) {
            const int i = basis.index_of({s.n_m + 1, s.n_q, s.n_b - 1});
            if (i >= 0) {
                const double amp = g_d * std::sqrt(s.n_m + 1.0) * std::sqrt(double(s.n_b));
                h(i, j) += amp;
                h(j, i) += amp;
            }
        }
    }
    return h;
}

Eigen::MatrixXcd assemble_hamiltonian(const DeviceParams& dp, double omega_q) {
    return assemble_hamiltonian(dp, omega_q, Basis(2));
}

Eigen::MatrixXcd assemble_block(const DeviceParams& dp, double omega_q, int n_exc) {
    const Basis basis(2);
    const Eigen::MatrixXcd full = assemble_hamiltonian(dp, omega_q, basis);
    const int off = basis.block_offset(n_exc);
    const int dim = basis.block_dim(n_exc);
    return full.block(off, off, dim, dim);
}

BlockHamiltonian::BlockHamiltonian(const DeviceParams& dp, int n_exc) : n_exc_(n_exc) {
    dp.validate();
    const Basis basis(2);
    const int off = basis.block_offset(n_exc);
    const int dim = basis.block_dim(n_exc);

    // Split H = h0 + omega_q * diag(n_q) + g_d(omega_q) * pattern by assembling
    // at a reference frequency and subtracting the omega_q part.
    DeviceParams no_gd = dp;
    no_gd.include_gd = false;
    const double omega_ref = 1.0;
    const Eigen::MatrixXcd href =
        assemble_hamiltonian(no_gd, omega_ref, basis).block(off, off, dim, dim);

    nq_.resize(dim);
    for (int k = 0; k < dim; ++k)
        nq_(k) = basis.block_label(n_exc, k).n_q;

    h0_ = href;
    h0_.diagonal() -= (omega_ref * nq_).cast<std::complex<double>>();

    if (dp.include_gd) {
        gd_scale_ = 2.0 * dp.g_m() * dp.g_b();
        for (int k = 0; k < dim; ++k) {
            const BasisLabel s = basis.block_label(n_exc, k);
            if (s.n_b >= 1 && s.n_m < 2) {
                const int i = basis.block_index_of({s.n_m + 1, s.n_q, s.n_b - 1});
                if (i >= 0) {
                    gd_upper_.emplace_back(std::min(i, k), std::max(i, k));
                    gd_amp_.push_back(std::sqrt(s.n_m + 1.0) * std::sqrt(double(s.n_b)));
                }
            }
        }
    }
}

void BlockHamiltonian::materialize(double omega_q, Eigen::MatrixXcd& out) const {
    out = h0_;
    out.diagonal() += (omega_q * nq_).cast<std::complex<double>>();
    if (gd_scale_ != 0.0) {
        const double g_d = gd_scale_ / omega_q;
        for (std::size_t k = 0; k < gd_upper_.size(); ++k) {
            const auto [i, j] = gd_upper_[k];
            out(i, j) += g_d * gd_amp_[k];
            out(j, i) += g_d * gd_amp_[k];
        }
    }
}

Eigen::MatrixXcd BlockHamiltonian::matrix(double omega_q) const {
    Eigen::MatrixXcd out(dim(), dim());
    materialize(omega_q, out);
    return out;
}

} // namespace rezqu
