#pragma once

#include <Eigen/Dense>

#include "rezqu/basis.hpp"
#include "rezqu/device.hpp"

namespace rezqu {

// Direct (electrostatic) memory-bus coupling induced by the qubit circuit,
// g_d = 2 g_m g_b / omega_q. All angular (rad/ns).
double direct_coupling(const DeviceParams& dp, double omega_q);

// Rotating-wave Hamiltonian of the truncated memory-qubit-bus device over
// the full ordered basis (block diagonal in total excitation number).
// omega_q is the instantaneous qubit frequency in rad/ns. Qubit diagonal is
// {0, omega_q, 2 omega_q - eta}; ladder factors carry the sqrt(2) of the
// three-level qubit operators; if dp.include_gd the direct memory-bus term
// is added with g_d recomputed from the given omega_q.
Eigen::MatrixXcd assemble_hamiltonian(const DeviceParams& dp, double omega_q,
                                      const Basis& basis);

// Convenience: two-excitation truncation.
Eigen::MatrixXcd assemble_hamiltonian(const DeviceParams& dp, double omega_q);

// One excitation-number block of the above.
Eigen::MatrixXcd assemble_block(const DeviceParams& dp, double omega_q, int n_exc);

// Cached block assembler for time-dependent propagation:
// H(omega_q) = h0 + omega_q * diag(n_q) [+ g_d(omega_q) * direct pattern].
class BlockHamiltonian {
public:
    BlockHamiltonian(const DeviceParams& dp, int n_exc);

    int dim() const { return static_cast<int>(nq_.size()); }
    int n_exc() const { return n_exc_; }

    // Fill `out` (dim x dim, preallocated) with H(omega_q).
    void materialize(double omega_q, Eigen::MatrixXcd& out) const;
    Eigen::MatrixXcd matrix(double omega_q) const;

private:
    int n_exc_;
    Eigen::MatrixXcd h0_;                        // omega_q-independent part
    Eigen::VectorXd nq_;                         // qubit occupation per state
    std::vector<std::pair<int, int>> gd_upper_;  // direct-coupling slots (i < j)
    std::vector<double> gd_amp_;                 // ladder factors for those slots
    double gd_scale_ = 0.0;                      // 2 g_m g_b; g_d = gd_scale / omega_q
};

} // namespace rezqu
