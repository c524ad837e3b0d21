#pragma once

#include <Eigen/Dense>
#include <vector>

#include "rezqu/basis.hpp"
#include "rezqu/device.hpp"

namespace rezqu {

// Dressed-state labeling policy. Strict demands a dominant bare state
// (overlap > 0.5) for every slot of the block at diagonalization time;
// Lenient defers the check to label access, so states away from an avoided
// crossing stay usable while the crossing pair is marked unlabeled (-1).
enum class LabelPolicy { Strict, Lenient };

// Labeled eigen-decomposition of one excitation-number block.
// Eigenvalues ascend; each eigenvector carries the phase convention that its
// largest-magnitude component is real positive. label_to_index maps a block
// basis slot to the eigencolumn dominated by that bare state; where labeled,
// the map is injective by construction (two slots cannot both exceed
// overlap 1/2 on a unit eigenvector).
struct EigenSystem {
    int n_exc = 0;
    Eigen::VectorXd eigenvalues;   // rad/ns
    Eigen::MatrixXcd eigenvectors; // columns
    std::vector<int> label_to_index; // -1: no dominant eigenstate
    std::vector<double> overlaps;    // best |<bare|eigen>|^2 per slot

    int index_of(const Basis& basis, const BasisLabel& label) const;
    double energy_of(const Basis& basis, const BasisLabel& label) const;
    Eigen::VectorXcd state_of(const Basis& basis, const BasisLabel& label) const;
    bool fully_labeled() const;
};

EigenSystem diagonalize_block(const Eigen::MatrixXcd& h_block, int n_exc,
                              LabelPolicy policy = LabelPolicy::Strict);
EigenSystem diagonalize_block(const DeviceParams& dp, double omega_q, int n_exc,
                              LabelPolicy policy = LabelPolicy::Strict);

// Fourth-order single-excitation eigenenergies (direct coupling neglected):
//   eps_100 = w_m + g_m^2/D_m - g_m^4/D_m^3 + g_m^2 g_b^2 / (D_m^2 (w_m - w_b))
//   eps_001 = w_b - g_b^2/D_b + g_b^4/D_b^3 - g_m^2 g_b^2 / (D_b^2 (w_m - w_b))
// with D_m = w_m - w_q, D_b = w_q - w_b.
struct SingleExcitationSeries {
    double eps_100 = 0.0; // rad/ns
    double eps_001 = 0.0; // rad/ns
    bool near_degenerate = false; // some detuning below 10*max(g_m, g_b)
};

SingleExcitationSeries single_excitation_energies_4th(const DeviceParams& dp,
                                                      double omega_q);

// Conditional memory frequency shift due to a bus excitation, all rad/ns:
//   exact      eps_101 + eps_000 - eps_100 - eps_001 from block diagonalization
//   fourth     -2 g_m^2 g_b^2 eta / (D_m^2 D_b^2) * S / (S + eta), S = w_m + w_b - 2 w_q
//   eta_pert   -eta |alpha_020|^2 with the second-order |020> admixture
struct ZZReport {
    double omega_zz_exact = 0.0;
    double omega_zz_4th = 0.0;
    double omega_zz_eta_pert = 0.0;
    double alpha_200 = 0.0;
    double alpha_020 = 0.0;
    double alpha_002 = 0.0;
    bool near_degenerate = false;
};

ZZReport omega_zz(const DeviceParams& dp, double omega_q);

// Second-order two-excitation admixture amplitudes of the dressed |101>.
struct SecondOrderAmplitudes {
    double alpha_200, alpha_020, alpha_002;
};
SecondOrderAmplitudes second_order_amplitudes(const DeviceParams& dp, double omega_q);

// Direct-coupling-induced shifts of (eps_100 + eps_001) and of eps_101,
// computed by toggling the g_d term. Their difference is the g_d-induced
// change of omega_zz (it cancels through fourth order).
struct GdShift {
    double shift_single; // rad/ns
    double shift_double; // rad/ns
};
GdShift gd_shift_cancellation(const DeviceParams& dp, double omega_q);

} // namespace rezqu
