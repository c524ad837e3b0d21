#pragma once

#include <Eigen/Dense>
#include <vector>

#include "rezqu/basis.hpp"
#include "rezqu/device.hpp"
#include "rezqu/pulse.hpp"

namespace rezqu {

// Complex amplitudes over one excitation-number block of the ordered basis.
// In the single-excitation block the components follow the basis order
// (0,0,1), (0,1,0), (1,0,0): bus, qubit, memory.
struct StateVector {
    Eigen::VectorXcd amps;
    int n_exc = 1;
    double t_ns = 0.0;
};

struct PropagateOptions {
    double dt = 1e-3;        // ns, fixed-step RK4
    int sample_stride = 0;   // 0: keep only the final state
    bool check_norm = true;  // Hermitian evolution should preserve the norm
    double norm_tol = 1e-9;
    // When > 0, halve dt until two successive refinements agree to this
    // tolerance in final-state distance.
    double refine_tol = 0.0;
    double min_dt = 1e-6;
};

struct Trajectory {
    std::vector<double> times;
    std::vector<Eigen::VectorXcd> states; // bare-basis amplitudes
    int n_exc = 1;
    double dt_used = 0.0;

    StateVector final_state() const;
};

// Fixed-step fourth-order integration of i dpsi/dt = H(omega_q(t)) psi over
// the block of psi0, from psi0.t_ns to t_end. Steps align to pulse
// breakpoints. Internally the diagonal is shifted by the bus frequency times
// the excitation number (an exact global phase per block, restored in the
// returned amplitudes) so the step error is set by detunings, not by the
// 6-7 GHz carrier.
Trajectory propagate(const DeviceParams& dp, const PulseShape& pulse,
                     const StateVector& psi0, double t_end,
                     const PropagateOptions& opts = {});

StateVector evolve(const DeviceParams& dp, const PulseShape& pulse,
                   const StateVector& psi0, double t_end,
                   const PropagateOptions& opts = {});

// Co-moving frame of the bare amplitudes: each component is multiplied by
// exp(+i [n_m w_m t + n_q int_0^t w_q dt' - (n_q = 2) eta t + n_b w_b t]).
StateVector to_comoving(const StateVector& state, const PulseShape& pulse,
                        const DeviceParams& dp);
StateVector from_comoving(const StateVector& state, const PulseShape& pulse,
                          const DeviceParams& dp);

// Propagator of the pulse over one excitation block, columns = evolved basis
// states from t = 0 to t = pulse.duration().
Eigen::MatrixXcd propagator_over(const DeviceParams& dp, const PulseShape& pulse,
                                 int n_exc, const PropagateOptions& opts = {});

// Tabular trajectory view: t_ns, f_q_ghz, re/im of each amplitude, bare
// populations, and populations in the instantaneous eigenbasis (ascending
// eigenvalues).
struct TrajectoryTable {
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;
};
TrajectoryTable trajectory_table(const Trajectory& traj, const DeviceParams& dp,
                                 const PulseShape& pulse);
std::string trajectory_csv(const Trajectory& traj, const DeviceParams& dp,
                           const PulseShape& pulse);

} // namespace rezqu
