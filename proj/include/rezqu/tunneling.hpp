#pragma once

#include <Eigen/Dense>
#include <complex>
#include <vector>

#include "rezqu/units.hpp"

namespace rezqu {

// Two-component memory-qubit model of a tunneling measurement: the qubit
// excited state leaks into the continuum at rate Gamma, described by the
// non-Hermitian Hamiltonian
//   H = [[w_m, g_m], [g_m, w_q - i Gamma/2]]   (basis |10>, |01>).
struct MeasurementParams {
    double f_m_ghz = 7.0;
    double f_q_ghz = 6.5;
    double g_m_ghz = 0.025;
    double gamma_per_ns = 1.0; // tunneling rate of the bare qubit
    double t_meas_ns = 30.0;

    double omega_m() const { return angular(f_m_ghz); }
    double omega_q() const { return angular(f_q_ghz); }
    double g_m() const { return angular(g_m_ghz); }
    double delta_m() const { return omega_m() - omega_q(); }
    // weak-coupling formulas assume g_m well below both the detuning and Gamma
    bool weak_coupling() const;
    void validate() const;
};

enum class InitialState { Bare, Eigen };

Eigen::Matrix2cd tunneling_hamiltonian(const MeasurementParams& mp);

// Complex eigen-decomposition of the 2x2 model. Decay rates are -2 Im(E)
// of the memory-like and qubit-like branches; the weak-coupling values
//   Gamma_m = g_m^2 Gamma / (Delta_m^2 + (Gamma/2)^2),  Gamma_q = Gamma - Gamma_m
// ride along for comparison.
struct DecayEigensystem {
    std::complex<double> energy_memory, energy_qubit;
    Eigen::Vector2cd state_memory, state_qubit; // unit norm
    double gamma_m = 0.0, gamma_q = 0.0;
    double gamma_m_weak = 0.0, gamma_q_weak = 0.0;
};
DecayEigensystem decay_eigensystem(const MeasurementParams& mp);

// State at time t under the non-Hermitian evolution (exact 2x2 solution).
Eigen::Vector2cd tunneling_state(const MeasurementParams& mp,
                                 const Eigen::Vector2cd& psi0, double t_ns);

// Initial state: bare |01> or the Gamma = 0 eigenstate dominated by the qubit.
Eigen::Vector2cd initial_state(const MeasurementParams& mp, InitialState kind);

// Survival probability <psi(t)|psi(t)> of the decaying state; this is the
// probability of misreading logical "1" as "0" after measuring for time t.
double survival_probability(const MeasurementParams& mp, InitialState kind,
                            double t_ns);

struct DecayTrajectory {
    std::vector<double> t_ns;
    std::vector<double> alpha2; // memory population |alpha|^2
    std::vector<double> beta2;  // qubit population |beta|^2
};
DecayTrajectory decay_trajectories(const MeasurementParams& mp, InitialState kind,
                                   int n_points);

// Full comparison at mp.t_meas_ns. `ratio` comes from the propagated states;
// ratio_weak_coupling is the closed-form Gamma^2 / (4 Delta_m^2), and
// err_bare_closed_form the matching long-time expression.
struct DecayReport {
    double gamma_m = 0.0, gamma_q = 0.0;
    double err_bare = 0.0, err_eigen = 0.0;
    double ratio = 0.0;
    double ratio_weak_coupling = 0.0;
    double err_bare_closed_form = 0.0;
    double err_eigen_closed_form = 0.0; // ratio_weak_coupling * err_bare_closed_form
    DecayTrajectory bare, eigen;
};
DecayReport survival_error(const MeasurementParams& mp, int trajectory_points = 601);

// Decay-trace CSV: t_ns, alpha2_bare, beta2_bare, alpha2_eigen, beta2_eigen,
// err_bare, err_eigen, ratio (survival probabilities per initial state).
std::string measurement_csv(const DecayReport& rep);

} // namespace rezqu
