#pragma once

#include <complex>
#include <optional>
#include <string>
#include <vector>

#include "rezqu/pulse.hpp"
#include "rezqu/units.hpp"

namespace rezqu {

// Architecture-level parameters for the closed-form worst-case estimators.
// All frequencies angular (rad/ns). The k-section fields describe a second
// device section; the symmetric constructor fills them with the same values.
struct ArchitectureParams {
    int n_qubits = 1;
    int n_ops = 1;
    double delta_m = 0.0;      // typical memory-qubit idling detuning
    double delta_b = 0.0;      // typical qubit-bus idling detuning
    double delta_memory = 0.0; // memory-frequency spacing delta_m,k
    double omega_m_minus_omega_b = 0.0;
    double g_m = 0.0, g_b = 0.0;
    double g_mk = 0.0, g_bk = 0.0;
    double delta_mk = 0.0, delta_bk = 0.0;
    double omega_qk = 0.0; // k-th qubit parked frequency

    // All sections identical; memory spacing defaults to delta / n_qubits.
    static ArchitectureParams symmetric_ghz(double g_ghz, double delta_ghz,
                                            int n_qubits, int n_ops);
    void validate() const;
};

// Worst-case idling error accumulated over time t: (omega_zz * t)^2, or the
// state-dependent |a11|^2 (1-|a11|^2) (omega_zz t)^2 when the two-excitation
// amplitude is given. Quadratic form assumes |omega_zz * t| small; the flag
// reports whether |omega_zz * t| stayed below 0.3.
struct IdlingError {
    double value = 0.0;
    bool quadratic_regime = true;
};
IdlingError idling_error(double omega_zz, double t_ns,
                         std::optional<std::complex<double>> amplitude11 = {});

// Worst-case idling error of the memory-bus ZZ interaction across a device,
// from the fourth-order shift with non-optimal parking (midway cancellation
// ignored) and operation time 1/min(g):
//   [N N_op * 2 g_m^2 g_b^2 eta / (D_m^2 D_b^2 min(g_m, g_b))]^2
//   = 4 g_m^3 g_b^3 eta^2 N^2 N_op^2 / (D_m^4 D_b^4) * max(g)/min(g).
double idle_rezqu_worstcase(const ArchitectureParams& arch, double eta);

// Bus-coupled architecture without memories, same operation count:
//   g_b^2 eta^2 N^2 N_op^2 / D_b^4.
double idle_conventional(const ArchitectureParams& arch, double eta);
// Its ZZ frequency: -2 g_b^2 eta / [D_b (D_b - eta)].
double omega_zz_conventional(double g_b, double delta_b, double eta);

// Four-step memory-memory interaction: the XX exchange frequency, the
// per-retrieval error scaled to worst case, and the ZZ dephasing analog.
struct MemoryMemoryErrors {
    double omega_xx = 0.0; // rad/ns
    double err_xx = 0.0;
    double err_zz = 0.0;
};
MemoryMemoryErrors memory_memory_errors(const ArchitectureParams& arch, double eta);

// Level-crossing (Landau-Zener) leakage during a qubit frequency sweep,
// 2 pi g_eff^2 / |domega_dt| with the two/three-step effective couplings.
double lz_error_qubit_qubit(double g_b, double g_bk, double delta_b,
                            double domega_dt);
double lz_error_qubit_memory(double g_b, double g_bk, double g_mk, double delta_b,
                             double delta_mk, double domega_dt);

// Direct two-level sweep: integrate a linear crossing at rate |domega_dt|
// with coupling g_eff from far detuning to far detuning and return the
// population left on the crossed level (adiabatic projection at both ends).
double lz_error_two_level_oracle(double g_eff, double domega_dt,
                                 double span_sigmas = 40.0, double dt = 1e-3);

// Residual bus tail left by a front ramp (the dominant two-parameter MOVE
// error): | int g_b / Delta_b(t)^2 * domega_q/dt * exp(-i int Delta_b) dt |^2
// over the ramp window [0, pulse.duration()].
double tail_error_front_ramp(const PulseShape& front_ramp, double g_b,
                             double omega_b);

// Same integral for the tail left on a k-th qubit during a qubit-bus MOVE:
// coupling g_b g_bk / (omega_qk - omega_b), detuning omega_q(t) - omega_qk.
double tail_error_kth_qubit(const PulseShape& front_ramp, double g_b, double g_bk,
                            double omega_qk, double omega_b);

// One named estimate with the identifier of the estimator that produced it.
struct ErrorBudgetTerm {
    std::string name;
    double value = 0.0;
    std::string formula;
};

struct ErrorBudget {
    double idle_rezqu = 0.0;
    double idle_conventional = 0.0;
    double xx_memory_memory = 0.0;
    double zz_memory_memory = 0.0;
    double tail_move = 0.0;
    double tail_qubit_k = 0.0;
    double lz_qubit_qubit = 0.0;
    double lz_qubit_memory = 0.0;

    std::vector<ErrorBudgetTerm> terms() const;
};

} // namespace rezqu
