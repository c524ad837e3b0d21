#pragma once

#include <string>

#include "rezqu/device.hpp"
#include "rezqu/dynamics.hpp"
#include "rezqu/pulse.hpp"

namespace rezqu {

enum class PulseFamily { PiecewiseLinear, Erf };
enum class MoveDirection { QubitToMemory, MemoryToQubit };
enum class OptimizeMode { TwoParam, FourParam };

// Fixed conventions of a MOVE pulse family. Frequencies are the qubit parked
// values at the start and end of the (forward, qubit -> memory) pulse; the
// flat part sits at the memory frequency plus the overshoot.
struct MoveContext {
    PulseFamily family = PulseFamily::PiecewiseLinear;
    double f_q_start_ghz = 6.7;
    double f_q_end_ghz = 6.5;
    double sigma_ns = 1.0;                 // erf ramps
    double front2_slope_ghz_per_ns = 0.5;  // piecewise-linear second front segment
    double rear_slope_ghz_per_ns = 0.5;    // rear ramp
};

// The four design parameters. front1/front2 are family-specific:
//   piecewise-linear: first-segment slope (rad/ns^2, signed) and the qubit
//                     frequency at the end of that segment (rad/ns);
//   erf:              time shift between the two front steps (ns) and the
//                     first step's share of the total front amplitude.
struct MoveParams {
    double front1 = 0.0;
    double front2 = 0.0;
    double overshoot = 0.0; // D, rad/ns; flat part sits at omega_m + D
    double flat_len = 0.0;  // t2 - t1, ns
};

// Forward (qubit -> memory) pulse of the family; throws DesignError for
// geometrically impossible parameters.
PulseShape build_move_pulse(const DeviceParams& dp, const MoveContext& ctx,
                            const MoveParams& p);

// Pulse realizing the requested direction (time-reversed family for
// memory -> qubit, per-parameter mirror of the forward shape).
PulseShape build_directed_pulse(const DeviceParams& dp, const MoveContext& ctx,
                                const MoveParams& p, MoveDirection dir);

struct MoveErrorReport {
    double err = 1.0;         // 1 - |<eigen target|U|eigen initial>|^2
    double tail_gamma2 = 0.0; // bare bus population left at t_f
    MoveDirection direction = MoveDirection::QubitToMemory;
};

// Transfer error between labeled eigenstates at the pulse endpoint
// frequencies; modulus-squared overlap, so the arbitrary transfer phase
// never enters.
MoveErrorReport move_error(const DeviceParams& dp, const PulseShape& pulse,
                           MoveDirection dir, const PropagateOptions& opts = {});

// Front-ramp shaping condition: the co-moving bus tail left by the ramp,
// normalized by g_b,
//   R = 1/Delta_b(0) - i int_0^t1 exp(-i A(t)) dt - exp(-i A(t1))/(w_m - w_b),
// with A(t) the accumulated bus detuning phase. The designed ramp drives
// R to zero.
std::complex<double> front_ramp_residual(const DeviceParams& dp,
                                         const MoveContext& ctx,
                                         const MoveParams& p);

struct FrontRampDesign {
    double front1 = 0.0;
    double front2 = 0.0;
    double residual = 0.0; // |R| at the returned parameters
    bool degenerate = false; // bus decoupled, condition void
};

// Solve the two-parameter front-ramp condition by damped Newton with a
// simplex fallback. `overshoot` is the current flat-part value entering the
// ramp endpoint.
FrontRampDesign design_front_ramp(const DeviceParams& dp, const MoveContext& ctx,
                                  double overshoot = 0.0);

struct FlatPartDesign {
    double overshoot = 0.0; // D, rad/ns
    double tau = 0.0;       // ns; flat_len = pi/omega_r - tau
    double flat_len = 0.0;  // ns
    double varphi = 0.0;    // resulting transfer phase pi D / (4 g_m)
    bool leading_order_valid = true; // |D/g_m| and |tau * omega_r / pi| small
};

// Overshoot and duration correction from the almost-perfect-pi-pulse
// relation, iterated to self-consistency in the phase integrals.
FlatPartDesign design_flat_part(const DeviceParams& dp, const MoveContext& ctx,
                                double front1, double front2);

// Full first-order analytic design (front ramp + flat part).
struct MoveDesign {
    MoveContext ctx;
    MoveParams params;
    MoveDirection direction = MoveDirection::QubitToMemory;
    double varphi = 0.0;
    double achieved_error = 1.0;
    double tail_gamma2 = 0.0;
    bool leading_order_valid = true;
    bool optimizer_stagnated = false;
};

MoveDesign design_move_analytic(const DeviceParams& dp, const MoveContext& ctx,
                                MoveDirection dir = MoveDirection::QubitToMemory,
                                const PropagateOptions& opts = {});

struct MoveOptimizeOptions {
    int n_starts = 5;
    unsigned long long seed = 1;
    double perturb_rel = 0.05;
    int max_evals_per_start = 2000;
    double objective_tol = 1e-13;
    double target = 1e-11; // stop a start early below this error
    PropagateOptions propagate{.dt = 5e-4};
};

// Derivative-free local optimization (multi-start Nelder-Mead) of the MOVE
// error over two (overshoot, duration) or four (plus front ramp) parameters,
// starting from the analytic design. Deterministic for a fixed seed.
MoveDesign optimize_move(const DeviceParams& dp, const MoveContext& ctx,
                         OptimizeMode mode,
                         MoveDirection dir = MoveDirection::QubitToMemory,
                         const MoveOptimizeOptions& opts = {});

// Error of the same pulse acting on the two-excitation block (memory-qubit
// transfer with one bus photon present).
double move_with_occupied_bus(const DeviceParams& dp, const MoveContext& ctx,
                              const MoveParams& p,
                              const PropagateOptions& opts = {});

// Decimal serialization at 17 significant digits; round-trips exactly.
std::string move_design_to_json(const MoveDesign& d);
MoveDesign move_design_from_json(const std::string& text);

} // namespace rezqu
