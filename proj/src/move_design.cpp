#include "rezqu/move_design.hpp"

#include <cmath>
#include <complex>
#include <functional>
#include <sstream>

#include <json.hpp>

#include "rezqu/basis.hpp"
#include "rezqu/errors.hpp"
#include "rezqu/quadrature.hpp"
#include "rezqu/simplex.hpp"
#include "rezqu/spectra.hpp"

namespace rezqu {

namespace {

using C = std::complex<double>;
constexpr C imag_i{0.0, 1.0};
constexpr double max_front_slope = two_pi * 1.0; // 1 GHz/ns magnitude bound

struct Geometry {
    PulseShape pulse;
    double t1;     // end of the front ramp (shaping-condition window)
    double t2;     // start of the rear ramp
    double flat_a; // resonant-part boundaries for the pi-pulse matching
    double flat_b;
};

Geometry build_geometry(const DeviceParams& dp, const MoveContext& ctx,
                        const MoveParams& p) {
    const double w_start = angular(ctx.f_q_start_ghz);
    const double w_end = angular(ctx.f_q_end_ghz);
    const double w_flat = dp.omega_m() + p.overshoot;
    if (!(p.flat_len >= 0.0))
        throw DesignError("move pulse: flat part duration must be nonnegative");

    if (ctx.family == PulseFamily::PiecewiseLinear) {
        const double s1 = p.front1;
        const double w_knee = p.front2;
        if (s1 == 0.0 || std::abs(s1) > max_front_slope * (1.0 + 1e-9))
            throw DesignError("move pulse: first-segment slope out of range");
        const double d1 = (w_knee - w_start) / s1;
        if (!(d1 > 0.0))
            throw DesignError("move pulse: first segment must advance in time");
        const double s2 = angular(ctx.front2_slope_ghz_per_ns);
        const double d2 = std::abs(w_flat - w_knee) / s2;
        const double sr = angular(ctx.rear_slope_ghz_per_ns);
        const double dr = std::abs(w_flat - w_end) / sr;
        const double t1 = d1 + d2;
        const double t2 = t1 + p.flat_len;
        PiecewiseLinearPulse pulse({{0.0, w_start},
                                    {d1, w_knee},
                                    {t1, w_flat},
                                    {t2, w_flat},
                                    {t2 + dr, w_end}});
        return {PulseShape(std::move(pulse)), t1, t2, t1, t2};
    }

    const double sigma = ctx.sigma_ns;
    if (!(sigma > 0.0)) throw DesignError("move pulse: sigma must be positive");
    const double dc = p.front1;
    const double ratio = p.front2;
    // Keep the pulse start 3*sigma from the earliest step center.
    const double c1 = 3.0 * sigma + std::max(0.0, -dc);
    const double c2 = c1 + dc;
    const double c3 = std::max(c1, c2) + p.flat_len;
    const double t_f = c3 + 3.0 * sigma;
    const double a_front = w_flat - w_start;
    std::vector<ErfRampPulse::Step> steps{
        {ratio * a_front, c1, sigma},
        {(1.0 - ratio) * a_front, c2, sigma},
        {-(w_flat - w_end), c3, sigma},
    };
    ErfRampPulse pulse(w_start, std::move(steps), t_f);
    // ramp window for the shaping integrals ends once the front steps settle
    const double t1 = std::min(std::max(c1, c2) + 3.0 * sigma, c3);
    return {PulseShape(std::move(pulse)), t1, c3, std::max(c1, c2), c3};
}

MoveParams default_two_param_front(const MoveContext& ctx, const DeviceParams& dp) {
    MoveParams p;
    if (ctx.family == PulseFamily::PiecewiseLinear) {
        p.front1 = angular(ctx.front2_slope_ghz_per_ns);
        p.front2 = 0.5 * (angular(ctx.f_q_start_ghz) + dp.omega_m());
    } else {
        p.front1 = 0.0; // single error-function ramp
        p.front2 = 1.0;
    }
    return p;
}

} // namespace

PulseShape build_move_pulse(const DeviceParams& dp, const MoveContext& ctx,
                            const MoveParams& p) {
    return build_geometry(dp, ctx, p).pulse;
}

PulseShape build_directed_pulse(const DeviceParams& dp, const MoveContext& ctx,
                                const MoveParams& p, MoveDirection dir) {
    PulseShape fwd = build_move_pulse(dp, ctx, p);
    if (dir == MoveDirection::QubitToMemory) return fwd;
    return time_reversed(fwd);
}

MoveErrorReport move_error(const DeviceParams& dp, const PulseShape& pulse,
                           MoveDirection dir, const PropagateOptions& opts) {
    const Basis basis(2);
    const BasisLabel qubit{0, 1, 0}, memory{1, 0, 0}, bus{0, 0, 1};
    const BasisLabel init = (dir == MoveDirection::QubitToMemory) ? qubit : memory;
    const BasisLabel goal = (dir == MoveDirection::QubitToMemory) ? memory : qubit;

    const double t_f = pulse.duration();
    const EigenSystem es0 = diagonalize_block(dp, pulse.omega(0.0), 1);
    const EigenSystem esf = diagonalize_block(dp, pulse.omega(t_f), 1);

    StateVector psi0{es0.state_of(basis, init), 1, 0.0};
    const StateVector psi = evolve(dp, pulse, psi0, t_f, opts);

    MoveErrorReport rep;
    rep.direction = dir;
    const C amp = esf.state_of(basis, goal).dot(psi.amps);
    rep.err = std::max(0.0, 1.0 - std::norm(amp));
    rep.tail_gamma2 = std::norm(psi.amps(basis.block_index_of(bus)));
    return rep;
}

std::complex<double> front_ramp_residual(const DeviceParams& dp,
                                         const MoveContext& ctx,
                                         const MoveParams& p) {
    if (dp.g_b_ghz <= 0.0)
        return {0.0, 0.0}; // bus decoupled, no tail to cancel

    const Geometry g = build_geometry(dp, ctx, p);
    const double w_b = dp.omega_b();
    const double t1 = g.t1;
    const auto bus_phase = [&](double t) { return g.pulse.phase(t) - w_b * t; };
    const double delta_b0 = g.pulse.omega(0.0) - w_b;

    // The shaping condition presumes the qubit stays well above the bus;
    // reject ramps that wander toward or past it.
    for (int k = 0; k <= 200; ++k) {
        const double t = t1 * double(k) / 200.0;
        if (g.pulse.omega(t) - w_b < 0.15 * delta_b0)
            throw DesignError("front ramp approaches the bus frequency");
    }

    const C integral = integrate(
        [&](double t) { return std::exp(-imag_i * bus_phase(t)); }, 0.0, t1,
        g.pulse.knots(), bus_phase);
    return 1.0 / delta_b0 - imag_i * integral -
           std::exp(-imag_i * bus_phase(t1)) / (dp.omega_m() - w_b);
}

FrontRampDesign design_front_ramp(const DeviceParams& dp, const MoveContext& ctx,
                                  double overshoot) {
    FrontRampDesign out;
    const MoveParams defaults = default_two_param_front(ctx, dp);
    if (dp.g_b_ghz <= 0.0) {
        out.front1 = defaults.front1;
        out.front2 = defaults.front2;
        out.degenerate = true;
        return out;
    }

    const auto residual = [&](double f1, double f2) -> C {
        MoveParams p;
        p.front1 = f1;
        p.front2 = f2;
        p.overshoot = overshoot;
        p.flat_len = 12.0; // outside the front window, value immaterial
        return front_ramp_residual(dp, ctx, p);
    };

    // Scale for numeric differentiation.
    const bool pwl = ctx.family == PulseFamily::PiecewiseLinear;
    const double scale1 = pwl ? angular(0.05) : 0.1 * ctx.sigma_ns;
    const double scale2 = pwl ? angular(0.02) : 0.05;

    const auto newton = [&](Eigen::Vector2d start, double tol,
                            Eigen::Vector2d* sol) -> double {
        Eigen::Vector2d xx = start;
        C r;
        try {
            r = residual(xx(0), xx(1));
        } catch (const DesignError&) {
            return 1e300;
        }
        for (int it = 0; it < 60; ++it) {
            if (std::abs(r) < tol) break;
            Eigen::Matrix2d jac;
            Eigen::Vector2d fvec(r.real(), r.imag());
            bool ok = true;
            for (int j = 0; j < 2 && ok; ++j) {
                const double h = (j == 0 ? scale1 : scale2) * 1e-4;
                Eigen::Vector2d xp = xx, xm = xx;
                xp(j) += h;
                xm(j) -= h;
                try {
                    const C rp = residual(xp(0), xp(1));
                    const C rm = residual(xm(0), xm(1));
                    jac(0, j) = (rp.real() - rm.real()) / (2.0 * h);
                    jac(1, j) = (rp.imag() - rm.imag()) / (2.0 * h);
                } catch (const DesignError&) {
                    ok = false;
                }
            }
            if (!ok) break;
            Eigen::Vector2d delta = jac.fullPivLu().solve(-fvec);
            // stay local to the seed: several roots exist
            const double clamp = std::max(std::abs(delta(0)) / (10.0 * scale1),
                                          std::abs(delta(1)) / (10.0 * scale2));
            if (clamp > 1.0) delta /= clamp;
            double lambda = 1.0;
            bool improved = false;
            while (lambda > 1e-6) {
                const Eigen::Vector2d xt = xx + lambda * delta;
                try {
                    const C rt = residual(xt(0), xt(1));
                    if (std::abs(rt) < std::abs(r)) {
                        xx = xt;
                        r = rt;
                        improved = true;
                        break;
                    }
                } catch (const DesignError&) {
                }
                lambda *= 0.5;
            }
            if (!improved) break;
        }
        *sol = xx;
        return std::abs(r);
    };

    // Coarse scan of the sane parameter box, then Newton from the best seeds.
    std::vector<Eigen::Vector2d> grid;
    if (pwl) {
        const double w0 = angular(ctx.f_q_start_ghz);
        const double span = dp.omega_m() + overshoot - w0;
        for (int i = 0; i <= 12; ++i)
            for (int j = 1; j <= 9; ++j)
                grid.emplace_back(angular(0.04 + 0.08 * i),
                                  w0 + span * (0.08 + 0.1 * j));
    } else {
        // monotone ramps only: both step amplitudes nonnegative
        for (int i = 0; i <= 16; ++i)
            for (int j = 0; j <= 20; ++j)
                grid.emplace_back(0.25 * ctx.sigma_ns * i, 0.05 * j);
    }
    std::vector<std::pair<double, Eigen::Vector2d>> ranked;
    for (const auto& g : grid) {
        try {
            ranked.emplace_back(std::abs(residual(g(0), g(1))), g);
        } catch (const DesignError&) {
        }
    }
    std::sort(ranked.begin(), ranked.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });

    const auto in_box = [&](const Eigen::Vector2d& x) {
        if (pwl) {
            const double w0 = angular(ctx.f_q_start_ghz);
            const double w_flat = dp.omega_m() + overshoot;
            const double lo = std::min(w0, w_flat), hi = std::max(w0, w_flat);
            return std::abs(x(0)) >= angular(0.01) &&
                   std::abs(x(0)) <= max_front_slope && x(1) > lo && x(1) < hi;
        }
        return x(0) >= 0.0 && x(0) <= 5.0 * ctx.sigma_ns && x(1) >= -0.02 &&
               x(1) <= 1.02;
    };
    const auto ramp_length = [&](const Eigen::Vector2d& x) {
        MoveParams p;
        p.front1 = x(0);
        p.front2 = x(1);
        p.overshoot = overshoot;
        p.flat_len = 12.0;
        return build_geometry(dp, ctx, p).t1;
    };

    // Several distinct ramps can satisfy the condition; take the shortest
    // well-converged one (the fast shapes leave the least time for leakage).
    Eigen::Vector2d best_x = Eigen::Vector2d::Zero();
    double best_r = 1e300, best_t1 = 1e300;
    int polished_roots = 0;
    for (std::size_t k = 0; k < ranked.size() && k < 16 && polished_roots < 4; ++k) {
        Eigen::Vector2d sol;
        const double rr = newton(ranked[k].second, 1e-13, &sol);
        if (rr > 1e-10 || !in_box(sol)) continue;
        ++polished_roots;
        double t1;
        try {
            t1 = ramp_length(sol);
        } catch (const DesignError&) {
            continue;
        }
        if (t1 < best_t1 - 1e-9 || (std::abs(t1 - best_t1) <= 1e-9 && rr < best_r)) {
            best_t1 = t1;
            best_r = rr;
            best_x = sol;
        }
    }
    if (best_r > 1e-10) {
        std::ostringstream msg;
        msg << "design_front_ramp: no in-range root below 1e-10 (best residual "
            << best_r << ")";
        throw DesignError(msg.str());
    }
    out.front1 = best_x(0);
    out.front2 = best_x(1);
    out.residual = best_r;
    return out;
}

FlatPartDesign design_flat_part(const DeviceParams& dp, const MoveContext& ctx,
                                double front1, double front2) {
    const double g_m = dp.g_m();
    const double w_m = dp.omega_m();
    // Resonant-window boundaries for the pi-pulse matching. Error-function
    // ramps keep feeding the resonance past their inflection points, so the
    // window pulls 1.5 sigma inside them.
    const double inset =
        ctx.family == PulseFamily::Erf ? 1.5 * ctx.sigma_ns : 0.0;

    MoveParams p;
    p.front1 = front1;
    p.front2 = front2;
    p.overshoot = 0.0;
    p.flat_len = std::numbers::pi / (2.0 * g_m) + 2.0 * inset;

    FlatPartDesign out;
    for (int it = 0; it < 6; ++it) {
        const Geometry g = build_geometry(dp, ctx, p);
        const double t_f = g.pulse.duration();
        const double w1 = g.flat_a + inset;
        const double w2 = g.flat_b - inset;
        if (!(w2 > w1))
            throw DesignError("design_flat_part: resonant window collapsed");
        const auto mem_phase = [&](double t) { return w_m * t - g.pulse.phase(t); };
        const double b_tf = mem_phase(t_f);

        const C i1 = integrate(
            [&](double t) { return std::exp(imag_i * mem_phase(t)); }, 0.0, w1,
            g.pulse.knots(), mem_phase);
        const C i2 = integrate(
            [&](double t) { return std::exp(imag_i * (b_tf - mem_phase(t))); }, w2,
            t_f, g.pulse.knots(), mem_phase);

        const double dm0 = w_m - g.pulse.omega(0.0);
        const double dmf = w_m - g.pulse.omega(t_f);
        // Matching is done in the flat-part rotating variables, so the ratios
        // at the window boundaries carry the detuning phases accumulated over
        // the ramps.
        const C rot1 = std::exp(-imag_i * mem_phase(w1));
        const C rot2 = std::exp(imag_i * (mem_phase(w2) - b_tf));
        const C rhs = rot1 * (1.0 / dm0 + imag_i * i1) +
                      rot2 * (1.0 / dmf + imag_i * i2);

        out.overshoot = 2.0 * g_m * g_m * rhs.real();
        out.tau = rhs.imag();
        const double omega_r = std::sqrt(4.0 * g_m * g_m + out.overshoot * out.overshoot);
        out.flat_len = std::numbers::pi / omega_r - out.tau + 2.0 * inset;
        if (!(out.flat_len > 0.0))
            throw DesignError("design_flat_part: negative flat-part duration");
        p.overshoot = out.overshoot;
        p.flat_len = out.flat_len;
    }
    const double omega_r = std::sqrt(4.0 * g_m * g_m + out.overshoot * out.overshoot);
    out.varphi = std::numbers::pi * out.overshoot / (4.0 * g_m);
    out.leading_order_valid = std::abs(out.overshoot / g_m) < 0.5 &&
                              std::abs(out.tau) * omega_r / std::numbers::pi < 0.5;
    return out;
}

MoveDesign design_move_analytic(const DeviceParams& dp, const MoveContext& ctx,
                                MoveDirection dir, const PropagateOptions& opts) {
    MoveDesign d;
    d.ctx = ctx;
    d.direction = dir;

    FrontRampDesign front = design_front_ramp(dp, ctx, 0.0);
    FlatPartDesign flat = design_flat_part(dp, ctx, front.front1, front.front2);
    // One more pass with the overshoot folded into the ramp endpoint; keep
    // the first-pass ramp if the refinement loses the root.
    try {
        const FrontRampDesign front2 = design_front_ramp(dp, ctx, flat.overshoot);
        flat = design_flat_part(dp, ctx, front2.front1, front2.front2);
        front = front2;
    } catch (const DesignError&) {
    }

    d.params.front1 = front.front1;
    d.params.front2 = front.front2;
    d.params.overshoot = flat.overshoot;
    d.params.flat_len = flat.flat_len;
    d.varphi = flat.varphi;
    d.leading_order_valid = flat.leading_order_valid && !front.degenerate;

    const PulseShape pulse = build_directed_pulse(dp, ctx, d.params, dir);
    const MoveErrorReport rep = move_error(dp, pulse, dir, opts);
    d.achieved_error = rep.err;
    d.tail_gamma2 = rep.tail_gamma2;
    return d;
}

namespace {

MoveParams params_from_vector(const MoveContext& ctx, const MoveParams& base,
                              OptimizeMode mode, const Eigen::VectorXd& x) {
    MoveParams p = base;
    int k = 0;
    if (mode == OptimizeMode::FourParam) {
        if (ctx.family == PulseFamily::PiecewiseLinear) {
            p.front1 = angular(x(k++)); // GHz/ns -> rad/ns^2
            p.front2 = angular(x(k++)); // GHz -> rad/ns
        } else {
            p.front1 = x(k++);
            p.front2 = x(k++);
        }
    }
    p.overshoot = angular(x(k++));
    p.flat_len = x(k++);
    return p;
}

Eigen::VectorXd vector_from_params(const MoveContext& ctx, const MoveParams& p,
                                   OptimizeMode mode) {
    Eigen::VectorXd x(mode == OptimizeMode::FourParam ? 4 : 2);
    int k = 0;
    if (mode == OptimizeMode::FourParam) {
        if (ctx.family == PulseFamily::PiecewiseLinear) {
            x(k++) = linear(p.front1);
            x(k++) = linear(p.front2);
        } else {
            x(k++) = p.front1;
            x(k++) = p.front2;
        }
    }
    x(k++) = linear(p.overshoot);
    x(k++) = p.flat_len;
    return x;
}

} // namespace

MoveDesign optimize_move(const DeviceParams& dp, const MoveContext& ctx,
                         OptimizeMode mode, MoveDirection dir,
                         const MoveOptimizeOptions& opts) {
    MoveDesign start;
    if (mode == OptimizeMode::FourParam) {
        start = design_move_analytic(dp, ctx, dir, opts.propagate);
    } else {
        start.ctx = ctx;
        start.direction = dir;
        start.params = default_two_param_front(ctx, dp);
        const FlatPartDesign flat =
            design_flat_part(dp, ctx, start.params.front1, start.params.front2);
        start.params.overshoot = flat.overshoot;
        start.params.flat_len = flat.flat_len;
        start.varphi = flat.varphi;
    }

    const auto objective_at = [&](const Eigen::VectorXd& x, OptimizeMode m,
                                  const PropagateOptions& po) -> double {
        try {
            const MoveParams p = params_from_vector(ctx, start.params, m, x);
            const PulseShape pulse = build_directed_pulse(dp, ctx, p, dir);
            return move_error(dp, pulse, dir, po).err;
        } catch (const DesignError&) {
            return 2.0;
        } catch (const LabelingError&) {
            return 2.0;
        }
    };
    const auto objective = [&](const Eigen::VectorXd& x) {
        return objective_at(x, mode, opts.propagate);
    };

    if (mode == OptimizeMode::FourParam) {
        // cheap overshoot/duration polish before releasing the ramp shape
        PropagateOptions coarse = opts.propagate;
        coarse.dt = std::max(coarse.dt, 1e-3);
        Eigen::VectorXd x2(2);
        x2 << linear(start.params.overshoot), start.params.flat_len;
        Eigen::VectorXd s2(2);
        s2 << 2e-4, 0.05;
        SimplexOptions so;
        so.f_tol = 1e-12;
        so.max_evals = 300;
        const SimplexResult pre = nelder_mead(
            [&](const Eigen::VectorXd& x) {
                return objective_at(x, OptimizeMode::TwoParam, coarse);
            },
            x2, s2, so);
        start.params.overshoot = angular(pre.x(0));
        start.params.flat_len = pre.x(1);
    }

    Eigen::VectorXd x0 = vector_from_params(ctx, start.params, mode);
    Eigen::VectorXd step(x0.size());
    if (mode == OptimizeMode::FourParam) {
        if (ctx.family == PulseFamily::PiecewiseLinear)
            step << 0.02, 0.005, 2e-4, 0.05;
        else
            step << 0.05, 0.02, 2e-4, 0.05;
    } else {
        step << 2e-4, 0.05;
    }

    MultiStartOptions ms;
    ms.n_starts = opts.n_starts;
    ms.seed = opts.seed;
    ms.perturb_rel = opts.perturb_rel;
    ms.local.f_tol = opts.objective_tol;
    ms.local.target = opts.target;
    ms.local.max_evals = opts.max_evals_per_start;
    SimplexResult best = multi_start_minimize(objective, x0, step, ms);
    // restart with a shrunken simplex; plain Nelder-Mead tends to collapse
    // before the floor on the narrow four-parameter valley
    for (int round = 1; round <= 2 && best.f > opts.target; ++round) {
        const SimplexResult again =
            nelder_mead(objective, best.x, step * std::pow(0.1, round), ms.local);
        if (again.f < best.f) best = again;
    }

    MoveDesign d = start;
    d.params = params_from_vector(ctx, start.params, mode, best.x);
    const double g_m = dp.g_m();
    const double omega_r =
        std::sqrt(4.0 * g_m * g_m + d.params.overshoot * d.params.overshoot);
    d.varphi = std::numbers::pi * d.params.overshoot / (4.0 * g_m);
    d.leading_order_valid = std::abs(d.params.overshoot / g_m) < 0.5 &&
                            std::abs(std::numbers::pi / omega_r - d.params.flat_len) *
                                    omega_r / std::numbers::pi < 0.5;

    const PulseShape pulse = build_directed_pulse(dp, ctx, d.params, dir);
    const MoveErrorReport rep = move_error(dp, pulse, dir, opts.propagate);
    d.achieved_error = rep.err;
    d.tail_gamma2 = rep.tail_gamma2;
    d.optimizer_stagnated =
        (mode == OptimizeMode::FourParam && d.achieved_error > 1e-9) ||
        (!best.converged && mode == OptimizeMode::TwoParam);
    return d;
}

double move_with_occupied_bus(const DeviceParams& dp, const MoveContext& ctx,
                              const MoveParams& p, const PropagateOptions& opts) {
    const Basis basis(2);
    const PulseShape pulse = build_move_pulse(dp, ctx, p);
    const double t_f = pulse.duration();

    const EigenSystem es0 = diagonalize_block(dp, pulse.omega(0.0), 2);
    const EigenSystem esf = diagonalize_block(dp, pulse.omega(t_f), 2);

    StateVector psi0{es0.state_of(basis, {0, 1, 1}), 2, 0.0};
    const StateVector psi = evolve(dp, pulse, psi0, t_f, opts);
    const C amp = esf.state_of(basis, {1, 0, 1}).dot(psi.amps);
    return std::max(0.0, 1.0 - std::norm(amp));
}

std::string move_design_to_json(const MoveDesign& d) {
    nlohmann::json j;
    j["family"] = d.ctx.family == PulseFamily::PiecewiseLinear ? "piecewise-linear"
                                                               : "erf";
    j["direction"] = d.direction == MoveDirection::QubitToMemory ? "qubit-to-memory"
                                                                 : "memory-to-qubit";
    j["f_q_start_ghz"] = d.ctx.f_q_start_ghz;
    j["f_q_end_ghz"] = d.ctx.f_q_end_ghz;
    j["sigma_ns"] = d.ctx.sigma_ns;
    j["front2_slope_ghz_per_ns"] = d.ctx.front2_slope_ghz_per_ns;
    j["rear_slope_ghz_per_ns"] = d.ctx.rear_slope_ghz_per_ns;
    j["front1"] = d.params.front1;
    j["front2"] = d.params.front2;
    j["overshoot_rad_ns"] = d.params.overshoot;
    j["flat_len_ns"] = d.params.flat_len;
    j["varphi"] = d.varphi;
    j["achieved_error"] = d.achieved_error;
    j["tail_gamma2"] = d.tail_gamma2;
    j["leading_order_valid"] = d.leading_order_valid;
    j["optimizer_stagnated"] = d.optimizer_stagnated;
    return j.dump();
}

MoveDesign move_design_from_json(const std::string& text) {
    const nlohmann::json j = nlohmann::json::parse(text);
    MoveDesign d;
    d.ctx.family = j.at("family").get<std::string>() == "erf"
                       ? PulseFamily::Erf
                       : PulseFamily::PiecewiseLinear;
    d.direction = j.at("direction").get<std::string>() == "memory-to-qubit"
                      ? MoveDirection::MemoryToQubit
                      : MoveDirection::QubitToMemory;
    d.ctx.f_q_start_ghz = j.at("f_q_start_ghz").get<double>();
    d.ctx.f_q_end_ghz = j.at("f_q_end_ghz").get<double>();
    d.ctx.sigma_ns = j.at("sigma_ns").get<double>();
    d.ctx.front2_slope_ghz_per_ns = j.at("front2_slope_ghz_per_ns").get<double>();
    d.ctx.rear_slope_ghz_per_ns = j.at("rear_slope_ghz_per_ns").get<double>();
    d.params.front1 = j.at("front1").get<double>();
    d.params.front2 = j.at("front2").get<double>();
    d.params.overshoot = j.at("overshoot_rad_ns").get<double>();
    d.params.flat_len = j.at("flat_len_ns").get<double>();
    d.varphi = j.at("varphi").get<double>();
    d.achieved_error = j.at("achieved_error").get<double>();
    d.tail_gamma2 = j.at("tail_gamma2").get<double>();
    d.leading_order_valid = j.at("leading_order_valid").get<bool>();
    d.optimizer_stagnated = j.at("optimizer_stagnated").get<bool>();
    return d;
}

} // namespace rezqu
