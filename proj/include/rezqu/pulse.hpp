#pragma once

#include <variant>
#include <vector>

namespace rezqu {

// Piecewise-linear qubit-frequency trajectory. Outside [first, last]
// breakpoint times the frequency is held at the boundary value.
class PiecewiseLinearPulse {
public:
    struct Breakpoint {
        double t_ns;
        double omega; // rad/ns
    };

    PiecewiseLinearPulse() = default;
    explicit PiecewiseLinearPulse(std::vector<Breakpoint> points);

    double omega(double t) const;
    double slope(double t) const;       // rad/ns^2
    double phase(double t) const;       // integral of omega from 0 to t
    double duration() const;
    std::vector<double> knots() const;  // interior breakpoint times
    const std::vector<Breakpoint>& breakpoints() const { return points_; }

private:
    int segment_of(double t) const;
    std::vector<Breakpoint> points_;
    std::vector<double> phase_prefix_; // phase at each breakpoint
};

// Sum of error-function steps: omega(t) = base + sum_i amp_i * S((t-c_i)/sigma_i)
// with S the unit Gaussian CDF. Ramps nominally begin/end 3*sigma away from
// the nearest step center.
class ErfRampPulse {
public:
    struct Step {
        double amp;    // rad/ns, signed
        double center; // ns
        double sigma;  // ns
    };

    ErfRampPulse() = default;
    ErfRampPulse(double base_omega, std::vector<Step> steps, double t_end);

    double omega(double t) const;
    double slope(double t) const;
    double phase(double t) const;
    double duration() const { return t_end_; }
    std::vector<double> knots() const { return {}; }
    double base() const { return base_; }
    const std::vector<Step>& steps() const { return steps_; }

private:
    double base_ = 0.0;
    std::vector<Step> steps_;
    double t_end_ = 0.0;
    double phase0_ = 0.0; // raw phase integral at t = 0, subtracted off
};

// Value-semantic wrapper over the supported pulse families.
class PulseShape {
public:
    PulseShape(PiecewiseLinearPulse p) : impl_(std::move(p)) {}
    PulseShape(ErfRampPulse p) : impl_(std::move(p)) {}

    double omega(double t) const;
    double slope(double t) const;
    double phase(double t) const;
    // integral of omega over [t0, t1]
    double phase_between(double t0, double t1) const { return phase(t1) - phase(t0); }
    double duration() const;
    std::vector<double> knots() const;

    const PiecewiseLinearPulse* as_piecewise_linear() const;
    const ErfRampPulse* as_erf() const;

private:
    std::variant<PiecewiseLinearPulse, ErfRampPulse> impl_;
};

// Time-reversed copy: omega'(t) = omega(duration - t).
PulseShape time_reversed(const PulseShape& pulse);

} // namespace rezqu
