#include "rezqu/pulse.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace rezqu {

namespace {

constexpr double inv_sqrt2 = 0.70710678118654752440;
constexpr double inv_sqrt2pi = 0.39894228040143267794;

// Unit Gaussian CDF and pdf.
double gauss_cdf(double u) { return 0.5 * (1.0 + std::erf(u * inv_sqrt2)); }
double gauss_pdf(double u) { return inv_sqrt2pi * std::exp(-0.5 * u * u); }
// Antiderivative of the CDF: d/du [u*S(u) + pdf(u)] = S(u).
double gauss_cdf_integral(double u) { return u * gauss_cdf(u) + gauss_pdf(u); }

} // namespace

PiecewiseLinearPulse::PiecewiseLinearPulse(std::vector<Breakpoint> points)
    : points_(std::move(points)) {
    if (points_.size() < 2)
        throw std::invalid_argument("PiecewiseLinearPulse: need at least two breakpoints");
    for (std::size_t i = 1; i < points_.size(); ++i)
        if (!(points_[i].t_ns >= points_[i - 1].t_ns))
            throw std::invalid_argument("PiecewiseLinearPulse: breakpoints must be time-ordered");
    if (points_.front().t_ns != 0.0)
        throw std::invalid_argument("PiecewiseLinearPulse: first breakpoint must be at t = 0");

    phase_prefix_.assign(points_.size(), 0.0);
    for (std::size_t i = 1; i < points_.size(); ++i) {
        const double dt = points_[i].t_ns - points_[i - 1].t_ns;
        phase_prefix_[i] = phase_prefix_[i - 1] +
                           0.5 * (points_[i].omega + points_[i - 1].omega) * dt;
    }
}

int PiecewiseLinearPulse::segment_of(double t) const {
    // index i such that t in [t_i, t_{i+1})
    int lo = 0, hi = static_cast<int>(points_.size()) - 1;
    while (lo + 1 < hi) {
        const int mid = (lo + hi) / 2;
        (points_[mid].t_ns <= t ? lo : hi) = mid;
    }
    return lo;
}

double PiecewiseLinearPulse::omega(double t) const {
    if (t <= points_.front().t_ns) return points_.front().omega;
    if (t >= points_.back().t_ns) return points_.back().omega;
    const int i = segment_of(t);
    const auto& a = points_[i];
    const auto& b = points_[i + 1];
    if (b.t_ns == a.t_ns) return b.omega;
    const double u = (t - a.t_ns) / (b.t_ns - a.t_ns);
    return a.omega + u * (b.omega - a.omega);
}

double PiecewiseLinearPulse::slope(double t) const {
    if (t < points_.front().t_ns || t > points_.back().t_ns) return 0.0;
    const int i = segment_of(t);
    const auto& a = points_[i];
    const auto& b = points_[i + 1];
    if (b.t_ns == a.t_ns) return 0.0;
    return (b.omega - a.omega) / (b.t_ns - a.t_ns);
}

double PiecewiseLinearPulse::phase(double t) const {
    if (t <= 0.0) return points_.front().omega * t;
    if (t >= points_.back().t_ns)
        return phase_prefix_.back() + points_.back().omega * (t - points_.back().t_ns);
    const int i = segment_of(t);
    const auto& a = points_[i];
    const auto& b = points_[i + 1];
    const double s = (b.t_ns > a.t_ns) ? (b.omega - a.omega) / (b.t_ns - a.t_ns) : 0.0;
    const double dt = t - a.t_ns;
    return phase_prefix_[i] + a.omega * dt + 0.5 * s * dt * dt;
}

double PiecewiseLinearPulse::duration() const { return points_.back().t_ns; }

std::vector<double> PiecewiseLinearPulse::knots() const {
    std::vector<double> k;
    for (std::size_t i = 1; i + 1 < points_.size(); ++i) k.push_back(points_[i].t_ns);
    return k;
}

ErfRampPulse::ErfRampPulse(double base_omega, std::vector<Step> steps, double t_end)
    : base_(base_omega), steps_(std::move(steps)), t_end_(t_end) {
    if (!(t_end_ > 0.0))
        throw std::invalid_argument("ErfRampPulse: duration must be positive");
    for (const auto& s : steps_)
        if (!(s.sigma > 0.0))
            throw std::invalid_argument("ErfRampPulse: sigma must be positive");
    phase0_ = 0.0;
    phase0_ = phase(0.0);
}

double ErfRampPulse::omega(double t) const {
    double w = base_;
    for (const auto& s : steps_) w += s.amp * gauss_cdf((t - s.center) / s.sigma);
    return w;
}

double ErfRampPulse::slope(double t) const {
    double dw = 0.0;
    for (const auto& s : steps_) dw += s.amp / s.sigma * gauss_pdf((t - s.center) / s.sigma);
    return dw;
}

double ErfRampPulse::phase(double t) const {
    double ph = base_ * t;
    for (const auto& s : steps_)
        ph += s.amp * s.sigma * gauss_cdf_integral((t - s.center) / s.sigma);
    return ph - phase0_;
}

double PulseShape::omega(double t) const {
    return std::visit([t](const auto& p) { return p.omega(t); }, impl_);
}
double PulseShape::slope(double t) const {
    return std::visit([t](const auto& p) { return p.slope(t); }, impl_);
}
double PulseShape::phase(double t) const {
    return std::visit([t](const auto& p) { return p.phase(t); }, impl_);
}
double PulseShape::duration() const {
    return std::visit([](const auto& p) { return p.duration(); }, impl_);
}
std::vector<double> PulseShape::knots() const {
    return std::visit([](const auto& p) { return p.knots(); }, impl_);
}
const PiecewiseLinearPulse* PulseShape::as_piecewise_linear() const {
    return std::get_if<PiecewiseLinearPulse>(&impl_);
}
const ErfRampPulse* PulseShape::as_erf() const {
    return std::get_if<ErfRampPulse>(&impl_);
}

PulseShape time_reversed(const PulseShape& pulse) {
    const double t_f = pulse.duration();
    if (const auto* pwl = pulse.as_piecewise_linear()) {
        std::vector<PiecewiseLinearPulse::Breakpoint> rev;
        const auto& pts = pwl->breakpoints();
        rev.reserve(pts.size());
        for (auto it = pts.rbegin(); it != pts.rend(); ++it)
            rev.push_back({t_f - it->t_ns, it->omega});
        return PulseShape(PiecewiseLinearPulse(std::move(rev)));
    }
    const auto* erf = pulse.as_erf();
    // base + sum amp*S((t-c)/s) reversed: S(-u) = 1 - S(u)
    double base = erf->base();
    std::vector<ErfRampPulse::Step> steps;
    steps.reserve(erf->steps().size());
    for (const auto& s : erf->steps()) {
        base += s.amp;
        steps.push_back({-s.amp, t_f - s.center, s.sigma});
    }
    return PulseShape(ErfRampPulse(base, std::move(steps), t_f));
}

} // namespace rezqu
