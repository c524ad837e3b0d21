#pragma once

#include <complex>
#include <functional>
#include <vector>

namespace rezqu {

struct QuadratureOptions {
    double abs_tol = 1e-12;
    int max_depth = 40;
    // Initial subdivision keeps the accumulated phase per cell below this.
    double max_phase_per_cell = 0.785398163397448; // pi/4
};

// Adaptive Simpson integration of a complex-valued integrand over [a, b].
// `knots` lists interior points (derivative kinks) that seed the initial
// subdivision; `phase` (optional) is a monotone-ish phase accumulator used
// to pre-split oscillatory integrands.
std::complex<double> integrate(const std::function<std::complex<double>(double)>& f,
                               double a, double b,
                               const std::vector<double>& knots = {},
                               const std::function<double(double)>& phase = nullptr,
                               const QuadratureOptions& opts = {});

} // namespace rezqu
