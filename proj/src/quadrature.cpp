#include "rezqu/quadrature.hpp"

#include <algorithm>
#include <cmath>

#include "rezqu/errors.hpp"

namespace rezqu {

namespace {

using C = std::complex<double>;
using F = std::function<C(double)>;

// Classic adaptive Simpson with error estimate |S2 - S1| / 15. The requested
// tolerance is floored at the roundoff level of the cell so the recursion
// terminates once further halving cannot improve the estimate.
C adaptive(const F& f, double a, double b, C fa, C fm, C fb, C s, double tol, int depth) {
    const double m = 0.5 * (a + b);
    if (m <= a || m >= b) return s;
    const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    const C flm = f(lm), frm = f(rm);
    const C sl = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    const C sr = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    const C s2 = sl + sr;
    const double err = std::abs(s2 - s);
    const double roundoff = 1e-16 * (b - a) *
                            (std::abs(fa) + std::abs(flm) + std::abs(fm) +
                             std::abs(frm) + std::abs(fb));
    const double goal = std::max(tol, roundoff);
    if (err <= 15.0 * goal) return s2 + (s2 - s) / 15.0;
    if (depth <= 0) {
        if (err > 1e6 * goal)
            throw ConvergenceError("integrate: adaptive subdivision depth exhausted");
        return s2 + (s2 - s) / 15.0;
    }
    return adaptive(f, a, m, fa, flm, fm, sl, 0.5 * tol, depth - 1) +
           adaptive(f, m, b, fm, frm, fb, sr, 0.5 * tol, depth - 1);
}

} // namespace

std::complex<double> integrate(const F& f, double a, double b,
                               const std::vector<double>& knots,
                               const std::function<double(double)>& phase,
                               const QuadratureOptions& opts) {
    if (a == b) return {0.0, 0.0};
    if (b < a) return -integrate(f, b, a, knots, phase, opts);

    std::vector<double> cuts{a, b};
    for (double k : knots)
        if (k > a && k < b) cuts.push_back(k);
    std::sort(cuts.begin(), cuts.end());

    // Split each cell so the phase advance stays below the cap.
    if (phase) {
        std::vector<double> refined;
        refined.push_back(cuts.front());
        for (std::size_t i = 1; i < cuts.size(); ++i) {
            const double lo = cuts[i - 1], hi = cuts[i];
            const double dphi = std::abs(phase(hi) - phase(lo));
            const int pieces = std::max(1, (int)std::ceil(dphi / opts.max_phase_per_cell));
            for (int p = 1; p <= pieces; ++p)
                refined.push_back(lo + (hi - lo) * p / pieces);
        }
        cuts = std::move(refined);
    }

    C total{0.0, 0.0};
    const double tol_per_len = opts.abs_tol / (b - a);
    for (std::size_t i = 1; i < cuts.size(); ++i) {
        const double lo = cuts[i - 1], hi = cuts[i];
        if (hi <= lo) continue;
        const double mid = 0.5 * (lo + hi);
        const C flo = f(lo), fmid = f(mid), fhi = f(hi);
        const C s = (hi - lo) / 6.0 * (flo + 4.0 * fmid + fhi);
        total += adaptive(f, lo, hi, flo, fmid, fhi, s, tol_per_len * (hi - lo),
                          opts.max_depth);
    }
    return total;
}

} // namespace rezqu
