#include "rezqu/simplex.hpp"

#include <algorithm>
#include <random>
#include <vector>

namespace rezqu {

SimplexResult nelder_mead(const Objective& f, const Eigen::VectorXd& x0,
                          const Eigen::VectorXd& step, const SimplexOptions& opts) {
    const int n = static_cast<int>(x0.size());
    std::vector<Eigen::VectorXd> xs(n + 1, x0);
    std::vector<double> fs(n + 1);
    int evals = 0;
    const auto eval = [&](const Eigen::VectorXd& x) {
        ++evals;
        return f(x);
    };

    for (int i = 1; i <= n; ++i) xs[i](i - 1) += step(i - 1);
    for (int i = 0; i <= n; ++i) fs[i] = eval(xs[i]);

    std::vector<int> order(n + 1);
    const auto sort_simplex = [&] {
        for (int i = 0; i <= n; ++i) order[i] = i;
        std::sort(order.begin(), order.end(), [&](int a, int b) { return fs[a] < fs[b]; });
    };

    SimplexResult res;
    for (;;) {
        sort_simplex();
        const int best = order[0], worst = order[n], second = order[n - 1];
        const bool spread_ok = fs[worst] - fs[best] < opts.f_tol;
        const bool hit_target = opts.target >= 0.0 && fs[best] < opts.target;
        if (spread_ok || hit_target || evals >= opts.max_evals) {
            res.x = xs[best];
            res.f = fs[best];
            res.evals = evals;
            res.converged = spread_ok || hit_target;
            return res;
        }

        Eigen::VectorXd centroid = Eigen::VectorXd::Zero(n);
        for (int i = 0; i <= n; ++i)
            if (i != worst) centroid += xs[i];
        centroid /= double(n);

        const Eigen::VectorXd xr = centroid + (centroid - xs[worst]); // reflect
        const double fr = eval(xr);
        if (fr < fs[best]) {
            const Eigen::VectorXd xe = centroid + 2.0 * (centroid - xs[worst]);
            const double fe = eval(xe);
            if (fe < fr) {
                xs[worst] = xe;
                fs[worst] = fe;
            } else {
                xs[worst] = xr;
                fs[worst] = fr;
            }
        } else if (fr < fs[second]) {
            xs[worst] = xr;
            fs[worst] = fr;
        } else {
            const bool outside = fr < fs[worst];
            const Eigen::VectorXd xc =
                centroid + 0.5 * ((outside ? xr : xs[worst]) - centroid);
            const double fc = eval(xc);
            if (fc < std::min(fr, fs[worst])) {
                xs[worst] = xc;
                fs[worst] = fc;
            } else {
                for (int i = 0; i <= n; ++i) { // shrink toward best
                    if (i == best) continue;
                    xs[i] = xs[best] + 0.5 * (xs[i] - xs[best]);
                    fs[i] = eval(xs[i]);
                }
            }
        }
    }
}

SimplexResult multi_start_minimize(const Objective& f, const Eigen::VectorXd& x0,
                                   const Eigen::VectorXd& step,
                                   const MultiStartOptions& opts) {
    std::mt19937_64 rng(opts.seed);
    std::uniform_real_distribution<double> unit(-1.0, 1.0);

    SimplexResult best;
    bool have = false;
    for (int k = 0; k < opts.n_starts; ++k) {
        Eigen::VectorXd xs = x0;
        if (k > 0)
            for (int i = 0; i < x0.size(); ++i)
                xs(i) += opts.perturb_rel * step(i) * unit(rng);
        SimplexResult r = nelder_mead(f, xs, step, opts.local);
        const auto better = [&](const SimplexResult& a, const SimplexResult& b) {
            if (a.f != b.f) return a.f < b.f;
            return std::lexicographical_compare(a.x.data(), a.x.data() + a.x.size(),
                                                b.x.data(), b.x.data() + b.x.size());
        };
        if (!have || better(r, best)) {
            best = std::move(r);
            have = true;
        }
        if (opts.local.target >= 0.0 && best.f < opts.local.target) break;
    }
    return best;
}

} // namespace rezqu
