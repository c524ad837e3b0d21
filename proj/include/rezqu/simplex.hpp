#pragma once

#include <Eigen/Dense>
#include <functional>

namespace rezqu {

using Objective = std::function<double(const Eigen::VectorXd&)>;

struct SimplexOptions {
    double f_tol = 1e-12;     // stop when the simplex objective spread is below
    double target = -1.0;     // early-out when best value drops below (if >= 0)
    int max_evals = 2000;
};

struct SimplexResult {
    Eigen::VectorXd x;
    double f = 0.0;
    int evals = 0;
    bool converged = false;
};

// Nelder-Mead downhill simplex. `step` sets the initial simplex extent per
// coordinate. Deterministic for fixed inputs.
SimplexResult nelder_mead(const Objective& f, const Eigen::VectorXd& x0,
                          const Eigen::VectorXd& step, const SimplexOptions& opts = {});

struct MultiStartOptions {
    int n_starts = 5;
    unsigned long long seed = 1;
    double perturb_rel = 0.05; // start k > 0 perturbs x0 by this times step
    SimplexOptions local;
};

// Best-of-N local searches: first start at x0, the rest at seeded random
// perturbations. Ties broken by lexicographic parameter order so the result
// does not depend on evaluation order.
SimplexResult multi_start_minimize(const Objective& f, const Eigen::VectorXd& x0,
                                   const Eigen::VectorXd& step,
                                   const MultiStartOptions& opts = {});

} // namespace rezqu
