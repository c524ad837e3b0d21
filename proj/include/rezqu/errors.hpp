#pragma once

#include <stdexcept>
#include <string>

namespace rezqu {

// Dressed-state labeling could not find a dominant bare state
// (max overlap <= 0.5, typically a near-degeneracy).
class LabelingError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// An iterative solver (root finder, integrator refinement) failed to
// reach its tolerance.
class ConvergenceError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Pulse design condition could not be solved.
class DesignError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Experiment configuration rejected (unknown key, missing field, bad value).
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace rezqu
