#pragma once

#include <stdexcept>
#include <string>

namespace vortexem {

/// Invalid or inconsistent scenario parameters.
class ScenarioError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// A solver ran out of iterations (or continuation steps) before meeting its tolerance.
class NonConvergence : public std::runtime_error {
public:
    NonConvergence(const std::string& what, double last_residual, int iterations)
        : std::runtime_error(what + " (last residual " + std::to_string(last_residual) + " after " +
                             std::to_string(iterations) + " iterations)"),
          last_residual_(last_residual), iterations_(iterations) {}

    double last_residual() const noexcept { return last_residual_; }
    int iterations() const noexcept { return iterations_; }

private:
    double last_residual_;
    int iterations_;
};

/// The radial solver landed on a profile with interior nodes.
class NodeDetected : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Profile and scenario (or two charge profiles) do not describe the same system.
class KindMismatch : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Potential requested exactly on the rim circle xi = 1, |z| = 1.
class RimSingularity : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

}  // namespace vortexem
