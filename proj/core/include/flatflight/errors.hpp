#pragma once

#include <stdexcept>
#include <string>

namespace flatflight {

// One error type for the whole toolkit. The kind drives CLI exit codes and
// lets planners re-raise with step/iteration context attached.
class Error : public std::runtime_error {
public:
    enum class Kind {
        config,             // bad file, bad key, bad units, bad grammar
        domain,             // elementary function outside its domain
        insufficient_order, // series order too low for the requested operation
        singular_division,  // division by a series with zero constant term
        chart_violation,    // V cos(gamma) = 0 or cos(beta) = 0
        singularity,        // flat-output determinant below threshold, singular Jacobian
        non_convergence,    // Newton failed to reach tolerance
        horizon,            // time outside the planned/simulated window
        divergence,         // simulation state blow-up
    };

    Error(Kind kind, const std::string& message)
        : std::runtime_error(message), kind_(kind) {}

    Kind kind() const { return kind_; }

private:
    Kind kind_;
};

} // namespace flatflight
