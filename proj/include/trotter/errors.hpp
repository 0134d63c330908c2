#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace trotter {

/// Base class for every error thrown by this library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Operands have incompatible dimensions.
class DimensionError : public Error {
public:
    using Error::Error;
};

/// A matrix or scalar input contains NaN/Inf entries.
class NonFiniteError : public Error {
public:
    using Error::Error;
};

/// Input violates a Hermiticity precondition.
class NonHermitianError : public Error {
public:
    using Error::Error;
};

/// An iterative kernel failed to reach its target accuracy.
class ConvergenceError : public Error {
public:
    using Error::Error;
};

/// Adaptive integration did not converge; carries the best estimate so far.
class QuadratureError : public Error {
public:
    QuadratureError(const std::string& msg, double best)
        : Error(msg), best_estimate(best) {}
    double best_estimate;
};

/// A beta coefficient is too small for the requested decoration.
/// `remedies` lists suggested ways out, in priority order.
class DegenerateBetaError : public Error {
public:
    DegenerateBetaError(const std::string& msg, std::vector<std::string> fixes)
        : Error(msg), remedies(std::move(fixes)) {}
    std::vector<std::string> remedies;
};

/// A linear solve met a condition-number gate.
class IllConditionedError : public Error {
public:
    using Error::Error;
};

/// The two propagator routes disagree beyond the allowed budget.
class OracleMismatchError : public Error {
public:
    OracleMismatchError(const std::string& msg, double dev)
        : Error(msg), deviation(dev) {}
    double deviation;
};

/// Adaptive step control shrank the step below representable resolution.
class StepUnderflowError : public Error {
public:
    using Error::Error;
};

/// A slope fit was requested on unusable data (too few or too small points).
class FitRangeError : public Error {
public:
    using Error::Error;
};

}  // namespace trotter
