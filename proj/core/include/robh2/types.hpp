#pragma once

#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace robh2 {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

// Base class for all errors raised by this library.
struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// A block has inconsistent dimensions; the message names the offending block.
struct DimensionMismatch : Error {
    using Error::Error;
};

// A block that the plant layout requires to be zero is nonzero.
struct StructuralViolation : Error {
    using Error::Error;
};

// A computation produced NaN or infinity.
struct NonFiniteResult : Error {
    using Error::Error;
};

// A weight transfer function is not proper.
struct ImproperWeight : Error {
    using Error::Error;
};

// An interconnection specification does not fit the plant dimensions.
struct TopologyMismatch : Error {
    using Error::Error;
};

// An expression was evaluated with an assignment missing one of its variables.
struct MissingVariable : Error {
    using Error::Error;
};

// No certificate exists in the searched class of certificates.
struct InfeasibleError : Error {
    using Error::Error;
};

// The SDP solver broke down numerically or hit its iteration limit.
struct SolverFailure : Error {
    using Error::Error;
};

// The intermediate matrix V of a state-feedback design is numerically singular.
struct IllConditionedV : Error {
    using Error::Error;
};

// A recovery factor (M or L2) of a gain-scheduled design is numerically singular.
struct SingularFactor : Error {
    using Error::Error;
};

// The uncertainty loop I - D00*Delta is not invertible at some step.
struct IllPosedLoop : Error {
    using Error::Error;
};

// A frozen-parameter closed loop has spectral radius >= 1.
struct UnstableFrozenLoop : Error {
    using Error::Error;
};

inline void require(bool cond, const std::string& msg) {
    if (!cond) throw DimensionMismatch(msg);
}

}  // namespace robh2
