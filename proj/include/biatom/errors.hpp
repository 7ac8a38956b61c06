#pragma once

#include <stdexcept>
#include <string>

namespace biatom {

/// Rejected parameters: anything the caller can fix by changing input.
class InvalidInput : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// A numerical procedure that could not meet its contract.
class NumericalFailure : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class QuadratureNonConvergence : public NumericalFailure {
public:
    QuadratureNonConvergence(const std::string& what, double best_estimate, double achieved_error)
        : NumericalFailure(what), best_estimate_(best_estimate), achieved_error_(achieved_error) {}

    double best_estimate() const noexcept { return best_estimate_; }
    double achieved_error() const noexcept { return achieved_error_; }

private:
    double best_estimate_;
    double achieved_error_;
};

class AmplitudeInvariantViolation : public NumericalFailure {
public:
    AmplitudeInvariantViolation(double t, double abs_sq);

    double time() const noexcept { return t_; }
    double abs_sq() const noexcept { return abs_sq_; }

private:
    double t_;
    double abs_sq_;
};

/// The coupled oscillator/field quadratic form is not positive definite.
class UnstableConfiguration : public InvalidInput {
public:
    using InvalidInput::InvalidInput;
};

class CalibrationFailure : public NumericalFailure {
public:
    using NumericalFailure::NumericalFailure;
};

}  // namespace biatom
