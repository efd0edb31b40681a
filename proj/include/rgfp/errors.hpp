#pragma once

#include <stdexcept>
#include <string>

namespace rgfp {

/// Coefficients outside the admissible class (negative, a = 0, ...).
class InvalidModel : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// A restricted-only operation was handed a general-mode model.
class ModeError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

/// An exact division that must succeed did not; the model is outside the
/// class or an expansion is wrong.
class ExactDivisionError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Numerical procedure could not establish its bracket/crossing.
class SolverError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace rgfp
