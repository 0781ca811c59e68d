#pragma once

#include <stdexcept>
#include <string>

namespace fusionkit {

/// Base class for every error raised by the toolkit.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed input: wrong shapes, out-of-range indices, unparsable files.
class InputError : public Error {
public:
    using Error::Error;
};

/// A nondegeneracy requirement on input data does not hold.
class DegeneracyError : public InputError {
public:
    using InputError::InputError;
};

/// The operation does not apply to this input (e.g. certificate search on
/// non-integral data).
class NotApplicableError : public InputError {
public:
    using InputError::InputError;
};

/// A configured cap (rank, group order, node budget) was exceeded.
class CapacityError : public Error {
public:
    using Error::Error;
};

/// An iterative numerical method did not converge or lost precision.
class NumericalError : public Error {
public:
    using Error::Error;
};

/// Well-formed input that contradicts the mathematics: a twisted ring that
/// fails the axioms, non-integral Verlinde output, an unsatisfiable search.
class InconsistencyError : public Error {
public:
    using Error::Error;
};

} // namespace fusionkit
