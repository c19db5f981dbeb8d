#pragma once

#include <stdexcept>
#include <string>

namespace drinlab {

/// Base class for all library errors.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A requested computation exceeds the configured desk-scale bounds.
class SizeBoundError : public Error {
public:
    using Error::Error;
};

/// Operands belong to different fields / rings / moduli.
class MismatchError : public Error {
public:
    using Error::Error;
};

/// Inversion of a non-unit.
class NonUnitError : public Error {
public:
    using Error::Error;
};

/// Reduction of a Drinfeld module at a place dividing its leading coefficient.
class BadReductionError : public Error {
public:
    using Error::Error;
};

/// Invalid argument combination (non-coprime moduli, P equal to the
/// characteristic place, malformed specs, ...).
class DomainError : public Error {
public:
    using Error::Error;
};

} // namespace drinlab
