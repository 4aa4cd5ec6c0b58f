#pragma once

#include <stdexcept>
#include <string>

namespace qll {

/// Base class for all toolkit errors.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// --- circuit / IR ---

class ControlOverlapError : public Error {
public:
    using Error::Error;
};

class UnsupportedOperationError : public Error {
public:
    using Error::Error;
};

class QubitInUseError : public Error {
public:
    using Error::Error;
};

// --- simulation ---

class MeasureInUnitaryRunError : public Error {
public:
    using Error::Error;
};

class TooLargeError : public Error {
public:
    using Error::Error;
};

class DimensionMismatchError : public Error {
public:
    using Error::Error;
};

class ZeroShotsError : public Error {
public:
    using Error::Error;
};

// --- locking ---

class ZeroLengthKeyError : public Error {
public:
    using Error::Error;
};

class KeyTooLongError : public Error {
public:
    using Error::Error;
};

class KeyLengthMismatchError : public Error {
public:
    using Error::Error;
};

class MeasurePresentError : public Error {
public:
    using Error::Error;
};

class MalformedLockedCircuitError : public Error {
public:
    using Error::Error;
};

class ResidualSuperpositionError : public Error {
public:
    using Error::Error;
};

// --- metrics ---

class ShotMismatchError : public Error {
public:
    using Error::Error;
};

class WidthMismatchError : public Error {
public:
    using Error::Error;
};

class AmbiguousOutcomeError : public Error {
public:
    using Error::Error;
};

// --- attack harness ---

class SweepTooLargeError : public Error {
public:
    using Error::Error;
};

} // namespace qll
