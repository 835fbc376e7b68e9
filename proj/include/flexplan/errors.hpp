#pragma once

#include <stdexcept>
#include <string>

namespace flexplan {

/// Base class of every error raised by the planning engine.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Input document does not match its schema. `path()` is a JSON pointer
/// into the offending document, e.g. `/links/3/spans/0/length_km`.
class SchemaError : public Error {
public:
    SchemaError(std::string path, const std::string& what)
        : Error(path + ": " + what), path_(std::move(path)) {}
    const std::string& path() const noexcept { return path_; }

private:
    std::string path_;
};

/// Input is well-formed but violates a model invariant.
class ValidationError : public Error {
public:
    using Error::Error;
};

class IoError : public Error {
public:
    using Error::Error;
};

class RoutingInfeasible : public Error {
public:
    using Error::Error;
};

class RegenerationInfeasible : public Error {
public:
    using Error::Error;
};

/// Adaptive quadrature did not reach its tolerance; the best estimate is kept.
class NumericalError : public Error {
public:
    NumericalError(const std::string& what, double estimate, double error)
        : Error(what), estimate_(estimate), error_(error) {}
    double estimate() const noexcept { return estimate_; }
    double error_estimate() const noexcept { return error_; }

private:
    double estimate_;
    double error_;
};

class PlacementOverflow : public Error {
public:
    using Error::Error;
};

class BoundUnavailable : public Error {
public:
    using Error::Error;
};

class DemandBlocked : public Error {
public:
    using Error::Error;
};

class SpectrumBlocked : public Error {
public:
    using Error::Error;
};

}  // namespace flexplan
