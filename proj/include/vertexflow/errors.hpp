#pragma once

#include <stdexcept>
#include <string>

namespace vertexflow {

// Base for every error raised by the library. The CLI maps these onto exit codes.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class LatticeError : public Error {
public:
    enum class Kind { NotSquare, NotSymmetric, NotEven, NotPositiveDefinite, NonIntegerVector };
    LatticeError(Kind kind, const std::string &what) : Error(what), kind_(kind) {}
    Kind kind() const noexcept { return kind_; }

private:
    Kind kind_;
};

std::string to_string(LatticeError::Kind kind);

class TruncationExceeded : public Error {
public:
    using Error::Error;
};

class NotWeightOne : public Error {
public:
    using Error::Error;
};

class WeightOutOfRange : public Error {
public:
    using Error::Error;
};

class NonIntegralSpectrum : public Error {
public:
    using Error::Error;
};

class ConfigError : public Error {
public:
    using Error::Error;
};

class Unsatisfiable : public Error {
public:
    using Error::Error;
};

} // namespace vertexflow
