#pragma once

#include <stdexcept>
#include <string>

namespace gaussens {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class DimensionError : public Error {
public:
    using Error::Error;
};

// Parameter outside the mathematical domain of an operation (λ < 1, x < 2, ...).
class DomainError : public Error {
public:
    using Error::Error;
};

// Spectrum-level failure: not positive definite, unphysical symplectic spectrum.
class SpectralError : public Error {
public:
    using Error::Error;
};

class ConvergenceError : public Error {
public:
    using Error::Error;
};

class ConfigError : public Error {
public:
    using Error::Error;
};

class TuningError : public Error {
public:
    using Error::Error;
};

class InsufficientSamples : public Error {
public:
    using Error::Error;
};

class InsufficientCutoff : public Error {
public:
    InsufficientCutoff(const std::string& what, int required)
        : Error(what), required_cutoff_(required) {}
    int required_cutoff() const noexcept { return required_cutoff_; }

private:
    int required_cutoff_;
};

}  // namespace gaussens
