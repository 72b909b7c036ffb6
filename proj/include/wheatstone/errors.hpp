#pragma once

#include <stdexcept>
#include <string>

namespace wheatstone {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A parameter lies outside the domain of a formula (non-positive frequency, negative rate, ...).
class DomainError : public Error {
public:
    using Error::Error;
};

/// Malformed or inconsistent configuration document.
class ConfigError : public Error {
public:
    using Error::Error;
};

/// The detuning constraint between omega_2, omega_3 and J_0 cannot be met, so no dark mode exists.
class NoBalancePossible : public Error {
public:
    using Error::Error;
};

/// A balanced bridge was required but the configuration is off balance.
class NotBalanced : public Error {
public:
    using Error::Error;
};

/// An expansion or closed form was used outside the regime it was derived for.
class OutOfRegime : public Error {
public:
    using Error::Error;
};

/// A tuning sweep peaked at the edge of its grid, so the balance point is not bracketed.
class InconclusiveSweep : public Error {
public:
    using Error::Error;
};

}  // namespace wheatstone
