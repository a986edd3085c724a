#pragma once

#include <stdexcept>
#include <string>

namespace gmhd {

/// Base of every error thrown by the core library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Bad grid sizes, mismatched fields, malformed configuration.
/// `pointer` is a JSON pointer into the offending config document, when known.
class ConfigError : public Error {
public:
    explicit ConfigError(const std::string& what, std::string pointer = {})
        : Error(pointer.empty() ? what : pointer + ": " + what), pointer_(std::move(pointer)) {}
    const std::string& pointer() const noexcept { return pointer_; }

private:
    std::string pointer_;
};

/// A numerical parameter outside the admissible range (message names the bound).
class ParameterError : public Error {
public:
    using Error::Error;
};

/// Requested family or mode that is deliberately not decided by the library.
class UnsupportedError : public Error {
public:
    using Error::Error;
};

/// A sample whose normalizing norm vanished; callers discard it.
class DegenerateSample : public Error {
public:
    using Error::Error;
};

/// Non-finite values appeared while forming nonlinear products.
class BlowUpSignal : public Error {
public:
    using Error::Error;
};

class IoError : public Error {
public:
    using Error::Error;
};

} // namespace gmhd
