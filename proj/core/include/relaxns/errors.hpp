#pragma once

#include <stdexcept>
#include <string>

namespace relaxns {

class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// Argument outside the mathematical domain of a closure (e.g. v <= 0).
class DomainError : public Error {
public:
  using Error::Error;
};

// Operation called in a regime it does not support (e.g. tau = 0 on the
// relaxed path).
class MisuseError : public Error {
public:
  using Error::Error;
};

// Invalid configuration, parameters or input files.
class ConfigError : public Error {
public:
  using Error::Error;
};

// Numerical breakdown during time stepping: positivity loss or non-finite
// values.
class NumericalAbort : public Error {
public:
  using Error::Error;
};

} // namespace relaxns
