#ifndef BNSL_ERROR_HPP
#define BNSL_ERROR_HPP

#include <stdexcept>
#include <string>

namespace bnsl {

// Error categories map to distinct CLI exit codes (see tools/bnsl.cpp).
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// Bad schema, config file, or command-line usage.
class ConfigError : public Error {
public:
  using Error::Error;
};

// Malformed or inconsistent input data.
class DataError : public Error {
public:
  using Error::Error;
};

// Solver guard violations and external-solver failures.
class SolverError : public Error {
public:
  using Error::Error;
};

} // namespace bnsl

#endif
