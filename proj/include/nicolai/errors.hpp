#pragma once

#include <stdexcept>
#include <string>

namespace nicolai {

// Base class for all errors raised by the library.
struct Error : std::runtime_error {
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// graded_commutator and friends require a homogeneous (purely even or
// purely odd) first argument.
struct NonHomogeneousArgument : Error {
  explicit NonHomogeneousArgument(const std::string& what) : Error(what) {}
};

// support() of the zero polynomial is undefined.
struct EmptySupport : Error {
  explicit EmptySupport(const std::string& what) : Error(what) {}
};

// Supercharge regions need M, N even and positive.
struct BadRegionParity : Error {
  explicit BadRegionParity(const std::string& what) : Error(what) {}
};

// Witness operators contain 1/g and 2/g^2.
struct ZeroCoupling : Error {
  explicit ZeroCoupling(const std::string& what) : Error(what) {}
};

struct SupportOutsideWindow : Error {
  explicit SupportOutsideWindow(const std::string& what) : Error(what) {}
};

struct WindowMismatch : Error {
  explicit WindowMismatch(const std::string& what) : Error(what) {}
};

struct WindowTooLarge : Error {
  explicit WindowTooLarge(const std::string& what) : Error(what) {}
};

struct SolverNoConvergence : Error {
  explicit SolverNoConvergence(const std::string& what) : Error(what) {}
};

struct NotNumberConserving : Error {
  explicit NotNumberConserving(const std::string& what) : Error(what) {}
};

struct ConfigParse : Error {
  explicit ConfigParse(const std::string& what) : Error(what) {}
};

struct EmptyInput : Error {
  explicit EmptyInput(const std::string& what) : Error(what) {}
};

}  // namespace nicolai
