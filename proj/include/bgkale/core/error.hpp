#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace bgkale {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Invalid user input: grid parameters, scenario files, CLI arguments.
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// A least-squares stencil whose normal matrix is singular or too badly
/// conditioned to solve.
class DegenerateStencil : public Error {
 public:
  DegenerateStencil(const std::string& what, std::size_t point = npos)
      : Error(what), point_(point) {}

  static constexpr std::size_t npos = static_cast<std::size_t>(-1);
  std::size_t point() const { return point_; }

 private:
  std::size_t point_;
};

/// A state that cannot be relaxed or evaluated: negative density, a
/// degenerate Maxwellian, a runaway velocity.
class UnphysicalState : public Error {
 public:
  UnphysicalState(const std::string& what, std::size_t point = npos)
      : Error(what), point_(point) {}

  static constexpr std::size_t npos = static_cast<std::size_t>(-1);
  std::size_t point() const { return point_; }

 private:
  std::size_t point_;
};

/// Not enough neighbours to interpolate at a query position.
class InsufficientNeighbors : public Error {
 public:
  using Error::Error;
};

/// Point management could not restore a valid cloud.
class ManagementError : public Error {
 public:
  using Error::Error;
};

}  // namespace bgkale
