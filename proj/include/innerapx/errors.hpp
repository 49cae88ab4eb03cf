/**
 * @file errors.hpp
 * @brief Exception hierarchy shared by all innerapx modules.
 */

#ifndef INNERAPX_ERRORS_HPP
#define INNERAPX_ERRORS_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace innerapx {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidArgument : public Error {
 public:
  using Error::Error;
};

class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

class EmptyInput : public Error {
 public:
  using Error::Error;
};

/// A halfspace with an all-zero normal.
class InvalidHalfspace : public Error {
 public:
  using Error::Error;
};

/// Vertex enumeration on an empty polyhedron, or one whose recession cone
/// differs from the domination cone of the orientation.
class InfeasibleOrBadCone : public Error {
 public:
  using Error::Error;
};

/// A weighted-sum solver could not produce a solution.
class OracleError : public Error {
 public:
  using Error::Error;
};

/// An oracle returned a solution whose image does not violate the queried
/// halfspace.
class OracleContractError : public Error {
 public:
  using Error::Error;
};

class InfeasibleSolution : public Error {
 public:
  using Error::Error;
};

/// Brute-force enumeration would exceed its configured limit.
class TooLarge : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t line)
      : Error("line " + std::to_string(line) + ": " + what), line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

/// A representation metric is not defined for the given reference set
/// (e.g. a coordinate with zero range).
class MetricUndefined : public Error {
 public:
  using Error::Error;
};

class UnsupportedDimension : public Error {
 public:
  using Error::Error;
};

/// A hypervolume reference point that does not bound the input points.
class InvalidReference : public Error {
 public:
  using Error::Error;
};

}  // namespace innerapx

#endif  // INNERAPX_ERRORS_HPP
