#pragma once

#include <stdexcept>
#include <string>

namespace jamopt {

// Base class for every failure the library reports deliberately.
struct Error : std::runtime_error {
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Bad configuration input: unknown fields, missing fields, out-of-range
// values. Messages name the offending field.
struct ConfigError : Error {
  using Error::Error;
};

// A solve failed at runtime: no Newton start converged, the integration
// produced a non-finite state, or the trajectory violated the proximity
// guard.
struct SolverError : Error {
  using Error::Error;
};

// Degenerate geometry encountered while evaluating the link model (zero
// separation between the two spacecraft). A special case of solver failure.
struct GeometryError : SolverError {
  using SolverError::SolverError;
};

// Filesystem problems: unreadable config, unwritable output directory.
struct IoError : Error {
  using Error::Error;
};

}  // namespace jamopt
