#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace officelab {

/// Dense location-bin index, 0..n-1.
using LocationId = int;
/// Person identifier as written in the config. Not necessarily dense.
using AgentId = int;
using SensorId = int;

/// A probability vector over location bins.
using Distribution = std::vector<double>;

enum class Tag { office, meeting_room, printer, corridor, lunch_area, other };

std::string_view to_string(Tag tag);
/// Throws ConfigError for an unknown tag name.
Tag parse_tag(std::string_view name);

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed or invalid configuration document.
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// shortest_path between disconnected locations.
class NoPathError : public Error {
 public:
  using Error::Error;
};

/// Power iteration hit its iteration cap.
class ConvergenceError : public Error {
 public:
  using Error::Error;
};

/// Every prior·likelihood product is zero.
class DegenerateEvidenceError : public Error {
 public:
  using Error::Error;
};

/// No path has positive probability under the decoder's model.
class NoFeasiblePathError : public Error {
 public:
  using Error::Error;
};

/// Argument violates an operation precondition.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

}  // namespace officelab
