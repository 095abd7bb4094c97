#pragma once

#include <stdexcept>
#include <string>

namespace dcgra {

// Base class for everything thrown by the library.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Malformed input text (edge list, mapping file, config file).
struct ParseError : Error {
  using Error::Error;
};

// A structural invariant does not hold (bad graph, bad config, bad mapping).
struct ValidationError : Error {
  using Error::Error;
};

// Instance does not fit the configured hardware (DRF slots, routing tables,
// offset range, slice register width, scratchpad).
struct CapacityError : Error {
  using Error::Error;
};

// Internal simulator fault (livelock watchdog, table corruption). Any of
// these indicates a bug, not a user error.
struct SimError : Error {
  using Error::Error;
};

}  // namespace dcgra
