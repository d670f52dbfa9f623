#pragma once
#include <stdexcept>
#include <string>

namespace cab {

// Invalid mathematical input (bad delta, malformed reservoir, ...). CLI exit 2.
struct DomainError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Malformed experiment configuration or CLI usage. CLI exit 2.
struct ConfigError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Filesystem / stream failures. CLI exit 3.
struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace cab
