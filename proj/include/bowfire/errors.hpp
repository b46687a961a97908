#pragma once

#include <stdexcept>
#include <string>

namespace bowfire {

/// Invalid configuration value (bin count, k, K_sp, ...).
class ParameterError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

/// Training data does not allow building a model.
class TrainingError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Two masks or images that must align do not. Always a caller bug.
class DimensionMismatch : public std::logic_error {
public:
  using std::logic_error::logic_error;
};

/// Input has too little variation for the requested clustering.
class DegenerateInput : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// File could not be read, decoded or written.
class IoError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Serialized document is malformed or from an unsupported version.
class FormatError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

} // namespace bowfire
