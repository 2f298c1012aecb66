#pragma once

#include <stdexcept>
#include <string>

namespace ntruke {

// Operand lengths disagree with each other or with the ring dimension.
class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Invalid parameter set, experiment configuration or CLI input.
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Modulus that is neither a prime nor a prime power.
class UnsupportedModulus : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class InvalidSpec : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Retry budget exhausted while drawing an invertible polynomial.
class SamplingFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Message of the wrong kind, or a role driven out of order.
class ProtocolError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// JSON document that does not match the message or transcript schema.
class SchemaError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace ntruke
