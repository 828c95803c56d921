#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace nlosbench {

/// Base class of every error thrown by this library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// --- trace ------------------------------------------------------------

class MalformedRow : public Error {
 public:
  MalformedRow(std::size_t line, const std::string& detail)
      : Error("malformed row at line " + std::to_string(line) + ": " + detail),
        line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

class EmptyTrace : public Error {
 public:
  EmptyTrace() : Error("trace contains no data rows") {}
};

class NoTransmissions : public Error {
 public:
  NoTransmissions() : Error("tx log contains no entries") {}
};

class InvalidIntervals : public Error {
 public:
  using Error::Error;
};

// --- simgen -----------------------------------------------------------

class DomainError : public Error {
 public:
  using Error::Error;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

// --- features ---------------------------------------------------------

class NonUniformSpacing : public Error {
 public:
  NonUniformSpacing(std::size_t slot_index, const std::string& detail)
      : Error("non-uniform spacing at slot " + std::to_string(slot_index) +
              ": " + detail),
        slot_index_(slot_index) {}
  std::size_t slot_index() const { return slot_index_; }

 private:
  std::size_t slot_index_;
};

// --- learn ------------------------------------------------------------

class SingleClass : public Error {
 public:
  SingleClass() : Error("training set contains a single class") {}
};

class TooFewSamples : public Error {
 public:
  using Error::Error;
};

class EmptyModel : public Error {
 public:
  EmptyModel() : Error("model has no support vectors") {}
};

// --- eval -------------------------------------------------------------

class LengthMismatch : public Error {
 public:
  using Error::Error;
};

class EmptyInput : public Error {
 public:
  EmptyInput() : Error("empty input") {}
};

class KTooLarge : public Error {
 public:
  using Error::Error;
};

// --- io ---------------------------------------------------------------

class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace nlosbench
