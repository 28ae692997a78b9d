#pragma once

#include <stdexcept>
#include <string>

namespace causal {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed or unreadable input: bad JSON/CSV, unknown labels, bad flags.
class InputError : public Error {
 public:
  using Error::Error;
};

/// A graph violates a structural invariant (cycle, duplicate edge, rule closure).
class GraphError : public Error {
 public:
  using Error::Error;
};

/// The requested total effect is not identified from the given graph.
class NotIdentified : public Error {
 public:
  using Error::Error;
};

/// Too few samples (n <= |V|) or non-finite data.
class DegenerateSample : public Error {
 public:
  using Error::Error;
};

/// A linear system is numerically singular; carries the estimated condition number.
class IllConditioned : public Error {
 public:
  IllConditioned(const std::string& what, double condition_number)
      : Error(what), condition_number_(condition_number) {}

  double condition_number() const noexcept { return condition_number_; }

 private:
  double condition_number_;
};

}  // namespace causal
