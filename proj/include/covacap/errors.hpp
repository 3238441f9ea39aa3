#pragma once

#include <stdexcept>
#include <string>

namespace covacap {

// Base class for all recoverable validation failures raised by the library.
// Every subclass carries a human-readable witness of the violated contract.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

class NotAGroup : public Error {
 public:
  using Error::Error;
};

class NotASubgroup : public Error {
 public:
  using Error::Error;
};

class NotSquare : public Error {
 public:
  using Error::Error;
};

class NotHermitian : public Error {
 public:
  using Error::Error;
};

class NotCommuting : public Error {
 public:
  using Error::Error;
};

class NotProjective : public Error {
 public:
  using Error::Error;
};

class NotUnimodular : public Error {
 public:
  using Error::Error;
};

class NotCovariant : public Error {
 public:
  using Error::Error;
};

class NotIrreducible : public Error {
 public:
  using Error::Error;
};

class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

class InvalidState : public Error {
 public:
  using Error::Error;
};

class InvalidCharacters : public Error {
 public:
  using Error::Error;
};

class InvalidDistribution : public Error {
 public:
  using Error::Error;
};

class InvalidLambdas : public Error {
 public:
  using Error::Error;
};

class HypothesesNotMet : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  using Error::Error;
};

class ValidationError : public Error {
 public:
  using Error::Error;
};

}  // namespace covacap
