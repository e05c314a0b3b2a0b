#pragma once

#include <stdexcept>

namespace permstat {

// Base class for all library errors.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ParseError : public Error {
 public:
  using Error::Error;
};
class DisjointnessViolation : public Error {
 public:
  using Error::Error;
};
class IndexOutOfRange : public Error {
 public:
  using Error::Error;
};
class NotStandard : public Error {
 public:
  using Error::Error;
};
class UnknownStatistic : public Error {
 public:
  using Error::Error;
};
class LengthOutOfRange : public Error {
 public:
  using Error::Error;
};
class IncompatibleStatistic : public Error {
 public:
  using Error::Error;
};
class NotARefinement : public Error {
 public:
  using Error::Error;
};
class TooFewVariables : public Error {
 public:
  using Error::Error;
};
class NotQuasisymmetric : public Error {
 public:
  using Error::Error;
};
class InfeasibleBound : public Error {
 public:
  using Error::Error;
};
class IoError : public Error {
 public:
  using Error::Error;
};
class SchemaError : public Error {
 public:
  using Error::Error;
};

}  // namespace permstat
