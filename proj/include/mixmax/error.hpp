#pragma once

#include <stdexcept>
#include <string>

namespace mixmax {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidArgument : public Error {
 public:
  using Error::Error;
};

class AllZeroSeed : public Error {
 public:
  AllZeroSeed() : Error("seed reduces to the all-zero vector") {}
};

class FormatError : public Error {
 public:
  using Error::Error;
};

class RangeError : public Error {
 public:
  using Error::Error;
};

class ModulusTooSmall : public Error {
 public:
  using Error::Error;
};

class BadFactorization : public Error {
 public:
  using Error::Error;
};

class StateSpaceTooLarge : public Error {
 public:
  using Error::Error;
};

class ConvergenceFailure : public Error {
 public:
  using Error::Error;
};

class InsufficientDraws : public Error {
 public:
  using Error::Error;
};

}  // namespace mixmax
