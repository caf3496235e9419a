// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <stdexcept>
#include <string>

namespace emlattice {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ParseError : public Error {
 public:
  using Error::Error;
};

class DomainError : public Error {
 public:
  using Error::Error;
};

class CapExceeded : public Error {
 public:
  using Error::Error;
};

// Raised when a truncated numerator is not a multiple of a linear form.
class NotDivisible : public Error {
 public:
  NotDivisible(int degree, const std::string& what)
      : Error(what), degree_(degree) {}
  int degree() const { return degree_; }

 private:
  int degree_;
};

class OrderUnderflow : public Error {
 public:
  using Error::Error;
};

}  // namespace emlattice
