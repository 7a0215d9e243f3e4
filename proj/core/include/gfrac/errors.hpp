#pragma once

#include <stdexcept>
#include <string>

namespace gfrac {

/// Root of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An argument lies outside the domain an operation is defined on
/// (bad order, endpoint ordering, x outside the side-appropriate interval...).
class DomainError : public Error {
 public:
  using Error::Error;
};

}  // namespace gfrac
