#pragma once

#include <stdexcept>
#include <string>

namespace odmts {

/// Malformed or inconsistent input data (files, ids, missing matrix entries).
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An operation was called outside its mathematical domain.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// A solver could not reach its stopping criterion.
class SolverError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace odmts
