#pragma once

#include <stdexcept>
#include <string>

namespace qswitch {

/// Caller passed arguments that violate an operation's preconditions
/// (unknown label, dimension mismatch, malformed basis, missing settings).
class UsageError : public std::invalid_argument {
 public:
  explicit UsageError(const std::string& what) : std::invalid_argument(what) {}
};

/// A numerical object failed its validity contract (non-Hermitian state,
/// eigenvalue below the PSD tolerance, incomplete Kraus set).
class ValidityError : public std::domain_error {
 public:
  explicit ValidityError(const std::string& what) : std::domain_error(what) {}
};

}  // namespace qswitch

namespace qswitch {

/// Reading a config file or writing an output failed.
class IoError : public std::runtime_error {
 public:
  explicit IoError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace qswitch
