#pragma once

#include <stdexcept>

namespace rsq {

/// A computation would exceed a configured size ceiling.
class ResourceLimit : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A produced certificate or identity failed its exact re-check.
class VerificationFailure : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace rsq
