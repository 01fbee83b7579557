#pragma once

#include <stdexcept>
#include <string>

namespace tdga {

// Invalid input or an unsupported request (bad braid word, multi-component
// infinity version, unassigned variable, ...).
class DomainError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// An internal identity failed to hold, e.g. a Phi matrix product that is not
// the identity. Always indicates a bug.
class VerificationError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace tdga
