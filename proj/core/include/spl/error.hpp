#pragma once

#include <stdexcept>
#include <string>

namespace spl {

// All library failures surface as spl::Error; the message is the stable
// machine-readable part ("unbounded", "coincident sites", ...), optionally
// followed by ": " and detail.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace spl
