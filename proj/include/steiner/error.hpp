#pragma once

#include <stdexcept>
#include <string>

namespace steiner {

/// Raised when an operation's precondition does not hold (cut locus,
/// nonsmooth point, inadmissible ball, ...).
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace steiner
