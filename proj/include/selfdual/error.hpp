#pragma once

#include <stdexcept>
#include <string>

namespace selfdual {

/// Raised when a numerical search cannot produce a result for valid inputs
/// (bracket runaway, negative at infinity, infeasible grid, ...).
class SearchError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace selfdual
