#pragma once

#include <stdexcept>
#include <string>

namespace orbicurve {

// Exit-code contract shared by library and CLI:
//   InputError -> 1, PremiseError -> 2, NumericError -> 3.
struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct PremiseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct NumericError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace orbicurve
