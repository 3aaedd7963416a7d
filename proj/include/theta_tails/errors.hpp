#pragma once

#include <stdexcept>
#include <string>

namespace theta_tails {

// Invalid arguments are reported with std::invalid_argument.

struct ResourceLimitError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct NumericFailure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct UnsupportedOperation : std::logic_error {
    using std::logic_error::logic_error;
};

}  // namespace theta_tails
