#pragma once

#include <stdexcept>
#include <string>

namespace l2approx {

// Raised for violated preconditions, malformed input and unsupported requests.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// A computation could not certify its result at the working precision.
class PrecisionError : public Error {
public:
    using Error::Error;
};

}  // namespace l2approx
