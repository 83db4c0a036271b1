#pragma once

#include <stdexcept>
#include <string>

namespace orgmod {

// Malformed input: bad files, inconsistent dimensions, out-of-range
// parameters. CLI maps this to exit code 1.
class ParseError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// Numeric integrity failure inside the pipeline: non-finite mean field,
// expectation rows drifting off the simplex. CLI maps this to exit code 2.
class NumericError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace orgmod
