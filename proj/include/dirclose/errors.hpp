#pragma once

#include <stdexcept>
#include <string>

namespace dirclose {

/// Malformed input data (pattern, spec or code files). Maps to exit code 65.
class FormatError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Bad arguments or violated preconditions. Maps to exit code 64.
class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A search exceeded its configured cell or state budget. Maps to exit code 2.
class BudgetExceeded : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Read outside the determined range of a range-restricted row.
class RangeError : public std::out_of_range {
public:
    using std::out_of_range::out_of_range;
};

}  // namespace dirclose
