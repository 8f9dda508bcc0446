#pragma once

#include <stdexcept>
#include <string>

namespace primegrid {

// File / format / input-content problems. CLI exit code 3.
class data_error : public std::runtime_error {
public:
    explicit data_error(const std::string& what) : std::runtime_error(what) {}
};

// Non-convergence, overflow, exhausted budgets. CLI exit code 4.
class numeric_error : public std::runtime_error {
public:
    explicit numeric_error(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace primegrid
