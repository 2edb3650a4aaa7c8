#pragma once

#include <stdexcept>
#include <string>

namespace fqsp {

// Raised when an iterative or search-based routine cannot reach its documented
// tolerance (root residuals, truncation-order searches, unitarity checks).
// Argument and precondition violations use std::invalid_argument instead.
class NumericalError : public std::runtime_error {
public:
    explicit NumericalError(const std::string& what_arg)
        : std::runtime_error(what_arg) {}
};

}  // namespace fqsp
