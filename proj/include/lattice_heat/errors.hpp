#pragma once

#include <stdexcept>
#include <string>

namespace lattice_heat {

/// An iterative procedure did not reach its tolerance within its budget.
class ConvergenceError : public std::runtime_error {
public:
    explicit ConvergenceError(const std::string& what) : std::runtime_error(what) {}
};

/// An internal exactness check failed (e.g. a division that must be exact).
class ExactnessError : public std::logic_error {
public:
    explicit ExactnessError(const std::string& what) : std::logic_error(what) {}
};

}  // namespace lattice_heat
