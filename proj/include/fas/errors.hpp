#pragma once

#include <stdexcept>
#include <string>

namespace fas {

// Solver breakdowns and violated numerical preconditions: a PSD matrix
// producing an eigenvalue below the clamping floor, a failed
// eigendecomposition. Distinct from std::domain_error, which is reserved
// for caller mistakes (bad arguments, out-of-range indices).
class numerical_error : public std::runtime_error {
public:
    explicit numerical_error(const std::string& what) : std::runtime_error(what) {}
};

// File and stream failures surfaced by the CSV layer and the CLI.
class io_error : public std::runtime_error {
public:
    explicit io_error(const std::string& what) : std::runtime_error(what) {}
};

} // namespace fas
