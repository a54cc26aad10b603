#pragma once

#include <stdexcept>
#include <string>

namespace afx {

// Malformed input: bad JSON, shape mismatches, zero directions, non-box input
// to the box oracle. Maps to CLI exit code 2.
class input_error : public std::runtime_error {
public:
    explicit input_error(const std::string& what) : std::runtime_error(what) {}
};

// A documented precondition refused: degenerate polytope where a full-dimensional
// one is required, non-Delzant, non-summand, non-supercritical. Exit code 3.
class precondition_error : public std::runtime_error {
public:
    explicit precondition_error(const std::string& what) : std::runtime_error(what) {}
};

// Internal consistency failure: engine disagreement, theorem-contradicting
// output. Must never fire on a correct build. Exit code 4.
class internal_error : public std::runtime_error {
public:
    explicit internal_error(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace afx
