#pragma once

#include <stdexcept>
#include <string>

namespace arboreal {

// Invalid arguments / failed validation.  CLI exit code 2.
struct argument_error : std::invalid_argument {
    explicit argument_error(const std::string& what) : std::invalid_argument(what) {}
};

// A configured bound (iteration degree, permutation points, enumeration size,
// step count) was exceeded.  CLI exit code 3.
struct resource_error : std::runtime_error {
    explicit resource_error(const std::string& what) : std::runtime_error(what) {}
};

// Two routes that must agree disagreed (direct computation vs combinatorial
// prediction, discriminant shape, ...).  CLI exit code 4.
struct consistency_error : std::logic_error {
    explicit consistency_error(const std::string& what) : std::logic_error(what) {}
};

}  // namespace arboreal
