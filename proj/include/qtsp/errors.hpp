#pragma once

#include <stdexcept>
#include <string>

namespace qtsp {

/// Thrown when a requested computation exceeds a configured resource budget
/// (enumeration size, statevector size, ...). The message names the limit.
class resource_error : public std::runtime_error {
public:
    explicit resource_error(const std::string& what) : std::runtime_error(what) {}
};

} // namespace qtsp
