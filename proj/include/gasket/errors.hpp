#pragma once

#include <stdexcept>
#include <string>

namespace gasket {

// Raised when a model touches the boundary of its bounding triangle; callers may
// retry on a larger domain.
class DomainContact : public std::runtime_error {
public:
    explicit DomainContact(const std::string& what) : std::runtime_error(what) {}
};

// Numerical or model failure (non-convergence, violated invariant).
class ModelError : public std::runtime_error {
public:
    explicit ModelError(const std::string& what) : std::runtime_error(what) {}
};

// Invalid user input: malformed density spec, bad flags, unreadable files.
class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace gasket
