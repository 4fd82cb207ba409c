#pragma once

#include <stdexcept>
#include <string>

namespace qpt {

// Invalid parameter values (maps to CLI exit code 2).
class domain_error : public std::domain_error {
public:
    explicit domain_error(const std::string& what) : std::domain_error(what) {}
};

// A configurable size cap was exceeded (maps to CLI exit code 3).
class cap_exceeded : public std::runtime_error {
public:
    explicit cap_exceeded(const std::string& what) : std::runtime_error(what) {}
};

// An internal cross-check failed (maps to CLI exit code 4).
class verification_error : public std::runtime_error {
public:
    explicit verification_error(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace qpt
