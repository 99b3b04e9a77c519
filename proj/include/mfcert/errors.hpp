#pragma once

#include <stdexcept>
#include <string>

namespace mfcert {

// Caller passed arguments that violate a documented precondition.
class usage_error : public std::invalid_argument {
public:
    explicit usage_error(const std::string& what) : std::invalid_argument(what) {}
};

// The request is well-formed but outside the supported case catalog.
class unsupported_case_error : public std::runtime_error {
public:
    explicit unsupported_case_error(const std::string& what) : std::runtime_error(what) {}
};

// A constructive certificate could not be produced.
class certificate_error : public std::runtime_error {
public:
    explicit certificate_error(const std::string& what) : std::runtime_error(what) {}
};

} // namespace mfcert
