#pragma once

#include <stdexcept>
#include <string>

namespace linca {

enum class Errc {
    invalid_argument,
    parse,
    not_invertible,
    modulus_mismatch,
    not_mixing,
    budget_exceeded,
    io,
};

// Every failure in the core surfaces as this exception; the C API maps
// `code()` onto linca_status.
class Error : public std::runtime_error {
public:
    Error(Errc code, const std::string& what) : std::runtime_error(what), code_(code) {}
    Errc code() const noexcept { return code_; }

private:
    Errc code_;
};

}  // namespace linca
