#pragma once

#include "linca/ring.hpp"

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace linca {

// A linear local rule f(x_l, ..., x_r) = sum lambda_i x_i (mod m).
//
// Coefficients are stored trimmed: the window [left, right] starts and ends
// on a nonzero coefficient. The all-zero rule is representable (it shows up
// as a projection or a power of a nilpotent rule) and has window [0, 0].
class LocalRule {
public:
    // Coefficients are reduced modulo m and trimmed.
    LocalRule(Modulus m, std::int64_t left, std::span<const Elem> coeffs);
    LocalRule(Modulus m, std::int64_t left, std::initializer_list<std::int64_t> coeffs);

    static LocalRule zero(Modulus m);
    static LocalRule identity(Modulus m) { return monomial(std::move(m), 0, 1); }
    // c * x_index
    static LocalRule monomial(Modulus m, std::int64_t index, Elem c);

    const Modulus& modulus() const noexcept { return mod_; }
    std::int64_t left() const noexcept { return left_; }
    std::int64_t right() const noexcept { return left_ + static_cast<std::int64_t>(coeffs_.size()) - 1; }
    std::size_t width() const noexcept { return coeffs_.size(); }
    std::span<const Elem> coeffs() const noexcept { return coeffs_; }
    Elem coeff(std::int64_t index) const noexcept;
    bool is_zero() const noexcept { return coeffs_.size() == 1 && coeffs_[0] == 0; }

    // f(x_l..x_r) = c_l*x_l + ... (mod m), zero terms omitted.
    std::string render() const;

    bool operator==(const LocalRule& o) const noexcept {
        return mod_ == o.mod_ && left_ == o.left_ && coeffs_ == o.coeffs_;
    }

private:
    Modulus mod_;
    std::int64_t left_ = 0;
    std::vector<Elem> coeffs_;
};

// Rule file format:
//   m=<integer>
//   l=<integer>
//   coeffs=<c_l>,<c_{l+1}>,...,<c_r>
// Errors carry "<source>:<line>:<column>: " prefixes (Errc::parse).
LocalRule parse_rule(std::string_view text, std::string_view source = "<rule>");
LocalRule load_rule(const std::string& path);
std::string serialize_rule(const LocalRule& rule);

}  // namespace linca
