#pragma once

// Laurent polynomials over Z_m.
//
// The rule f = sum lambda_i x_i corresponds to F(X) = sum lambda_i X^{-i};
// note the sign flip on exponents. Composition of rules is multiplication of
// their polynomials, so iterates of a rule are powers of F.

#include "linca/ring.hpp"
#include "linca/rule.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>

namespace linca {

class LaurentPoly {
public:
    using Terms = std::map<std::int64_t, Elem>;

    explicit LaurentPoly(Modulus m) : mod_(std::move(m)) {}
    // Coefficients are reduced modulo m; zero terms are dropped.
    LaurentPoly(Modulus m, const Terms& terms);

    static LaurentPoly one(Modulus m) { return monomial(std::move(m), 1, 0); }
    static LaurentPoly monomial(Modulus m, Elem c, std::int64_t exponent);

    const Modulus& modulus() const noexcept { return mod_; }
    const Terms& terms() const noexcept { return terms_; }
    bool is_zero() const noexcept { return terms_.empty(); }
    bool is_monomial() const noexcept { return terms_.size() == 1; }
    Elem coeff(std::int64_t exponent) const noexcept;
    // (min exponent, max exponent); nullopt for the zero polynomial.
    std::optional<std::pair<std::int64_t, std::int64_t>> support() const;

    LaurentPoly scaled(Elem c) const;
    // Multiply by X^k.
    LaurentPoly shifted(std::int64_t k) const;

    // 2*X^-3 + 1*X^-2 + 2*X^-1 (mod 4)
    std::string render() const;

    bool operator==(const LaurentPoly& o) const noexcept { return mod_ == o.mod_ && terms_ == o.terms_; }

    friend LaurentPoly operator+(const LaurentPoly& a, const LaurentPoly& b);
    friend LaurentPoly operator-(const LaurentPoly& a, const LaurentPoly& b);
    friend LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b);

private:
    Modulus mod_;
    Terms terms_;
};

LaurentPoly from_rule(const LocalRule& rule);
// Errc::invalid_argument for the zero polynomial.
LocalRule to_rule(const LaurentPoly& poly);

LaurentPoly mul(const LaurentPoly& a, const LaurentPoly& b);
LaurentPoly pow(const LaurentPoly& a, std::uint64_t n);
// Reduce coefficients modulo d, where d | m and d >= 2.
LaurentPoly project(const LaurentPoly& a, std::uint64_t d);

}  // namespace linca
