#pragma once

// Arithmetic in Z_m: factorization, inverses, CRT.
//
// Elements are std::uint64_t kept in the canonical range [0, m). Products go
// through unsigned __int128 before reduction, so any m < 2^32 is safe even
// when callers chain operations without intermediate checks.

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace linca {

using Elem = std::uint64_t;

inline constexpr std::uint64_t kMaxModulus = 0xFFFFFFFFull;

struct PrimePower {
    std::uint64_t p;
    unsigned k;
    std::uint64_t pk;  // p^k

    bool operator==(const PrimePower&) const = default;
};

class Modulus {
public:
    // Factorizes m; throws Errc::invalid_argument for m < 2 or m > kMaxModulus.
    explicit Modulus(std::uint64_t m);

    std::uint64_t value() const noexcept { return m_; }
    const std::vector<PrimePower>& factors() const noexcept { return factors_; }
    bool is_prime_power() const noexcept { return factors_.size() == 1; }

    Elem reduce(std::int64_t x) const noexcept;
    Elem reduce_u(std::uint64_t x) const noexcept { return x % m_; }
    Elem add(Elem a, Elem b) const noexcept;
    Elem sub(Elem a, Elem b) const noexcept;
    Elem neg(Elem a) const noexcept { return a == 0 ? 0 : m_ - a; }
    Elem mul(Elem a, Elem b) const noexcept;
    Elem pow(Elem a, std::uint64_t e) const noexcept;
    bool is_unit(Elem a) const noexcept;

    // "2^2*3" style rendering of the factorization.
    std::string factor_string() const;

    bool operator==(const Modulus& o) const noexcept { return m_ == o.m_; }

private:
    std::uint64_t m_;
    std::vector<PrimePower> factors_;
};

std::vector<PrimePower> factorize(std::uint64_t m);

std::uint64_t gcd(std::uint64_t a, std::uint64_t b) noexcept;

// b with a*b = 1 (mod m). Errc::invalid_argument when gcd(a, m) > 1.
Elem mod_inverse(Elem a, const Modulus& m);
Elem mod_inverse(Elem a, std::uint64_t m);

// Unique x in [0, m) with x = residues[i] (mod p_i^k_i), residues aligned
// with m.factors().
Elem crt_combine(std::span<const Elem> residues, const Modulus& m);

std::uint64_t euler_phi(std::uint64_t m);

// p-adic valuation of a as an element of Z_{p^k}; returns k for a = 0.
unsigned valuation(Elem a, std::uint64_t p, unsigned k) noexcept;

}  // namespace linca
