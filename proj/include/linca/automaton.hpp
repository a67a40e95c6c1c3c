#pragma once

#include "linca/laurent.hpp"
#include "linca/ring.hpp"
#include "linca/rule.hpp"

#include <cstdint>
#include <set>
#include <span>
#include <variant>
#include <vector>

namespace linca {

// A configuration on the cyclic lattice Z/N, standing in for Z_m^Z. Results
// agree with the infinite system whenever N covers the rule window.
class CyclicConfig {
public:
    CyclicConfig(Modulus m, std::vector<Elem> cells);

    const Modulus& modulus() const noexcept { return mod_; }
    std::size_t size() const noexcept { return cells_.size(); }
    std::span<const Elem> cells() const noexcept { return cells_; }
    Elem operator[](std::int64_t i) const noexcept;

    bool operator==(const CyclicConfig&) const = default;

private:
    Modulus mod_;
    std::vector<Elem> cells_;
};

// (T_f x)_i = sum_j lambda_j x_{(i+j) mod N}. Requires N >= r - l + 1.
CyclicConfig apply(const LocalRule& rule, const CyclicConfig& config);

// Indices j in [l, r] with lambda_j != 0 (mod p). p must be a prime factor of m.
std::set<std::int64_t> permutative_indices(const LocalRule& rule, std::uint64_t p);

struct JpEntry {
    std::uint64_t p;
    std::int64_t j;

    bool operator==(const JpEntry&) const = default;
};
using JpMap = std::vector<JpEntry>;  // ordered like Modulus::factors()

struct NotInvertible {
    std::uint64_t witness_prime;
    std::set<std::int64_t> indices;  // empty or >= 2 elements

    bool operator==(const NotInvertible&) const = default;
};

using Invertibility = std::variant<NotInvertible, JpMap>;

// Ito's criterion: invertible iff for every prime p | m exactly one index is
// permutative modulo p.
Invertibility invertibility(const LocalRule& rule);
bool is_invertible(const LocalRule& rule);
// Throws Errc::not_invertible with the witness in the message.
JpMap require_jp_map(const LocalRule& rule);

// Per prime power p^k || m, F = lambda X^{-j} + p H is inverted by the
// finite geometric series lambda^{-1} X^{j} sum_{i<k} p^i Htilde^i with
// Htilde = -lambda^{-1} X^{j} H; components are recombined by CRT.
LaurentPoly inverse_poly(const LocalRule& rule);
LocalRule inverse_rule(const LocalRule& rule);

// Local rule of T_f^n. n < 0 raises the inverse to |n|.
LocalRule iterate_rule(const LocalRule& rule, std::int64_t n);

// Coefficients reduced modulo d (d | m, d >= 2), re-trimmed.
LocalRule project_rule(const LocalRule& rule, std::uint64_t d);

}  // namespace linca
