#pragma once

#include "linca/automaton.hpp"
#include "linca/rule.hpp"

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <variant>
#include <vector>

namespace linca {

class Cylinder;

namespace verdict {

struct NotInvertible {
    std::uint64_t witness_prime;
    std::set<std::int64_t> indices;
    // gcd(lambda_{-r}, ..., lambda_{-1}, lambda_1, ..., lambda_r, m) == 1
    bool general_ergodic;
};

struct BernoulliStrongMixing {
    JpMap jp;
};

struct NonErgodic {
    std::vector<std::uint64_t> primes;  // primes with j_p = 0
    JpMap jp;
};

}  // namespace verdict

using Verdict = std::variant<verdict::NotInvertible, verdict::BernoulliStrongMixing, verdict::NonErgodic>;

// Ergodicity test for general linear rules: the gcd of m and every
// coefficient except lambda_0 must be 1.
bool cattaneo_ergodic(const LocalRule& rule);

Verdict classify(const LocalRule& rule);
std::string verdict_name(const Verdict& v);

struct SupportBound {
    std::int64_t n;
    std::int64_t lo;
    std::int64_t hi;

    bool contains(std::int64_t i) const noexcept { return lo <= i && i <= hi; }
};

// Closed-form window containing the support of f^n over Z_{p^k}, for the
// projection of `rule` onto the given prime-power factor. n may be negative.
SupportBound prime_power_support_bound(const LocalRule& rule, const PrimePower& pp, std::int64_t n);

// Hull of the per-prime-power bounds. Requires an invertible rule, n != 0.
SupportBound support_bound(const LocalRule& rule, std::int64_t n);

// Least N such that, for every n >= N and every prime-power component, the
// coordinates constrained by T^{-n}U are disjoint from V's coordinates.
// Requires a BernoulliStrongMixing rule (Errc::not_mixing otherwise).
std::int64_t mixing_horizon(const LocalRule& rule, const Cylinder& U, const Cylinder& V);

// Separation time N = t p^{k-1}, t = max(1, ceil(2 ell / (p^{k-1} |j_p|))),
// maximized over the prime factors. Requires the mixing class.
std::int64_t separation_time(const LocalRule& rule, std::int64_t ell);

// Stable key=value report:
//   verdict=..., invertible=..., cattaneo_ergodic=..., jp.<p>=..., horizon=...
std::string verdict_report(const LocalRule& rule, const Verdict& v, std::optional<std::int64_t> horizon = {});

}  // namespace linca
