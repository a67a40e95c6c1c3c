#pragma once

// Exact uniform-Bernoulli measures of cylinder events.
//
// An event such as T^{-n}U \cap V is never expanded into its cylinders.
// Instead it is a system of linear congruences over a contiguous window of
// coordinates; its measure is (#solutions) / m^(window size).

#include "linca/ring.hpp"
#include "linca/rule.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace linca {

using BigInt = boost::multiprecision::cpp_int;
using BigRational = boost::multiprecision::cpp_rational;

// {x : x_j = word[j - start], start <= j < start + |word|}
class Cylinder {
public:
    Cylinder(std::int64_t start, std::vector<Elem> word);

    std::int64_t start() const noexcept { return start_; }
    std::int64_t end() const noexcept { return start_ + static_cast<std::int64_t>(word_.size()) - 1; }
    std::size_t length() const noexcept { return word_.size(); }
    std::span<const Elem> word() const noexcept { return word_; }

    // Symbols reduced modulo d.
    Cylinder reduced(std::uint64_t d) const;
    // Throws Errc::invalid_argument if a symbol is >= m.
    void check_symbols(const Modulus& m) const;

    // "[a1,a2,...]@start"
    std::string render() const;

    bool operator==(const Cylinder&) const = default;

private:
    std::int64_t start_;
    std::vector<Elem> word_;
};

// "[a1,a2,...,ak]@i1"; Errc::parse on malformed input.
Cylinder parse_cylinder(std::string_view text);

struct ConstraintRow {
    std::vector<Elem> coeffs;  // one per window coordinate
    Elem rhs;
};

class ConstraintSystem {
public:
    // Empty window.
    explicit ConstraintSystem(Modulus m) : mod_(std::move(m)) {}
    ConstraintSystem(Modulus m, std::int64_t lo, std::int64_t hi);

    static ConstraintSystem diagonal(Modulus m, const Cylinder& c);

    const Modulus& modulus() const noexcept { return mod_; }
    bool empty_window() const noexcept { return hi_ < lo_; }
    std::int64_t window_lo() const noexcept { return lo_; }
    std::int64_t window_hi() const noexcept { return hi_; }
    std::size_t num_vars() const noexcept {
        return empty_window() ? 0 : static_cast<std::size_t>(hi_ - lo_ + 1);
    }
    const std::vector<ConstraintRow>& rows() const noexcept { return rows_; }

    // Grow the window to include [lo, hi]; existing rows are zero-padded.
    void widen(std::int64_t lo, std::int64_t hi);
    // sum_i coeffs[i] * x_{first + i} = rhs (mod m). Widens as needed.
    // Rows that reduce to 0 = 0 are dropped.
    void add_equation(std::int64_t first, std::span<const Elem> coeffs, Elem rhs);
    void append(const ConstraintSystem& other);

    ConstraintSystem projected(std::uint64_t d) const;

private:
    Modulus mod_;
    std::int64_t lo_ = 0;
    std::int64_t hi_ = -1;
    std::vector<ConstraintRow> rows_;
};

// Number of assignments of the window variables in Z_m satisfying every row.
BigInt count_solutions(const ConstraintSystem& sys);

// numerator / base^exponent, kept unreduced so that products of cylinder
// measures compare by integer arithmetic.
class ExactMeasure {
public:
    ExactMeasure(BigInt numerator, std::uint64_t base, std::uint64_t exponent);

    const BigInt& numerator() const noexcept { return num_; }
    std::uint64_t base() const noexcept { return base_; }
    std::uint64_t exponent() const noexcept { return exp_; }
    BigInt denominator() const;
    bool is_zero() const noexcept { return num_ == 0; }

    // Numerator over base^e, if that is an integer.
    std::optional<BigInt> numerator_at(std::uint64_t e) const;
    BigRational to_rational() const;
    // Lowest terms, "p/q" ("0" and "1" for the extremes).
    std::string render() const;

    bool operator==(const ExactMeasure& o) const;
    bool operator<(const ExactMeasure& o) const;

    // Same base: exponents add. Coprime bases: rescaled to a common exponent
    // over the product base.
    friend ExactMeasure operator*(const ExactMeasure& a, const ExactMeasure& b);
    // Same base only.
    friend ExactMeasure operator+(const ExactMeasure& a, const ExactMeasure& b);
    friend ExactMeasure abs_diff(const ExactMeasure& a, const ExactMeasure& b);

private:
    BigInt num_;
    std::uint64_t base_;
    std::uint64_t exp_;
};

ExactMeasure cylinder_measure(const Cylinder& U, const Modulus& m);
ExactMeasure system_measure(const ConstraintSystem& sys);

// Rows of T^{-n}U: for each coordinate j of U, sum_i c_i x_{i+j} = a_j where
// c are the coefficients of iterate_rule(rule, n). Negative n needs an
// invertible rule.
ConstraintSystem preimage_system(const LocalRule& rule, std::int64_t n, const Cylinder& U);

// mu(T^{-n}U \cap V)
ExactMeasure correlation(const LocalRule& rule, std::int64_t n, const Cylinder& U, const Cylinder& V);

// mu(A_0 \cap T^{-n_1}A_1 \cap ... \cap T^{-(n_1+...+n_k)}A_k), all gaps >= 1.
ExactMeasure correlation_multi(const LocalRule& rule, std::span<const std::int64_t> gaps,
                               std::span<const Cylinder> cylinders);

// Correlation recomputed in each Z_{p^k} component, ordered like the
// factorization. Their product equals correlation(rule, n, U, V).
std::vector<ExactMeasure> factor_correlation(const LocalRule& rule, std::int64_t n, const Cylinder& U,
                                             const Cylinder& V);

inline constexpr std::uint64_t kDefaultCellPairBudget = std::uint64_t{1} << 22;

// sum_{C,D} |mu(C \cap D) - mu(C) mu(D)| over the nonempty cells C of
// join_{k=-n..0} T^k xi and D of join_{k=N..N+n} T^k xi, where xi is the
// partition into cylinders on [-ell, ell] and T^k C is the set image.
// Errc::budget_exceeded when cell enumeration or pair count passes `budget`.
ExactMeasure independence_defect(const LocalRule& rule, std::int64_t ell, std::int64_t n, std::int64_t N,
                                 std::uint64_t budget = kDefaultCellPairBudget);

}  // namespace linca
