#include "linca/automaton.hpp"

#include "linca/error.hpp"

#include <sstream>

namespace linca {

CyclicConfig::CyclicConfig(Modulus m, std::vector<Elem> cells) : mod_(std::move(m)), cells_(std::move(cells)) {
    if (cells_.empty()) throw Error(Errc::invalid_argument, "cyclic configuration needs at least one cell");
    for (auto c : cells_)
        if (c >= mod_.value())
            throw Error(Errc::invalid_argument, "cell value " + std::to_string(c) + " outside Z_" + std::to_string(mod_.value()));
}

Elem CyclicConfig::operator[](std::int64_t i) const noexcept {
    auto n = static_cast<std::int64_t>(cells_.size());
    std::int64_t r = i % n;
    return cells_[static_cast<std::size_t>(r < 0 ? r + n : r)];
}

CyclicConfig apply(const LocalRule& rule, const CyclicConfig& config) {
    if (!(rule.modulus() == config.modulus())) throw Error(Errc::modulus_mismatch, "rule and configuration moduli differ");
    if (config.size() < rule.width())
        throw Error(Errc::invalid_argument, "lattice of size " + std::to_string(config.size()) +
                                                " is smaller than the rule window " + std::to_string(rule.width()));
    const Modulus& m = rule.modulus();
    std::vector<Elem> out(config.size(), 0);
    for (std::size_t i = 0; i < out.size(); ++i) {
        Elem acc = 0;
        for (std::int64_t j = rule.left(); j <= rule.right(); ++j)
            acc = m.add(acc, m.mul(rule.coeff(j), config[static_cast<std::int64_t>(i) + j]));
        out[i] = acc;
    }
    return CyclicConfig(m, std::move(out));
}

std::set<std::int64_t> permutative_indices(const LocalRule& rule, std::uint64_t p) {
    bool is_factor = false;
    for (const auto& f : rule.modulus().factors()) is_factor |= (f.p == p);
    if (!is_factor)
        throw Error(Errc::invalid_argument, std::to_string(p) + " is not a prime factor of " +
                                                std::to_string(rule.modulus().value()));
    std::set<std::int64_t> out;
    for (std::int64_t j = rule.left(); j <= rule.right(); ++j)
        if (rule.coeff(j) % p != 0) out.insert(j);
    return out;
}

Invertibility invertibility(const LocalRule& rule) {
    JpMap jp;
    for (const auto& f : rule.modulus().factors()) {
        auto idx = permutative_indices(rule, f.p);
        if (idx.size() != 1) return NotInvertible{f.p, std::move(idx)};
        jp.push_back({f.p, *idx.begin()});
    }
    return jp;
}

bool is_invertible(const LocalRule& rule) { return std::holds_alternative<JpMap>(invertibility(rule)); }

JpMap require_jp_map(const LocalRule& rule) {
    auto inv = invertibility(rule);
    if (auto* bad = std::get_if<NotInvertible>(&inv)) {
        std::ostringstream os;
        os << "rule " << rule.render() << " is not invertible: modulo " << bad->witness_prime << " it has "
           << bad->indices.size() << " permutative indices";
        throw Error(Errc::not_invertible, os.str());
    }
    return std::get<JpMap>(inv);
}

namespace {

// Inverse of F over Z_{p^k}; F must have a unique unit coefficient mod p at
// rule index j.
LaurentPoly prime_power_inverse(const LaurentPoly& F, const PrimePower& pp, std::int64_t j) {
    const Modulus& mod = F.modulus();
    const Elem lambda = F.coeff(-j);
    const Elem lambda_inv = mod_inverse(lambda, mod);

    // p*H = F - lambda X^{-j}; every remaining coefficient is divisible by p.
    LaurentPoly::Terms h_terms;
    for (auto [e, c] : F.terms())
        if (e != -j) h_terms.emplace(e, c / pp.p);
    LaurentPoly H(mod, h_terms);

    LaurentPoly Htilde = H.shifted(j).scaled(mod.neg(lambda_inv));
    LaurentPoly pHtilde = Htilde.scaled(pp.p % mod.value());

    LaurentPoly series = LaurentPoly::one(mod);
    LaurentPoly term = LaurentPoly::one(mod);
    for (unsigned i = 1; i < pp.k; ++i) {
        term = term * pHtilde;
        series = series + term;
    }
    return series.shifted(j).scaled(lambda_inv);
}

}  // namespace

LaurentPoly inverse_poly(const LocalRule& rule) {
    const JpMap jp = require_jp_map(rule);
    const Modulus& m = rule.modulus();
    const auto& factors = m.factors();
    const LaurentPoly F = from_rule(rule);

    std::vector<LaurentPoly> parts;
    parts.reserve(factors.size());
    for (std::size_t i = 0; i < factors.size(); ++i)
        parts.push_back(prime_power_inverse(project(F, factors[i].pk), factors[i], jp[i].j));
    if (parts.size() == 1) return LaurentPoly(m, parts.front().terms());

    LaurentPoly::Terms combined;
    std::set<std::int64_t> exponents;
    for (const auto& part : parts)
        for (auto [e, c] : part.terms()) exponents.insert(e);
    std::vector<Elem> residues(factors.size());
    for (auto e : exponents) {
        for (std::size_t i = 0; i < parts.size(); ++i) residues[i] = parts[i].coeff(e);
        combined.emplace(e, crt_combine(residues, m));
    }
    return LaurentPoly(m, combined);
}

LocalRule inverse_rule(const LocalRule& rule) { return to_rule(inverse_poly(rule)); }

LocalRule iterate_rule(const LocalRule& rule, std::int64_t n) {
    if (n == 0) return LocalRule::identity(rule.modulus());
    LaurentPoly base = n > 0 ? from_rule(rule) : inverse_poly(rule);
    std::uint64_t e = n > 0 ? static_cast<std::uint64_t>(n) : static_cast<std::uint64_t>(-(n + 1)) + 1;
    LaurentPoly p = pow(base, e);
    if (p.is_zero()) return LocalRule::zero(rule.modulus());
    return to_rule(p);
}

LocalRule project_rule(const LocalRule& rule, std::uint64_t d) {
    const std::uint64_t m = rule.modulus().value();
    if (d < 2 || m % d != 0)
        throw Error(Errc::invalid_argument, std::to_string(d) + " is not a divisor >= 2 of " + std::to_string(m));
    return LocalRule(Modulus(d), rule.left(), rule.coeffs());
}

}  // namespace linca
