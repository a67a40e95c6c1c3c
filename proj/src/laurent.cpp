#include "linca/laurent.hpp"

#include "linca/error.hpp"

#include <sstream>
#include <vector>

namespace linca {

namespace {
void require_same(const Modulus& a, const Modulus& b) {
    if (!(a == b))
        throw Error(Errc::modulus_mismatch, "modulus mismatch: " + std::to_string(a.value()) + " vs " +
                                                std::to_string(b.value()));
}
}  // namespace

LaurentPoly::LaurentPoly(Modulus m, const Terms& terms) : mod_(std::move(m)) {
    for (auto [e, c] : terms) {
        Elem r = mod_.reduce_u(c);
        if (r != 0) terms_.emplace(e, r);
    }
}

LaurentPoly LaurentPoly::monomial(Modulus m, Elem c, std::int64_t exponent) {
    return LaurentPoly(std::move(m), Terms{{exponent, c}});
}

Elem LaurentPoly::coeff(std::int64_t exponent) const noexcept {
    auto it = terms_.find(exponent);
    return it == terms_.end() ? 0 : it->second;
}

std::optional<std::pair<std::int64_t, std::int64_t>> LaurentPoly::support() const {
    if (terms_.empty()) return std::nullopt;
    return std::make_pair(terms_.begin()->first, terms_.rbegin()->first);
}

LaurentPoly LaurentPoly::scaled(Elem c) const {
    LaurentPoly out(mod_);
    for (auto [e, v] : terms_) {
        Elem r = mod_.mul(v, c);
        if (r != 0) out.terms_.emplace(e, r);
    }
    return out;
}

LaurentPoly LaurentPoly::shifted(std::int64_t k) const {
    LaurentPoly out(mod_);
    for (auto [e, v] : terms_) out.terms_.emplace(e + k, v);
    return out;
}

std::string LaurentPoly::render() const {
    std::ostringstream os;
    if (terms_.empty()) {
        os << '0';
    } else {
        bool first = true;
        for (auto [e, c] : terms_) {
            if (!first) os << " + ";
            os << c;
            if (e != 0) os << "*X^" << e;
            first = false;
        }
    }
    os << " (mod " << mod_.value() << ')';
    return os.str();
}

LaurentPoly operator+(const LaurentPoly& a, const LaurentPoly& b) {
    require_same(a.mod_, b.mod_);
    LaurentPoly out = a;
    for (auto [e, c] : b.terms_) {
        Elem s = a.mod_.add(out.coeff(e), c);
        if (s == 0)
            out.terms_.erase(e);
        else
            out.terms_[e] = s;
    }
    return out;
}

LaurentPoly operator-(const LaurentPoly& a, const LaurentPoly& b) {
    return a + b.scaled(b.mod_.neg(1 % b.mod_.value()));
}

LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b) {
    require_same(a.mod_, b.mod_);
    const Modulus& m = a.mod_;
    LaurentPoly::Terms acc;
    for (auto [ea, ca] : a.terms_)
        for (auto [eb, cb] : b.terms_) {
            Elem& slot = acc[ea + eb];
            slot = m.add(slot, m.mul(ca, cb));
        }
    return LaurentPoly(m, acc);
}

LaurentPoly from_rule(const LocalRule& rule) {
    LaurentPoly::Terms terms;
    for (std::int64_t i = rule.left(); i <= rule.right(); ++i)
        if (Elem c = rule.coeff(i); c != 0) terms.emplace(-i, c);
    return LaurentPoly(rule.modulus(), terms);
}

LocalRule to_rule(const LaurentPoly& poly) {
    auto sup = poly.support();
    if (!sup) throw Error(Errc::invalid_argument, "the zero polynomial has no rule window");
    // Exponent e <-> index -e, so the window is [-max, -min].
    std::int64_t left = -sup->second;
    std::vector<Elem> coeffs(static_cast<std::size_t>(sup->second - sup->first + 1), 0);
    for (auto [e, c] : poly.terms()) coeffs[static_cast<std::size_t>(-e - left)] = c;
    return LocalRule(poly.modulus(), left, coeffs);
}

LaurentPoly mul(const LaurentPoly& a, const LaurentPoly& b) { return a * b; }

LaurentPoly pow(const LaurentPoly& a, std::uint64_t n) {
    LaurentPoly result = LaurentPoly::one(a.modulus());
    LaurentPoly base = a;
    while (n > 0) {
        if (n & 1) result = result * base;
        n >>= 1;
        if (n > 0) base = base * base;
    }
    return result;
}

LaurentPoly project(const LaurentPoly& a, std::uint64_t d) {
    const std::uint64_t m = a.modulus().value();
    if (d < 2 || m % d != 0)
        throw Error(Errc::invalid_argument, std::to_string(d) + " is not a divisor >= 2 of " + std::to_string(m));
    return LaurentPoly(Modulus(d), a.terms());
}

}  // namespace linca
