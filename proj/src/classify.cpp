#include "linca/classify.hpp"

#include "linca/error.hpp"
#include "linca/measure.hpp"

#include <algorithm>
#include <cstdlib>
#include <sstream>

namespace linca {

bool cattaneo_ergodic(const LocalRule& rule) {
    // Zero-padding the window to [-r, r] leaves the gcd unchanged.
    std::uint64_t g = rule.modulus().value();
    for (std::int64_t i = rule.left(); i <= rule.right(); ++i)
        if (i != 0) g = gcd(g, rule.coeff(i));
    return g == 1;
}

Verdict classify(const LocalRule& rule) {
    auto inv = invertibility(rule);
    if (auto* bad = std::get_if<NotInvertible>(&inv))
        return verdict::NotInvertible{bad->witness_prime, bad->indices, cattaneo_ergodic(rule)};
    auto jp = std::get<JpMap>(std::move(inv));
    std::vector<std::uint64_t> stuck;
    for (const auto& e : jp)
        if (e.j == 0) stuck.push_back(e.p);
    if (!stuck.empty()) return verdict::NonErgodic{std::move(stuck), std::move(jp)};
    return verdict::BernoulliStrongMixing{std::move(jp)};
}

std::string verdict_name(const Verdict& v) {
    switch (v.index()) {
        case 0: return "NotInvertible";
        case 1: return "BernoulliStrongMixing";
        default: return "NonErgodic";
    }
}

namespace {

struct Component {
    LocalRule rule;  // projection onto Z_{p^k}
    PrimePower pp;
    std::int64_t j;
    std::int64_t q;  // p^{k-1}
};

Component component(const LocalRule& rule, const PrimePower& pp) {
    LocalRule rp = project_rule(rule, pp.pk);
    auto idx = permutative_indices(rp, pp.p);
    if (idx.size() != 1)
        throw Error(Errc::not_invertible, "rule " + rule.render() + " is not invertible modulo " + std::to_string(pp.p));
    return Component{std::move(rp), pp, *idx.begin(), static_cast<std::int64_t>(pp.pk / pp.p)};
}

SupportBound component_bound(const Component& c, std::int64_t n) {
    const std::int64_t a = n < 0 ? -n : n;
    const std::int64_t whole = a / c.q;  // number of full periods p^{k-1}
    const std::int64_t rest = a % c.q;
    const std::int64_t l = c.rule.left(), r = c.rule.right();
    if (n >= 0) {
        // F^{q} is a monomial at index q j, and f^{rest} spans [rest l, rest r].
        std::int64_t centre = whole * c.q * c.j;
        return {n, centre + rest * l, centre + rest * r};
    }
    // f^{-1} lies in [(l - j)(k - 1) - j, (r - j)(k - 1) - j].
    const std::int64_t km1 = static_cast<std::int64_t>(c.pp.k) - 1;
    const std::int64_t lbar = (l - c.j) * km1 - c.j;
    const std::int64_t rbar = (r - c.j) * km1 - c.j;
    std::int64_t centre = -whole * c.q * c.j;
    return {n, centre + rest * lbar, centre + rest * rbar};
}

void require_mixing(const LocalRule& rule) {
    auto v = classify(rule);
    if (!std::holds_alternative<verdict::BernoulliStrongMixing>(v))
        throw Error(Errc::not_mixing, "rule " + rule.render() + " is " + verdict_name(v) + ", not strong mixing");
}

}  // namespace

SupportBound prime_power_support_bound(const LocalRule& rule, const PrimePower& pp, std::int64_t n) {
    return component_bound(component(rule, pp), n);
}

SupportBound support_bound(const LocalRule& rule, std::int64_t n) {
    require_jp_map(rule);
    SupportBound hull{n, 0, 0};
    bool first = true;
    for (const auto& pp : rule.modulus().factors()) {
        auto b = prime_power_support_bound(rule, pp, n);
        hull.lo = first ? b.lo : std::min(hull.lo, b.lo);
        hull.hi = first ? b.hi : std::max(hull.hi, b.hi);
        first = false;
    }
    return hull;
}

std::int64_t mixing_horizon(const LocalRule& rule, const Cylinder& U, const Cylinder& V) {
    require_mixing(rule);
    std::int64_t horizon = 0;
    for (const auto& pp : rule.modulus().factors()) {
        Component c = component(rule, pp);
        const std::int64_t reach = std::llabs(U.start()) + std::llabs(U.end()) + std::llabs(V.start()) +
                                   std::llabs(V.end()) + (c.q - 1) * (std::llabs(c.rule.left()) + std::llabs(c.rule.right()));
        // Past `cutoff` the drift of q|j| per period outruns every offset above.
        const std::int64_t periods = reach / (c.q * std::llabs(c.j)) + 1;
        const std::int64_t cutoff = (periods + 1) * c.q;
        std::int64_t last_overlap = -1;
        for (std::int64_t n = 0; n <= cutoff; ++n) {
            auto b = component_bound(c, n);
            std::int64_t lo = U.start() + b.lo, hi = U.end() + b.hi;
            if (lo <= V.end() && V.start() <= hi) last_overlap = n;
        }
        horizon = std::max(horizon, last_overlap + 1);
    }
    return horizon;
}

std::int64_t separation_time(const LocalRule& rule, std::int64_t ell) {
    if (ell < 0) throw Error(Errc::invalid_argument, "ell must be >= 0");
    require_mixing(rule);
    std::int64_t N = 0;
    for (const auto& pp : rule.modulus().factors()) {
        Component c = component(rule, pp);
        const std::int64_t step = c.q * std::llabs(c.j);
        const std::int64_t t = std::max<std::int64_t>(1, (2 * ell + step - 1) / step);
        N = std::max(N, t * c.q);
    }
    return N;
}

std::string verdict_report(const LocalRule& rule, const Verdict& v, std::optional<std::int64_t> horizon) {
    std::ostringstream os;
    os << "verdict=" << verdict_name(v) << '\n';
    os << "invertible=" << (v.index() == 0 ? "false" : "true") << '\n';
    os << "cattaneo_ergodic=" << (cattaneo_ergodic(rule) ? "true" : "false") << '\n';
    auto jp_lines = [&](const JpMap& jp) {
        for (const auto& e : jp) os << "jp." << e.p << '=' << e.j << '\n';
    };
    if (auto* ni = std::get_if<verdict::NotInvertible>(&v)) {
        os << "witness_prime=" << ni->witness_prime << '\n';
        os << "witness_indices=";
        bool first = true;
        for (auto i : ni->indices) {
            os << (first ? "" : ",") << i;
            first = false;
        }
        os << '\n';
    } else if (auto* bsm = std::get_if<verdict::BernoulliStrongMixing>(&v)) {
        jp_lines(bsm->jp);
    } else {
        const auto& ne = std::get<verdict::NonErgodic>(v);
        jp_lines(ne.jp);
        os << "stuck_primes=";
        for (std::size_t i = 0; i < ne.primes.size(); ++i) os << (i ? "," : "") << ne.primes[i];
        os << '\n';
    }
    if (horizon) os << "horizon=" << *horizon << '\n';
    return os.str();
}

}  // namespace linca
