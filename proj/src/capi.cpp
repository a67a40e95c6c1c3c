#include "linca/linca.h"

#include "linca/automaton.hpp"
#include "linca/classify.hpp"
#include "linca/error.hpp"
#include "linca/laurent.hpp"
#include "linca/measure.hpp"

#include <cstdlib>
#include <cstring>
#include <new>
#include <string>

struct linca_rule {
    linca::LocalRule value;
};
struct linca_cylinder {
    linca::Cylinder value;
};
struct linca_measure {
    linca::ExactMeasure value;
};

namespace {

thread_local std::string g_last_error;

linca_status to_status(linca::Errc code) {
    switch (code) {
        case linca::Errc::invalid_argument: return LINCA_ERR_INVALID_ARGUMENT;
        case linca::Errc::parse: return LINCA_ERR_PARSE;
        case linca::Errc::not_invertible: return LINCA_ERR_NOT_INVERTIBLE;
        case linca::Errc::modulus_mismatch: return LINCA_ERR_MODULUS_MISMATCH;
        case linca::Errc::not_mixing: return LINCA_ERR_NOT_MIXING;
        case linca::Errc::budget_exceeded: return LINCA_ERR_BUDGET;
        case linca::Errc::io: return LINCA_ERR_IO;
    }
    return LINCA_ERR_INTERNAL;
}

linca_status fail(linca_status s, std::string msg) {
    g_last_error = std::move(msg);
    return s;
}

template <typename Fn>
linca_status guarded(Fn&& fn) noexcept {
    try {
        fn();
        return LINCA_OK;
    } catch (const linca::Error& e) {
        return fail(to_status(e.code()), e.what());
    } catch (const std::bad_alloc&) {
        return fail(LINCA_ERR_INTERNAL, "out of memory");
    } catch (const std::exception& e) {
        return fail(LINCA_ERR_INTERNAL, e.what());
    } catch (...) {
        return fail(LINCA_ERR_INTERNAL, "unknown error");
    }
}

void require(const void* p, const char* what) {
    if (p == nullptr) throw linca::Error(linca::Errc::invalid_argument, std::string(what) + " must not be NULL");
}

char* dup_string(const std::string& s) {
    char* out = static_cast<char*>(std::malloc(s.size() + 1));
    if (!out) throw std::bad_alloc();
    std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

linca_rule* wrap(linca::LocalRule r) { return new linca_rule{std::move(r)}; }
linca_measure* wrap(linca::ExactMeasure m) { return new linca_measure{std::move(m)}; }

}  // namespace

extern "C" {

const char* linca_version(void) { return "1.0.0"; }

const char* linca_last_error(void) { return g_last_error.c_str(); }

const char* linca_status_name(linca_status status) {
    switch (status) {
        case LINCA_OK: return "ok";
        case LINCA_ERR_INVALID_ARGUMENT: return "invalid argument";
        case LINCA_ERR_PARSE: return "parse error";
        case LINCA_ERR_NOT_INVERTIBLE: return "rule not invertible";
        case LINCA_ERR_MODULUS_MISMATCH: return "modulus mismatch";
        case LINCA_ERR_NOT_MIXING: return "rule not strong mixing";
        case LINCA_ERR_BUDGET: return "budget exhausted";
        case LINCA_ERR_IO: return "i/o error";
        case LINCA_ERR_INTERNAL: return "internal error";
    }
    return "unknown status";
}

void linca_string_free(char* s) { std::free(s); }

// ---- rules

linca_status linca_rule_create(uint64_t m, int64_t l, const uint64_t* coeffs, size_t count, linca_rule** out) {
    return guarded([&] {
        require(out, "out");
        if (count == 0) throw linca::Error(linca::Errc::invalid_argument, "rule needs at least one coefficient");
        require(coeffs, "coeffs");
        *out = wrap(linca::LocalRule(linca::Modulus(m), l, std::span<const uint64_t>(coeffs, count)));
    });
}

linca_status linca_rule_parse(const char* text, const char* source_name, linca_rule** out) {
    return guarded([&] {
        require(text, "text");
        require(out, "out");
        *out = wrap(linca::parse_rule(text, source_name ? source_name : "<rule>"));
    });
}

linca_status linca_rule_load(const char* path, linca_rule** out) {
    return guarded([&] {
        require(path, "path");
        require(out, "out");
        *out = wrap(linca::load_rule(path));
    });
}

void linca_rule_free(linca_rule* rule) { delete rule; }

uint64_t linca_rule_modulus(const linca_rule* rule) { return rule ? rule->value.modulus().value() : 0; }
int64_t linca_rule_left(const linca_rule* rule) { return rule ? rule->value.left() : 0; }
int64_t linca_rule_right(const linca_rule* rule) { return rule ? rule->value.right() : 0; }
uint64_t linca_rule_coeff(const linca_rule* rule, int64_t i) { return rule ? rule->value.coeff(i) : 0; }

int linca_rule_equal(const linca_rule* a, const linca_rule* b) {
    if (!a || !b) return a == b;
    return a->value == b->value;
}

linca_status linca_rule_render(const linca_rule* rule, char** out) {
    return guarded([&] {
        require(rule, "rule");
        require(out, "out");
        *out = dup_string(rule->value.render());
    });
}

linca_status linca_rule_render_polynomial(const linca_rule* rule, char** out) {
    return guarded([&] {
        require(rule, "rule");
        require(out, "out");
        *out = dup_string(linca::from_rule(rule->value).render());
    });
}

linca_status linca_rule_serialize(const linca_rule* rule, char** out) {
    return guarded([&] {
        require(rule, "rule");
        require(out, "out");
        *out = dup_string(linca::serialize_rule(rule->value));
    });
}

linca_status linca_rule_inverse(const linca_rule* rule, linca_rule** out) {
    return guarded([&] {
        require(rule, "rule");
        require(out, "out");
        *out = wrap(linca::inverse_rule(rule->value));
    });
}

linca_status linca_rule_iterate(const linca_rule* rule, int64_t n, linca_rule** out) {
    return guarded([&] {
        require(rule, "rule");
        require(out, "out");
        *out = wrap(linca::iterate_rule(rule->value, n));
    });
}

linca_status linca_rule_compose(const linca_rule* a, const linca_rule* b, linca_rule** out) {
    return guarded([&] {
        require(a, "a");
        require(b, "b");
        require(out, "out");
        auto prod = linca::from_rule(a->value) * linca::from_rule(b->value);
        *out = wrap(prod.is_zero() ? linca::LocalRule::zero(a->value.modulus()) : linca::to_rule(prod));
    });
}

linca_status linca_rule_project(const linca_rule* rule, uint64_t d, linca_rule** out) {
    return guarded([&] {
        require(rule, "rule");
        require(out, "out");
        *out = wrap(linca::project_rule(rule->value, d));
    });
}

linca_status linca_rule_apply(const linca_rule* rule, const uint64_t* cells, size_t n, uint64_t* out_cells) {
    return guarded([&] {
        require(rule, "rule");
        require(cells, "cells");
        require(out_cells, "out_cells");
        const auto& m = rule->value.modulus();
        for (size_t i = 0; i < n; ++i)
            if (cells[i] >= m.value())
                throw linca::Error(linca::Errc::invalid_argument,
                                   "cell " + std::to_string(i) + " holds " + std::to_string(cells[i]) + ", outside Z_" +
                                       std::to_string(m.value()));
        linca::CyclicConfig cfg(m, std::vector<linca::Elem>(cells, cells + n));
        auto next = linca::apply(rule->value, cfg);
        std::copy(next.cells().begin(), next.cells().end(), out_cells);
    });
}

// ---- classification

linca_status linca_classify(const linca_rule* rule, linca_verdict* out) {
    return guarded([&] {
        require(rule, "rule");
        require(out, "out");
        const auto& r = rule->value;
        linca_verdict v{};
        const auto& fs = r.modulus().factors();
        v.prime_count = fs.size();
        for (size_t i = 0; i < fs.size(); ++i) v.primes[i] = fs[i].p;
        v.cattaneo_ergodic = linca::cattaneo_ergodic(r) ? 1 : 0;
        auto verdict = linca::classify(r);
        auto fill_jp = [&](const linca::JpMap& jp) {
            for (size_t i = 0; i < jp.size(); ++i) v.jp[i] = jp[i].j;
        };
        if (auto* ni = std::get_if<linca::verdict::NotInvertible>(&verdict)) {
            v.kind = LINCA_VERDICT_NOT_INVERTIBLE;
            v.witness_prime = ni->witness_prime;
            v.witness_index_count = ni->indices.size();
        } else if (auto* bsm = std::get_if<linca::verdict::BernoulliStrongMixing>(&verdict)) {
            v.kind = LINCA_VERDICT_BERNOULLI_STRONG_MIXING;
            fill_jp(bsm->jp);
        } else {
            v.kind = LINCA_VERDICT_NON_ERGODIC;
            fill_jp(std::get<linca::verdict::NonErgodic>(verdict).jp);
        }
        *out = v;
    });
}

linca_status linca_classify_report(const linca_rule* rule, const linca_cylinder* U, const linca_cylinder* V,
                                   char** out) {
    return guarded([&] {
        require(rule, "rule");
        require(out, "out");
        auto verdict = linca::classify(rule->value);
        std::optional<std::int64_t> horizon;
        if (U && V && std::holds_alternative<linca::verdict::BernoulliStrongMixing>(verdict))
            horizon = linca::mixing_horizon(rule->value, U->value, V->value);
        *out = dup_string(linca::verdict_report(rule->value, verdict, horizon));
    });
}

linca_status linca_support_bound(const linca_rule* rule, int64_t n, int64_t* lo, int64_t* hi) {
    return guarded([&] {
        require(rule, "rule");
        require(lo, "lo");
        require(hi, "hi");
        auto b = linca::support_bound(rule->value, n);
        *lo = b.lo;
        *hi = b.hi;
    });
}

linca_status linca_mixing_horizon(const linca_rule* rule, const linca_cylinder* U, const linca_cylinder* V,
                                  int64_t* out) {
    return guarded([&] {
        require(rule, "rule");
        require(U, "U");
        require(V, "V");
        require(out, "out");
        *out = linca::mixing_horizon(rule->value, U->value, V->value);
    });
}

linca_status linca_separation_time(const linca_rule* rule, int64_t ell, int64_t* out) {
    return guarded([&] {
        require(rule, "rule");
        require(out, "out");
        *out = linca::separation_time(rule->value, ell);
    });
}

// ---- cylinders and measures

linca_status linca_cylinder_create(int64_t start, const uint64_t* word, size_t len, linca_cylinder** out) {
    return guarded([&] {
        require(out, "out");
        if (len == 0) throw linca::Error(linca::Errc::invalid_argument, "cylinder word must be nonempty");
        require(word, "word");
        *out = new linca_cylinder{linca::Cylinder(start, std::vector<linca::Elem>(word, word + len))};
    });
}

linca_status linca_cylinder_parse(const char* text, linca_cylinder** out) {
    return guarded([&] {
        require(text, "text");
        require(out, "out");
        *out = new linca_cylinder{linca::parse_cylinder(text)};
    });
}

void linca_cylinder_free(linca_cylinder* c) { delete c; }

size_t linca_cylinder_length(const linca_cylinder* c) { return c ? c->value.length() : 0; }

void linca_measure_free(linca_measure* mu) { delete mu; }

linca_status linca_measure_numerator(const linca_measure* mu, char** out_decimal) {
    return guarded([&] {
        require(mu, "mu");
        require(out_decimal, "out_decimal");
        *out_decimal = dup_string(mu->value.numerator().str());
    });
}

uint64_t linca_measure_base(const linca_measure* mu) { return mu ? mu->value.base() : 0; }
uint64_t linca_measure_exponent(const linca_measure* mu) { return mu ? mu->value.exponent() : 0; }

linca_status linca_measure_numerator_at(const linca_measure* mu, uint64_t exponent, char** out_decimal) {
    return guarded([&] {
        require(mu, "mu");
        require(out_decimal, "out_decimal");
        auto num = mu->value.numerator_at(exponent);
        if (!num)
            throw linca::Error(linca::Errc::invalid_argument,
                               "measure " + mu->value.render() + " has no integral numerator over base^" +
                                   std::to_string(exponent));
        *out_decimal = dup_string(num->str());
    });
}

linca_status linca_measure_render(const linca_measure* mu, char** out) {
    return guarded([&] {
        require(mu, "mu");
        require(out, "out");
        *out = dup_string(mu->value.render());
    });
}

int linca_measure_compare(const linca_measure* a, const linca_measure* b) {
    if (!a || !b) return 0;
    if (a->value == b->value) return 0;
    return a->value < b->value ? -1 : 1;
}

linca_status linca_measure_product(const linca_measure* a, const linca_measure* b, linca_measure** out) {
    return guarded([&] {
        require(a, "a");
        require(b, "b");
        require(out, "out");
        *out = wrap(a->value * b->value);
    });
}

linca_status linca_cylinder_measure(const linca_cylinder* U, uint64_t m, linca_measure** out) {
    return guarded([&] {
        require(U, "U");
        require(out, "out");
        *out = wrap(linca::cylinder_measure(U->value, linca::Modulus(m)));
    });
}

linca_status linca_correlation(const linca_rule* rule, int64_t n, const linca_cylinder* U, const linca_cylinder* V,
                               linca_measure** out) {
    return guarded([&] {
        require(rule, "rule");
        require(U, "U");
        require(V, "V");
        require(out, "out");
        *out = wrap(linca::correlation(rule->value, n, U->value, V->value));
    });
}

linca_status linca_correlation_multi(const linca_rule* rule, const int64_t* gaps, size_t gap_count,
                                     const linca_cylinder* const* cylinders, size_t cylinder_count,
                                     linca_measure** out) {
    return guarded([&] {
        require(rule, "rule");
        require(cylinders, "cylinders");
        require(out, "out");
        if (gap_count > 0) require(gaps, "gaps");
        std::vector<linca::Cylinder> cyls;
        for (size_t i = 0; i < cylinder_count; ++i) {
            require(cylinders[i], "cylinder");
            cyls.push_back(cylinders[i]->value);
        }
        *out = wrap(linca::correlation_multi(rule->value, std::span<const int64_t>(gaps, gap_count), cyls));
    });
}

linca_status linca_factor_correlation(const linca_rule* rule, int64_t n, const linca_cylinder* U,
                                      const linca_cylinder* V, linca_measure** outs, size_t capacity, size_t* count) {
    return guarded([&] {
        require(rule, "rule");
        require(U, "U");
        require(V, "V");
        require(outs, "outs");
        require(count, "count");
        if (capacity < rule->value.modulus().factors().size())
            throw linca::Error(linca::Errc::invalid_argument, "capacity smaller than the number of prime factors");
        auto parts = linca::factor_correlation(rule->value, n, U->value, V->value);
        for (size_t i = 0; i < parts.size(); ++i) outs[i] = wrap(std::move(parts[i]));
        *count = parts.size();
    });
}

linca_status linca_independence_defect(const linca_rule* rule, int64_t ell, int64_t n, int64_t N, uint64_t budget,
                                       linca_measure** out) {
    return guarded([&] {
        require(rule, "rule");
        require(out, "out");
        *out = wrap(linca::independence_defect(rule->value, ell, n, N,
                                               budget == 0 ? linca::kDefaultCellPairBudget : budget));
    });
}

}  // extern "C"
