#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "linca/automaton.hpp"
#include "linca/error.hpp"
#include "linca/measure.hpp"
#include "oracles.hpp"

#include <map>
#include <random>

using namespace linca;

namespace {

Errc code_of(const std::function<void()>& fn) {
    try {
        fn();
    } catch (const Error& e) {
        return e.code();
    }
    FAIL("expected linca::Error");
    return Errc::io;
}

LocalRule random_invertible(std::mt19937_64& rng, std::uint64_t m, std::size_t max_width) {
    while (true) {
        auto rr = oracle::random_coeffs(rng, m, max_width, 2);
        LocalRule r(Modulus(m), rr.left, rr.coeffs);
        if (!r.is_zero() && is_invertible(r)) return r;
    }
}

BigRational frac(long a, long b) { return BigRational(a, b); }

// Exact defect between the joins over levels K1 and K2 by tallying every
// assignment of the coordinates they depend on. x lies in T^k C iff
// f^{-k} x restricted to [-ell, ell] spells C.
BigRational brute_defect(const LocalRule& f, std::int64_t ell, const std::vector<std::int64_t>& K1,
                         const std::vector<std::int64_t>& K2) {
    const std::uint64_t m = f.modulus().value();
    std::vector<oracle::Coeffs> maps1, maps2;
    std::int64_t lo = INT64_MAX, hi = INT64_MIN;
    auto build = [&](const std::vector<std::int64_t>& K, std::vector<oracle::Coeffs>& out) {
        for (auto k : K) {
            auto g = k <= 0 ? oracle::iterate(oracle::coeffs_of(f), -k, m)
                            : oracle::iterate(oracle::coeffs_of(inverse_rule(f)), k, m);
            lo = std::min(lo, -ell + g.begin()->first);
            hi = std::max(hi, ell + g.rbegin()->first);
            out.push_back(std::move(g));
        }
    };
    build(K1, maps1);
    build(K2, maps2);
    auto label = [&](const std::vector<oracle::Coeffs>& maps, const std::vector<Elem>& x) {
        std::vector<Elem> l;
        for (const auto& g : maps)
            for (std::int64_t i = -ell; i <= ell; ++i) {
                std::uint64_t s = 0;
                for (auto [j, c] : g) s = (s + c * x[static_cast<std::size_t>(i + j - lo)]) % m;
                l.push_back(s);
            }
        return l;
    };
    std::map<std::vector<Elem>, std::uint64_t> pc, pd;
    std::map<std::pair<std::vector<Elem>, std::vector<Elem>>, std::uint64_t> joint;
    std::uint64_t total = 0;
    oracle::for_each_word(static_cast<std::size_t>(hi - lo + 1), m, [&](const std::vector<Elem>& x) {
        auto a = label(maps1, x), b = label(maps2, x);
        ++pc[a];
        ++pd[b];
        ++joint[{a, b}];
        ++total;
        return true;
    });
    BigRational sum = 0;
    BigRational T = total;
    for (const auto& [a, ca] : pc)
        for (const auto& [b, cb] : pd) {
            auto it = joint.find({a, b});
            BigRational pj = it == joint.end() ? BigRational(0) : BigRational(it->second) / T;
            BigRational d = pj - BigRational(ca) / T * (BigRational(cb) / T);
            sum += d < 0 ? BigRational(-d) : d;
        }
    return sum;
}

const LocalRule ex4(Modulus(4), 1, {2, 1, 2});
const LocalRule ex12(Modulus(12), 0, {6, 3, 2});
const LocalRule ex36(Modulus(36), -1, {15, 10, 6});
const LocalRule shift2(Modulus(2), 1, {1});
const LocalRule bern4(Modulus(4), 0, {2, 1});

}  // namespace

TEST_CASE("cylinder syntax") {
    auto c = parse_cylinder("[1,0,3]@-2");
    CHECK(c == Cylinder(-2, {1, 0, 3}));
    CHECK(c.end() == 0);
    CHECK(c.render() == "[1,0,3]@-2");
    CHECK(parse_cylinder(c.render()) == c);
    CHECK(c.reduced(2) == Cylinder(-2, {1, 0, 1}));
    for (const char* bad : {"", "1,2]@0", "[]@0", "[1,]@0", "[1,2@0", "[1]", "[1]@", "[1]@x", "[1]@0 ", "[-1]@0", "[1] @0"})
        CHECK_MESSAGE(code_of([&] { parse_cylinder(bad); }) == Errc::parse, bad);
    CHECK(code_of([] { Cylinder(0, {}); }) == Errc::invalid_argument);
    CHECK(code_of([] { Cylinder(0, {4}).check_symbols(Modulus(4)); }) == Errc::invalid_argument);
    CHECK(code_of([] { cylinder_measure(Cylinder(0, {4}), Modulus(4)); }) == Errc::invalid_argument);
    try {
        parse_cylinder("[1,2x]@0");
    } catch (const Error& e) {
        CHECK(std::string(e.what()).find("column 5") != std::string::npos);
    }
}

TEST_CASE("constraint systems") {
    ConstraintSystem s(Modulus(6));
    CHECK(s.empty_window());
    CHECK(count_solutions(s) == 1);
    const Elem zero = 0, two = 2, three = 3;
    s.add_equation(3, std::span<const Elem>(&zero, 1), 0);  // 0 = 0 widens but adds no row
    CHECK(s.rows().empty());
    CHECK(s.num_vars() == 1);
    CHECK(count_solutions(s) == 6);
    s.add_equation(3, std::span<const Elem>(&zero, 1), 1);  // 0 = 1 stays
    CHECK(count_solutions(s) == 0);

    ConstraintSystem t(Modulus(6), 0, 1);
    t.add_equation(0, std::span<const Elem>(&two, 1), 4);
    CHECK(count_solutions(t) == 2 * 6);  // 2x = 4 mod 6 -> x in {2, 5}
    t.add_equation(1, std::span<const Elem>(&three, 1), 3);
    CHECK(count_solutions(t) == 2 * 3);
    auto t2 = t.projected(2);
    CHECK(t2.modulus().value() == 2);
    CHECK(t2.rows().size() == 1);  // 2x = 4 vanishes mod 2
    CHECK(count_solutions(t2) == 2);
    CHECK(code_of([&] { t.projected(4); }) == Errc::invalid_argument);
    CHECK(code_of([&] { t.append(ConstraintSystem(Modulus(4))); }) == Errc::modulus_mismatch);
    CHECK(code_of([&] { t.add_equation(0, {}, 0); }) == Errc::invalid_argument);

    auto d = ConstraintSystem::diagonal(Modulus(4), Cylinder(-1, {1, 2}));
    CHECK(d.window_lo() == -1);
    CHECK(d.window_hi() == 0);
    CHECK(count_solutions(d) == 1);
}

TEST_CASE("counting matches enumeration") {
    std::mt19937_64 rng(37);
    for (int t = 0; t < 1500; ++t) {
        std::uint64_t m = std::vector<std::uint64_t>{2, 3, 4, 6, 8, 9, 12}[rng() % 7];
        std::size_t vars = 1 + rng() % (m > 6 ? 5 : 7);
        ConstraintSystem s(Modulus(m), 0, static_cast<std::int64_t>(vars) - 1);
        std::size_t rows = rng() % 5;
        for (std::size_t r = 0; r < rows; ++r) {
            std::vector<Elem> c(vars);
            for (auto& x : c) x = rng() % 3 == 0 ? 0 : rng() % m;
            s.add_equation(0, c, rng() % m);
        }
        CHECK(count_solutions(s) == oracle::count_solutions(s));
        for (const auto& pp : s.modulus().factors())
            if (pp.pk != m) CHECK(count_solutions(s.projected(pp.pk)) == oracle::count_solutions(s.projected(pp.pk)));
    }
}

TEST_CASE("exact measure arithmetic") {
    ExactMeasure a(3, 4, 2), b(1, 4, 1);
    CHECK(a.render() == "3/16");
    CHECK((a + b).render() == "7/16");
    CHECK(abs_diff(b, a).render() == "1/16");
    CHECK(abs_diff(a, b).render() == "1/16");
    CHECK((a * b).render() == "3/64");
    CHECK(ExactMeasure(0, 5, 3).render() == "0");
    CHECK(ExactMeasure(25, 5, 2).render() == "1");
    CHECK(ExactMeasure(2, 4, 1) == ExactMeasure(1, 2, 1));
    CHECK(ExactMeasure(1, 4, 2) < ExactMeasure(1, 4, 1));
    CHECK(a.numerator_at(3) == BigInt(12));
    CHECK_FALSE(a.numerator_at(1));
    CHECK(ExactMeasure(4, 4, 2).numerator_at(1) == BigInt(1));

    ExactMeasure four(1, 4, 1), three(1, 3, 1);
    auto p = four * three;
    CHECK(p.base() == 12);
    CHECK(p.render() == "1/12");
    CHECK((ExactMeasure(1, 4, 2) * three).to_rational() == frac(1, 48));
    CHECK(code_of([] { (void)(ExactMeasure(1, 4, 1) * ExactMeasure(1, 6, 1)); }) == Errc::invalid_argument);
    CHECK(code_of([] { (void)(ExactMeasure(1, 4, 1) + ExactMeasure(1, 3, 1)); }) == Errc::invalid_argument);
    CHECK(code_of([] { ExactMeasure(1, 1, 1); }) == Errc::invalid_argument);
    CHECK(code_of([] { ExactMeasure(-1, 2, 1); }) == Errc::invalid_argument);
}

TEST_CASE("cylinder and preimage measures") {
    CHECK(cylinder_measure(Cylinder(5, {1, 2, 3}), Modulus(4)).render() == "1/64");
    // measure preservation: mu(T^-n U) = mu(U)
    std::mt19937_64 rng(41);
    for (int t = 0; t < 150; ++t) {
        std::uint64_t m = 2 + rng() % 35;
        LocalRule f = random_invertible(rng, m, 4);
        auto U = oracle::random_cylinder(rng, m, -3, 3, 3);
        std::int64_t n = static_cast<std::int64_t>(rng() % 13) - 6;
        CHECK(system_measure(preimage_system(f, n, U)) == cylinder_measure(U, f.modulus()));
    }
    // surjective but not invertible still preserves measure: 3x_0 + 3x_1 mod 6 is onto? x_0+x_1 mod 2 is, 0 mod 3 is not
    LocalRule g(Modulus(6), 0, {1, 1});
    CHECK(system_measure(preimage_system(g, 3, Cylinder(0, {1, 4}))) == cylinder_measure(Cylinder(0, {1, 4}), Modulus(6)));
}

TEST_CASE("correlation matches enumeration") {
    std::mt19937_64 rng(43);
    for (int t = 0; t < 120; ++t) {
        std::uint64_t m = std::vector<std::uint64_t>{2, 3, 4, 6}[rng() % 4];
        auto rr = oracle::random_coeffs(rng, m, 3, 1);
        LocalRule f(Modulus(m), rr.left, rr.coeffs);
        if (f.is_zero()) continue;
        auto U = oracle::random_cylinder(rng, m, -2, 2, 2);
        auto V = oracle::random_cylinder(rng, m, -2, 2, 2);
        std::int64_t n = static_cast<std::int64_t>(rng() % 3);
        CHECK(correlation(f, n, U, V).to_rational() == oracle::correlation(oracle::coeffs_of(f), m, n, U, V));
    }
    CHECK(code_of([] { correlation(LocalRule(Modulus(6), 0, {1, 1}), -1, Cylinder(0, {0}), Cylinder(0, {0})); }) ==
          Errc::not_invertible);
    CHECK(code_of([] { correlation(ex4, 1, Cylinder(0, {5}), Cylinder(0, {0})); }) == Errc::invalid_argument);
}

TEST_CASE("non-ergodic witness") {
    for (std::int64_t k = 1; k <= 4; ++k) CHECK(correlation(ex36, 6 * k, Cylinder(0, {0}), Cylinder(0, {1})).is_zero());
}

TEST_CASE("k-fold correlations") {
    const std::int64_t gaps[] = {2, 2};
    std::vector<Cylinder> cyl = {Cylinder(0, {0}), Cylinder(0, {0}), Cylinder(0, {0})};
    CHECK(correlation_multi(shift2, gaps, cyl).render() == "1/8");

    const std::int64_t one_gap[] = {3};
    std::vector<Cylinder> two = {Cylinder(0, {1}), Cylinder(-1, {2, 3})};
    CHECK(correlation_multi(ex4, one_gap, two) == correlation(ex4, 3, two[1], two[0]));

    const std::int64_t big[] = {9, 9};
    std::vector<Cylinder> three = {Cylinder(0, {1}), Cylinder(0, {2}), Cylinder(-1, {3, 0})};
    auto prod = cylinder_measure(three[0], Modulus(4)) * cylinder_measure(three[1], Modulus(4)) *
                cylinder_measure(three[2], Modulus(4));
    CHECK(correlation_multi(ex4, big, three) == prod);

    std::mt19937_64 rng(47);
    for (int t = 0; t < 40; ++t) {
        std::uint64_t m = std::vector<std::uint64_t>{2, 3, 4}[rng() % 3];
        auto rr = oracle::random_coeffs(rng, m, 2, 1);
        LocalRule f(Modulus(m), rr.left, rr.coeffs);
        if (f.is_zero()) continue;
        std::int64_t g1 = 1 + static_cast<std::int64_t>(rng() % 2), g2 = 1 + static_cast<std::int64_t>(rng() % 2);
        std::vector<Cylinder> cs = {oracle::random_cylinder(rng, m, -1, 1, 2), oracle::random_cylinder(rng, m, -1, 1, 2),
                                    oracle::random_cylinder(rng, m, -1, 1, 1)};
        const std::int64_t gs[] = {g1, g2};
        CHECK(correlation_multi(f, gs, cs).to_rational() ==
              oracle::joint_measure(oracle::coeffs_of(f), m, {0, g1, g1 + g2}, cs));
    }

    const std::int64_t zero_gap[] = {0};
    CHECK(code_of([&] { correlation_multi(ex4, zero_gap, two); }) == Errc::invalid_argument);
    CHECK(code_of([&] { correlation_multi(ex4, gaps, two); }) == Errc::invalid_argument);
}

TEST_CASE("factor correlations") {
    for (Elem a = 0; a < 12; ++a)
        for (Elem b = 0; b < 12; ++b)
            for (std::int64_t n = 0; n <= 3; ++n) {
                auto parts = factor_correlation(ex12, n, Cylinder(0, {a}), Cylinder(0, {b}));
                REQUIRE(parts.size() == 2);
                CHECK(parts[0] * parts[1] == correlation(ex12, n, Cylinder(0, {a}), Cylinder(0, {b})));
            }
    auto single = factor_correlation(ex4, 2, Cylinder(0, {1}), Cylinder(1, {1}));
    REQUIRE(single.size() == 1);
    CHECK(single[0] == correlation(ex4, 2, Cylinder(0, {1}), Cylinder(1, {1})));
    auto diag = factor_correlation(ex12, 0, Cylinder(0, {7}), Cylinder(0, {7}));
    CHECK((diag[0] * diag[1]).render() == "1/12");
}

TEST_CASE("independence defect") {
    CHECK(independence_defect(shift2, 0, 1, 2).is_zero());
    CHECK(independence_defect(shift2, 0, 1, 1).is_zero());
    CHECK_FALSE(independence_defect(shift2, 0, 1, 0).is_zero());
    CHECK_FALSE(independence_defect(bern4, 1, 1, 0).is_zero());
    CHECK(independence_defect(bern4, 1, 1, 3).is_zero());

    for (std::int64_t N = 0; N <= 3; ++N) {
        auto got = independence_defect(bern4, 1, 1, N).to_rational();
        CHECK_MESSAGE(got == brute_defect(bern4, 1, {-1, 0}, {N, N + 1}), "N=" << N);
    }
    for (std::int64_t N = 0; N <= 3; ++N) {
        auto got = independence_defect(shift2, 1, 1, N).to_rational();
        CHECK_MESSAGE(got == brute_defect(shift2, 1, {-1, 0}, {N, N + 1}), "N=" << N);
    }
    const LocalRule nine(Modulus(9), 0, {3, 1});
    for (std::int64_t N = 0; N <= 1; ++N)
        CHECK(independence_defect(nine, 1, 0, N).to_rational() == brute_defect(nine, 1, {0}, {N}));

    CHECK(code_of([] { independence_defect(ex4, 0, 1, 2); }) == Errc::invalid_argument);  // window 2 > 2*0
    CHECK(code_of([] { independence_defect(LocalRule(Modulus(6), 0, {1, 1}), 1, 1, 2); }) == Errc::not_invertible);
    CHECK(code_of([] { independence_defect(bern4, 1, -1, 2); }) == Errc::invalid_argument);
    CHECK(code_of([] { independence_defect(bern4, 1, 1, 3, 10); }) == Errc::budget_exceeded);
}
