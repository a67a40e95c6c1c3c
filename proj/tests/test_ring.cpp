#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "linca/error.hpp"
#include "linca/ring.hpp"

#include <numeric>
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

}  // namespace

TEST_CASE("modulus bounds") {
    CHECK(code_of([] { Modulus(0); }) == Errc::invalid_argument);
    CHECK(code_of([] { Modulus(1); }) == Errc::invalid_argument);
    CHECK(code_of([] { Modulus(kMaxModulus + 1); }) == Errc::invalid_argument);
    CHECK(Modulus(2).value() == 2);
    CHECK(Modulus(kMaxModulus).value() == kMaxModulus);
}

TEST_CASE("factorization") {
    auto f = factorize(36);
    REQUIRE(f.size() == 2);
    CHECK(f[0] == PrimePower{2, 2, 4});
    CHECK(f[1] == PrimePower{3, 2, 9});
    CHECK(Modulus(36).factor_string() == "2^2*3^2");
    CHECK(Modulus(12).factor_string() == "2^2*3");
    CHECK(Modulus(97).factor_string() == "97");
    CHECK(Modulus(97).is_prime_power());
    CHECK_FALSE(Modulus(6).is_prime_power());
    // 4294967291 is the largest prime below 2^32
    CHECK(factorize(4294967291ull).size() == 1);
    CHECK(Modulus(kMaxModulus).factor_string() == "3*5*17*257*65537");

    for (std::uint64_t m = 2; m < 2000; ++m) {
        std::uint64_t prod = 1;
        for (const auto& pp : factorize(m)) {
            CHECK(pp.pk == [&] {
                std::uint64_t r = 1;
                for (unsigned i = 0; i < pp.k; ++i) r *= pp.p;
                return r;
            }());
            prod *= pp.pk;
        }
        CHECK(prod == m);
    }
}

TEST_CASE("arithmetic agrees with 128-bit reference") {
    std::mt19937_64 rng(11);
    for (std::uint64_t m : {std::uint64_t{2}, std::uint64_t{36}, std::uint64_t{1000003}, kMaxModulus, std::uint64_t{4294967291}}) {
        Modulus M(m);
        std::uniform_int_distribution<std::uint64_t> d(0, m - 1);
        for (int t = 0; t < 200; ++t) {
            Elem a = d(rng), b = d(rng);
            CHECK(M.add(a, b) == static_cast<Elem>((static_cast<unsigned __int128>(a) + b) % m));
            CHECK(M.sub(a, b) == static_cast<Elem>((static_cast<unsigned __int128>(a) + m - b) % m));
            CHECK(M.mul(a, b) == static_cast<Elem>(static_cast<unsigned __int128>(a) * b % m));
            CHECK(M.add(M.neg(a), a) == 0);
            Elem p = 1 % m;
            for (int e = 0; e < 7; ++e) p = static_cast<Elem>(static_cast<unsigned __int128>(p) * a % m);
            CHECK(M.pow(a, 7) == p);
        }
        CHECK(M.reduce(-1) == m - 1);
        CHECK(M.reduce(INT64_MIN) == static_cast<Elem>((static_cast<__int128>(INT64_MIN) % m + m) % m));
        CHECK(M.pow(0, 0) == 1 % m);
    }
}

TEST_CASE("units and inverses") {
    CHECK(mod_inverse(5, 36) == 29);
    CHECK(mod_inverse(1, 2) == 1);
    CHECK(code_of([] { mod_inverse(6, 36); }) == Errc::invalid_argument);
    CHECK(code_of([] { mod_inverse(0, 7); }) == Errc::invalid_argument);
    for (std::uint64_t m = 2; m <= 64; ++m) {
        Modulus M(m);
        for (Elem a = 0; a < m; ++a) {
            CHECK(M.is_unit(a) == (std::gcd(a, m) == 1));
            if (M.is_unit(a)) CHECK(M.mul(a, mod_inverse(a, M)) == 1);
        }
    }
    Modulus big(4294967291ull);
    CHECK(big.mul(123456789, mod_inverse(123456789, big)) == 1);
}

TEST_CASE("crt") {
    const Elem r1[] = {3, 1};
    CHECK(crt_combine(r1, Modulus(36)) == 19);
    const Elem r2[] = {2, 0};
    CHECK(crt_combine(r2, Modulus(12)) == 6);
    const Elem bad_arity[] = {1};
    CHECK(code_of([&] { crt_combine(bad_arity, Modulus(12)); }) == Errc::invalid_argument);
    const Elem unreduced[] = {4, 0};
    CHECK(code_of([&] { crt_combine(unreduced, Modulus(12)); }) == Errc::invalid_argument);

    for (std::uint64_t m : {6ull, 12ull, 30ull, 36ull, 360ull}) {
        Modulus M(m);
        for (Elem x = 0; x < m; ++x) {
            std::vector<Elem> res;
            for (const auto& pp : M.factors()) res.push_back(x % pp.pk);
            CHECK(crt_combine(res, M) == x);
        }
    }
}

TEST_CASE("euler phi against counting") {
    CHECK(euler_phi(36) == 12);
    CHECK(euler_phi(1) == 1);
    for (std::uint64_t m = 2; m <= 300; ++m) {
        std::uint64_t count = 0;
        for (std::uint64_t a = 1; a <= m; ++a) count += std::gcd(a, m) == 1;
        CHECK(euler_phi(m) == count);
    }
}

TEST_CASE("valuation") {
    CHECK(valuation(0, 2, 5) == 5);
    CHECK(valuation(8, 2, 5) == 3);
    CHECK(valuation(12, 3, 2) == 1);
    CHECK(valuation(7, 3, 2) == 0);
    CHECK(gcd(0, 9) == 9);
    CHECK(gcd(12, 18) == 6);
}
