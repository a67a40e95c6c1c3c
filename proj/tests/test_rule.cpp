#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "linca/error.hpp"
#include "linca/rule.hpp"

#include <cstdio>
#include <fstream>

using namespace linca;

namespace {

std::string parse_error(std::string_view text) {
    try {
        parse_rule(text, "r.rule");
    } catch (const Error& e) {
        CHECK(e.code() == Errc::parse);
        return e.what();
    }
    FAIL("parse succeeded: " << text);
    return {};
}

}  // namespace

TEST_CASE("construction trims and reduces") {
    LocalRule r(Modulus(4), -2, {0, 0, 6, -1, 4, 0});
    CHECK(r.left() == 0);
    CHECK(r.right() == 1);
    CHECK(r.coeff(0) == 2);
    CHECK(r.coeff(1) == 3);
    CHECK(r.coeff(-5) == 0);
    CHECK(r.coeff(9) == 0);
    CHECK(r.width() == 2);

    auto z = LocalRule(Modulus(5), 7, {0, 5, 10});
    CHECK(z.is_zero());
    CHECK(z == LocalRule::zero(Modulus(5)));
    CHECK(z.left() == 0);

    CHECK(LocalRule::monomial(Modulus(9), -3, 4).left() == -3);
    CHECK(LocalRule::identity(Modulus(9)) == LocalRule(Modulus(9), 0, {1}));
    CHECK_FALSE(LocalRule(Modulus(4), 0, {1}) == LocalRule(Modulus(8), 0, {1}));
}

TEST_CASE("rendering") {
    CHECK(LocalRule(Modulus(4), -3, {2, 1, 2}).render() == "f(x_-3..x_-1) = 2*x_-3 + 1*x_-2 + 2*x_-1 (mod 4)");
    CHECK(LocalRule::zero(Modulus(3)).render() == "f(x_0..x_0) = 0 (mod 3)");
    CHECK(LocalRule(Modulus(36), 0, {28, 0, 9}).render() == "f(x_0..x_2) = 28*x_0 + 9*x_2 (mod 36)");
}

TEST_CASE("parse and serialize round trip") {
    auto r = parse_rule("m=4\nl=1\ncoeffs=2,1,2\n");
    CHECK(r == LocalRule(Modulus(4), 1, {2, 1, 2}));
    CHECK(parse_rule(serialize_rule(r)) == r);

    CHECK(parse_rule("m=12\r\nl=-1\r\ncoeffs=0,+6,-9\r\n\r\n\n") == LocalRule(Modulus(12), 0, {6, 3}));
    CHECK(parse_rule("m=36\nl=-1\ncoeffs=15,10,6") == LocalRule(Modulus(36), -1, {15, 10, 6}));
}

TEST_CASE("parse diagnostics carry line and column") {
    CHECK(parse_error("m=4\nl=1\n").starts_with("r.rule:3:1:"));
    CHECK(parse_error("").starts_with("r.rule:1:1:"));
    CHECK(parse_error("m=4\nl=1\ncoeffs=1\nextra\n").starts_with("r.rule:4:1:"));
    CHECK(parse_error("n=4\nl=1\ncoeffs=1\n").starts_with("r.rule:1:1:"));
    CHECK(parse_error("m=1\nl=1\ncoeffs=1\n").starts_with("r.rule:1:3:"));
    CHECK(parse_error("m=4294967296\nl=1\ncoeffs=1\n").starts_with("r.rule:1:3:"));
    CHECK(parse_error("m=99999999999999999999999\nl=0\ncoeffs=1\n").find("out of range") != std::string::npos);
    CHECK(parse_error("m=4\nl=x\ncoeffs=1\n").starts_with("r.rule:2:3:"));
    CHECK(parse_error("m=4\nl=0\ncoeffs=1,2x\n").starts_with("r.rule:3:11:"));
    CHECK(parse_error("m=4\nl=0\ncoeffs=1,,2\n").starts_with("r.rule:3:10:"));
    CHECK(parse_error("m=4\nl=0\ncoeffs=\n").starts_with("r.rule:3:"));
    CHECK(parse_error("m=4\nl=0\ncoeffs=4,8\n").find("nonzero") != std::string::npos);
    CHECK(parse_error("m=4\nl=0\ncoeffs=1 \n").starts_with("r.rule:3:9:"));
}

TEST_CASE("load") {
    try {
        load_rule("/nonexistent/dir/x.rule");
        FAIL("expected io error");
    } catch (const Error& e) {
        CHECK(e.code() == Errc::io);
    }
    const std::string path = "test_rule_tmp.rule";
    {
        std::ofstream out(path);
        out << "m=9\nl=2\ncoeffs=3,1\n";
    }
    CHECK(load_rule(path) == LocalRule(Modulus(9), 2, {3, 1}));
    std::remove(path.c_str());
}
