#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "spider/errors.hpp"
#include "spider/laurent.hpp"

using spider::BigInt;
using spider::LaurentPoly;

namespace {

LaurentPoly P(const char* s) { return LaurentPoly::parse(s); }

LaurentPoly random_poly(std::mt19937_64& rng) {
    LaurentPoly p;
    int terms = static_cast<int>(rng() % 5);
    for (int i = 0; i < terms; ++i) {
        int exp = static_cast<int>(rng() % 25) - 12;
        long long coeff = static_cast<long long>(rng() % 19) - 9;
        p += LaurentPoly::monomial(coeff, exp);
    }
    return p;
}

} // namespace

TEST_CASE("addition drops cancelled terms") {
    CHECK(P("A^2 + 1") + P("-1") == P("A^2"));
    CHECK(P("0") + P("A^3 - 2") == P("A^3 - 2"));
    CHECK(P("A^3 + A^-3") + P("A^3 + A^-3") == P("2A^3 + 2A^-3"));
    CHECK((P("A^5") - P("A^5")).is_zero());
}

TEST_CASE("multiplication is an exact convolution") {
    CHECK(P("A^3 + A^-3") * P("A^3 + A^-3") == P("A^6 + 2 + A^-6"));
    CHECK(P("A^2") * P("A^6 + 1 + A^-6") == P("A^8 + A^2 + A^-4"));
    LaurentPoly p = P("3A^4 - 2A^-1 + 7");
    CHECK(p * LaurentPoly::one() == p);
    CHECK((p * LaurentPoly()).is_zero());
}

TEST_CASE("monomial") {
    CHECK(LaurentPoly::monomial(1, -8) == P("A^-8"));
    CHECK(LaurentPoly::monomial(0, 5).is_zero());
    CHECK(LaurentPoly::monomial(-1, 1) == P("-A"));
}

TEST_CASE("span") {
    CHECK(P("-a^-4 - a^-6 + a^-10").span() == 6);
    CHECK(P("3").span() == 0);
    CHECK(P("A^6 + 1 + A^-6").span() == 12);
    CHECK_THROWS_AS(LaurentPoly().span(), spider::DomainError);
}

TEST_CASE("substitute_inverse") {
    CHECK(P("A^8").substitute_inverse() == P("A^-8"));
    CHECK(P("A^6 + 1 + A^-6").substitute_inverse() == P("A^6 + 1 + A^-6"));
    CHECK(P("-A^-1").substitute_inverse() == P("-A"));
}

TEST_CASE("substitute_inverse is an involutive ring homomorphism") {
    std::mt19937_64 rng(7);
    for (int i = 0; i < 300; ++i) {
        LaurentPoly p = random_poly(rng), q = random_poly(rng);
        CHECK(p.substitute_inverse().substitute_inverse() == p);
        CHECK((p + q).substitute_inverse() == p.substitute_inverse() + q.substitute_inverse());
        CHECK((p * q).substitute_inverse() == p.substitute_inverse() * q.substitute_inverse());
    }
}

TEST_CASE("format lists terms by descending exponent with explicit signs") {
    CHECK(P("A^-6 + A^6 + 1").format() == "A^6 + 1 + A^-6");
    CHECK(P("-A^-1").format() == "-A^-1");
    CHECK(LaurentPoly().format() == "0");
    CHECK(P("2*A^3 - 5 + A").format() == "2*A^3 + A - 5");
    CHECK(P("-3A^2+4A^-7").format() == "-3*A^2 + 4*A^-7");
    CHECK(P("a^4 - a").format('a') == "a^4 - a");
}

TEST_CASE("parse accepts the documented grammar") {
    CHECK(P(" A^6+1+ A^-6 ") == P("A^6 + 1 + A^-6"));
    CHECK(P("3*A^2") == P("3A^2"));
    CHECK(P("0").is_zero());
    CHECK(P("-0").is_zero());
    CHECK(P("a^2 + A^2") == P("2A^2")); // variable letter is cosmetic
    CHECK(P("A + A") == P("2A"));
}

TEST_CASE("parse errors carry positions") {
    CHECK_THROWS_AS(P(""), spider::ParseError);
    CHECK_THROWS_AS(P("A^"), spider::ParseError);
    CHECK_THROWS_AS(P("2**A"), spider::ParseError);
    CHECK_THROWS_AS(P("A^2 +"), spider::ParseError);
    CHECK_THROWS_AS(P("A^2 B"), spider::ParseError);
    CHECK_THROWS_AS(P("*A"), spider::ParseError);
    try {
        P("A^2 $ 3");
    } catch (const spider::ParseError& e) {
        CHECK(e.position() == 4);
    }
}

TEST_CASE("parse(format(p)) round trips") {
    std::mt19937_64 rng(99);
    for (int i = 0; i < 500; ++i) {
        LaurentPoly p = random_poly(rng);
        CHECK(LaurentPoly::parse(p.format()) == p);
        CHECK(LaurentPoly::parse(p.format('a')) == p);
    }
}

TEST_CASE("ring axioms on random inputs") {
    std::mt19937_64 rng(1234);
    for (int i = 0; i < 300; ++i) {
        LaurentPoly p = random_poly(rng), q = random_poly(rng), r = random_poly(rng);
        CHECK(p + q == q + p);
        CHECK((p + q) + r == p + (q + r));
        CHECK(p * q == q * p);
        CHECK((p * q) * r == p * (q * r));
        CHECK(p * (q + r) == p * q + p * r);
    }
}

TEST_CASE("span is additive under multiplication over the integers") {
    std::mt19937_64 rng(555);
    int checked = 0;
    while (checked < 200) {
        LaurentPoly p = random_poly(rng), q = random_poly(rng);
        if (p.is_zero() || q.is_zero()) continue;
        CHECK((p * q).span() == p.span() + q.span());
        ++checked;
    }
}
