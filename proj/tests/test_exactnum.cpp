#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "revstruct/exactnum.hpp"

using namespace revstruct;
using exact::BigInt;
using exact::BilateralWord;
using exact::Dyadic;
using exact::Rational;
using exact::TorusPoint;

TEST_CASE("dyadic canonical form") {
    Dyadic d(BigInt(6), 3);  // 6/8 = 3/4
    CHECK(d.numerator() == 3);
    CHECK(d.exponent() == 2);
    CHECK(Dyadic(BigInt(0), 7).exponent() == 0);
    CHECK(Dyadic(BigInt(-4), 2).numerator() == -1);
    CHECK(Dyadic(BigInt(-4), 2).exponent() == 0);
}

TEST_CASE("dyadic arithmetic is exact") {
    std::mt19937_64 rng(11);
    std::uniform_int_distribution<long> num(-4096, 4096);
    std::uniform_int_distribution<unsigned> ex(0, 12);
    for (int i = 0; i < 2000; ++i) {
        Dyadic a(BigInt(num(rng)), ex(rng));
        Dyadic b(BigInt(num(rng)), ex(rng));
        CHECK((a + b) - b == a);
        CHECK(a.doubled().halved() == a);
        CHECK(a.halved().doubled() == a);
        Dyadic m = a.mod1();
        CHECK(m >= Dyadic(BigInt(0)));
        CHECK(m < Dyadic::one());
    }
}

TEST_CASE("dyadic ordering and bits") {
    Dyadic five_eighths(BigInt(5), 3);  // 0.101
    CHECK(five_eighths.fractional_bit(1) == 1);
    CHECK(five_eighths.fractional_bit(2) == 0);
    CHECK(five_eighths.fractional_bit(3) == 1);
    CHECK(five_eighths.fractional_bit(9) == 0);
    CHECK(Dyadic::half() < five_eighths);
    CHECK(five_eighths.to_double() == 0.625);
    CHECK(five_eighths.to_rational() == Rational(5, 8));
}

TEST_CASE("torus point stores the [0,1) representative") {
    TorusPoint p(Dyadic(BigInt(9), 3), Dyadic(BigInt(-1), 2));  // 9/8, -1/4
    CHECK(p.x == Dyadic(BigInt(1), 3));
    CHECK(p.y == Dyadic(BigInt(3), 2));
}

TEST_CASE("rational parsing") {
    CHECK(exact::parse_rational("1/2") == Rational(1, 2));
    CHECK(exact::parse_rational("-2/5") == Rational(-2, 5));
    CHECK(exact::parse_rational("3") == Rational(3));
    CHECK(exact::rational_str(Rational(1, 3)) == "1/3");
    CHECK_THROWS_AS(exact::parse_rational("x/y"), std::invalid_argument);
    CHECK_THROWS_AS(exact::parse_rational("1/0"), std::invalid_argument);
}

TEST_CASE("word windows and transforms") {
    BilateralWord w(-2, 2, 3);
    w.set(0, 2);
    BilateralWord s = w.shifted();
    CHECK(s.window_lo() == -1);
    CHECK(s.window_hi() == 3);
    CHECK(s.at(1) == 2);
    CHECK(s.shifted_back().equal_on_overlap(w));

    BilateralWord r = w.reversed();
    CHECK(r.window_lo() == -1);
    CHECK(r.window_hi() == 3);
    CHECK(r.at(1) == 2);  // a'_1 = a_0
    CHECK(r.reversed().equal_on_overlap(w));
    CHECK(r.reversed().window_lo() == w.window_lo());

    CHECK_THROWS_AS(w.at(5), std::out_of_range);
    CHECK_THROWS_AS(w.set(0, 3), std::invalid_argument);
    CHECK(BilateralWord::mismatches(w, s) == 2);  // a_0 and a_1 disagree on overlap
}

TEST_CASE("encode spec points") {
    // (1/2, 0): a_0 = 1, everything else 0
    BilateralWord w = exact::encode(TorusPoint(Dyadic::half(), Dyadic(BigInt(0))), 4);
    for (int j = -4; j <= 4; ++j) CHECK(w.at(j) == (j == 0 ? 1 : 0));
    // (0, 1/2): a_1 = 1
    BilateralWord v = exact::encode(TorusPoint(Dyadic(BigInt(0)), Dyadic::half()), 4);
    for (int j = -4; j <= 4; ++j) CHECK(v.at(j) == (j == 1 ? 1 : 0));
    // origin: all zero
    BilateralWord z = exact::encode(TorusPoint(Dyadic(BigInt(0)), Dyadic(BigInt(0))), 4);
    for (int j = -4; j <= 4; ++j) CHECK(z.at(j) == 0);
}

TEST_CASE("encode window errors") {
    TorusPoint fine(Dyadic(BigInt(1), 6), Dyadic(BigInt(0)));  // x = 1/64 needs index -5
    CHECK_THROWS_AS(exact::encode(fine, 4), std::invalid_argument);
    CHECK_NOTHROW(exact::encode(fine, 5));
    BilateralWord ternary(-2, 2, 3);
    CHECK_THROWS_AS(exact::decode(ternary), std::invalid_argument);
}

TEST_CASE("decode inverts encode exhaustively") {
    // every dyadic pair with exponent <= 6, window radius 7
    auto xs = exact::unit_dyadics(6);
    for (const auto& x : xs) {
        for (const auto& y : xs) {
            TorusPoint p(x, y);
            CHECK(exact::decode(exact::encode(p, 7)) == p);
        }
    }
}

TEST_CASE("windows beyond 64 bits stay exact") {
    // x = 1/2^65 uses index -64 and a numerator past the int64 range
    TorusPoint deep(Dyadic(BigInt(1), 65), Dyadic(BigInt(1), 64));
    BilateralWord w = exact::encode(deep, 64);
    CHECK(w.at(-64) == 1);
    CHECK(w.at(64) == 1);
    CHECK(exact::decode(w) == deep);
}

TEST_CASE("serialization shapes") {
    auto dj = Dyadic(BigInt(3), 2).to_json();
    CHECK(dj["num"] == "3");
    CHECK(dj["exp"] == 2);
    BilateralWord w(-1, 1, 2);
    w.set(1, 1);
    auto wj = w.to_json();
    CHECK(wj["window_lo"] == -1);
    CHECK(wj["window_hi"] == 1);
    CHECK(wj["symbols"] == nlohmann::json::array({0, 0, 1}));
}
