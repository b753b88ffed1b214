#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "treehom/errors.hpp"
#include "treehom/matrix.hpp"
#include "treehom/rational.hpp"

#include <random>

using namespace treehom;

TEST_CASE("make_rational canonicalizes") {
    CHECK(make_rational(2, 4) == Rational(1, 2));
    CHECK(make_rational(-2, 4) == Rational(-1, 2));
    CHECK(make_rational(2, -4) == Rational(-1, 2));
    CHECK(make_rational(0, 7) == 0);
    CHECK(make_rational(2, -4).get_den() == 2);
    CHECK_THROWS_AS(make_rational(1, 0), invalid_argument_error);
}

TEST_CASE("parse and format round trip") {
    CHECK(parse_rational("3/4") == Rational(3, 4));
    CHECK(parse_rational("-3/4") == Rational(-3, 4));
    CHECK(parse_rational("6/8") == Rational(3, 4));
    CHECK(parse_rational("5") == 5);
    CHECK(format_rational(Rational(3, 4)) == "3/4");
    CHECK(format_rational(Rational(5)) == "5/1");
    CHECK(format_rational(Rational(-1, 2)) == "-1/2");
    CHECK(parse_bigint("81558090") == BigInt(81558090));
    CHECK(format_bigint(BigInt(-12)) == "-12");
    CHECK(parse_rational(format_rational(Rational(-355, 113))) == Rational(-355, 113));
    CHECK_THROWS_AS(parse_rational("1/0"), invalid_argument_error);
    CHECK_THROWS_AS(parse_rational("abc"), error);
    CHECK_THROWS_AS(parse_bigint("1.5"), error);
}

TEST_CASE("directed rounding to a fixed denominator grid") {
    const BigInt grid = 1000;
    CHECK(round_down(Rational(1, 3), grid) == make_rational(333, 1000));
    CHECK(round_up(Rational(1, 3), grid) == make_rational(334, 1000));
    CHECK(round_down(Rational(-1, 3), grid) == make_rational(-334, 1000));
    CHECK(round_up(Rational(-1, 3), grid) == make_rational(-333, 1000));
    CHECK(round_down(Rational(1, 2), grid) == Rational(1, 2));
    CHECK(round_up(Rational(1, 2), grid) == Rational(1, 2));

    std::mt19937 rng(41);
    std::uniform_int_distribution<long> num(-5000, 5000);
    std::uniform_int_distribution<long> den(1, 5000);
    for (int i = 0; i < 200; ++i) {
        const Rational q = make_rational(num(rng), den(rng));
        const Rational lo = round_down(q, grid);
        const Rational hi = round_up(q, grid);
        CHECK(lo <= q);
        CHECK(q <= hi);
        CHECK(hi - lo <= Rational(1, 1000));
        CHECK(lo.get_den() <= 1000);
        CHECK(hi.get_den() <= 1000);
    }
}

TEST_CASE("powers and absolute value") {
    CHECK(rational_pow(Rational(2, 3), 0) == 1);
    CHECK(rational_pow(Rational(2, 3), 3) == Rational(8, 27));
    CHECK(rational_pow(Rational(-1, 2), 2) == Rational(1, 4));
    CHECK(bigint_pow(3, 4) == 81);
    CHECK(bigint_pow(10, 0) == 1);
    CHECK(rational_abs(Rational(-7, 2)) == Rational(7, 2));
    CHECK(rational_abs(Rational(7, 2)) == Rational(7, 2));
}

TEST_CASE("matrix product, vector product, powers") {
    const IntMatrix id = identity_matrix(3);
    CHECK(id[0][0] == 1);
    CHECK(id[0][1] == 0);

    const IntMatrix a = {{BigInt(1), BigInt(2)}, {BigInt(3), BigInt(4)}};
    const IntMatrix b = {{BigInt(0), BigInt(1)}, {BigInt(1), BigInt(0)}};
    const IntMatrix ab = mat_mul(a, b);
    CHECK(ab[0][0] == 2);
    CHECK(ab[0][1] == 1);
    CHECK(ab[1][0] == 4);
    CHECK(ab[1][1] == 3);

    const std::vector<BigInt> v = {BigInt(1), BigInt(1)};
    const std::vector<BigInt> av = mat_vec(a, v);
    CHECK(av[0] == 3);
    CHECK(av[1] == 7);

    const IntMatrix fib = {{BigInt(1), BigInt(1)}, {BigInt(1), BigInt(0)}};
    const IntMatrix f10 = mat_pow(fib, 10);
    CHECK(f10[0][0] == 89);
    CHECK(f10[0][1] == 55);
    CHECK(f10[1][1] == 34);
    CHECK(mat_pow(a, 0) == identity_matrix(2));
    CHECK(mat_pow(a, 1) == a);

    std::mt19937 rng(99);
    std::uniform_int_distribution<long> entry(-4, 4);
    for (int trial = 0; trial < 20; ++trial) {
        IntMatrix m(3, std::vector<BigInt>(3));
        for (auto& row : m)
            for (auto& e : row) e = entry(rng);
        IntMatrix by_mul = identity_matrix(3);
        for (int i = 0; i < 7; ++i) by_mul = mat_mul(by_mul, m);
        CHECK(mat_pow(m, 7) == by_mul);
    }
}
