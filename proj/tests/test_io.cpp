#include "fixtures.hpp"

#include "rankclose/io.hpp"
#include "rankclose/rng.hpp"

#include <doctest.h>

#include <random>

using namespace rankclose;

TEST_CASE("format_double round-trips") {
    Rng rng(7);
    std::uniform_real_distribution<double> u(-1e6, 1e6);
    std::uniform_int_distribution<int> e(-300, 300);
    for (int k = 0; k < 2000; ++k) {
        const double x = u(rng) * std::pow(10.0, e(rng) / 10);
        CHECK(std::stod(format_double(x)) == x);
    }
    CHECK(format_double(0.5) == "0.5");
    CHECK(format_double(12.0) == "12");
}

TEST_CASE("mask text round trip") {
    const Mask m2 = fixture::m2();
    CHECK(serialize_mask(m2) == fixture::kM2);
    CHECK(parse_mask(serialize_mask(m2)) == m2);
    CHECK(parse_mask("10\r\n01\r\n\n") == Mask(2, 2, {{0, 0}, {1, 1}}));
}

TEST_CASE("mask parse errors carry line numbers") {
    try {
        parse_mask("101\n10\n");
        FAIL("expected ParseError");
    } catch (const ParseError &e) {
        CHECK(e.line() == 2);
    }
    CHECK_THROWS_AS(parse_mask("1x1\n"), ParseError);
    CHECK_THROWS_AS(parse_mask(""), ParseError);
}

TEST_CASE("masked CSV: holes as '?' or empty fields") {
    const auto a = parse_masked_matrix("1,,3\n?,+4,?\n4e0,?,?\n");
    CHECK(a.mask() == Mask(3, 3, {{0, 0}, {0, 2}, {1, 1}, {2, 0}}));
    CHECK(a.values() == std::vector<double>{1, 3, 4, 4});
    CHECK(parse_masked_matrix(serialize_masked_matrix(fixture::a2())) == fixture::a2());
}

TEST_CASE("masked CSV errors") {
    try {
        parse_masked_matrix("1,2\n3\n");
        FAIL("expected ParseError");
    } catch (const ParseError &e) {
        CHECK(e.line() == 2);
    }
    CHECK_THROWS_AS(parse_masked_matrix("1,abc\n"), ParseError);
    CHECK_THROWS_AS(parse_masked_matrix("1,nan\n"), ParseError);
    CHECK_THROWS_AS(parse_masked_matrix("1,inf\n"), ParseError);
}

TEST_CASE("dense CSV round trip is bit exact") {
    Rng rng(3);
    std::normal_distribution<double> g;
    DenseMatrix a(4, 5);
    for (Index i = 0; i < 4; ++i)
        for (Index j = 0; j < 5; ++j)
            a(i, j) = g(rng);
    CHECK(parse_dense(serialize_dense(a)) == a);
    CHECK_THROWS_AS(parse_dense("1,?\n"), ParseError);
}
