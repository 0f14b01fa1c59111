#include "doctest.h"

#include "sqfree/intmath.hpp"

#include <random>
#include <stdexcept>

using namespace sqfree;

namespace {

u128 random_u128_below(std::mt19937_64& rng, u128 bound) {
    u128 v = (u128(rng()) << 64) | rng();
    return v % bound;
}

}  // namespace

TEST_CASE("pow10_u128") {
    CHECK(pow10_u128(0) == u128(1));
    CHECK(pow10_u128(18) == u128(1'000'000'000'000'000'000ull));
    CHECK(pow10_u128(36) == pow10_u128(18) * pow10_u128(18));
    CHECK_THROWS_AS(pow10_u128(39), std::out_of_range);
}

TEST_CASE("isqrt examples") {
    CHECK(isqrt(0) == u128(0));
    CHECK(isqrt(pow10_u128(36)) == pow10_u128(18));
    CHECK(isqrt(99) == u128(9));  // 81 <= 99 < 100
    CHECK(isqrt(100) == u128(10));
    CHECK(isqrt(1) == u128(1));
    CHECK(isqrt(3) == u128(1));
}

TEST_CASE("isqrt property: r^2 <= v < (r+1)^2 up to 10^36") {
    std::mt19937_64 rng(12345);
    u128 bound = pow10_u128(36);
    for (int t = 0; t < 20000; ++t) {
        u128 v = random_u128_below(rng, bound);
        u128 r = isqrt(v);
        CHECK(r * r <= v);
        CHECK((r + 1) * (r + 1) > v);
    }
    // boundary triples around perfect squares
    for (int t = 0; t < 5000; ++t) {
        u128 k = random_u128_below(rng, pow10_u128(18)) + 1;
        u128 sq = k * k;
        CHECK(isqrt(sq) == k);
        CHECK(isqrt(sq - 1) == k - 1);
        CHECK(isqrt(sq + 1) == k);
    }
}

TEST_CASE("icbrt examples and property") {
    CHECK(icbrt(0) == u128(0));
    CHECK(icbrt(pow10_u128(27)) == pow10_u128(9));
    CHECK(icbrt(26) == u128(2));  // 8 <= 26 < 27
    CHECK(icbrt(27) == u128(3));

    std::mt19937_64 rng(777);
    u128 bound = pow10_u128(36);
    for (int t = 0; t < 20000; ++t) {
        u128 v = random_u128_below(rng, bound);
        u128 r = icbrt(v);
        CHECK(r * r * r <= v);
        CHECK((r + 1) * (r + 1) * (r + 1) > v);
    }
    for (int t = 0; t < 5000; ++t) {
        u128 k = random_u128_below(rng, pow10_u128(12)) + 1;
        u128 cube = k * k * k;
        CHECK(icbrt(cube) == k);
        CHECK(icbrt(cube - 1) == k - 1);
        CHECK(icbrt(cube + 1) == k);
    }
}

TEST_CASE("floor_div") {
    CHECK(floor_div(7, 2) == u128(3));
    CHECK(floor_div(pow10_u128(36), pow10_u128(18)) == pow10_u128(18));
    CHECK(floor_div(10, 11) == u128(0));
    CHECK_THROWS_AS(floor_div(1, 0), std::domain_error);
}

TEST_CASE("floor-of-real identity: floor(sqrt(n/i)) == isqrt(floor_div(n, i))") {
    // exact rational check: r = isqrt(n/i) must satisfy r^2 i <= n < (r+1)^2 i
    std::mt19937_64 rng(424242);
    for (int t = 0; t < 20000; ++t) {
        u128 n = random_u128_below(rng, pow10_u128(36)) + 1;
        u128 i = random_u128_below(rng, pow10_u128(9)) + 1;
        u128 r = isqrt(floor_div(n, i));
        CHECK(r * r * i <= n);
        CHECK((r + 1) * (r + 1) * i > n);
    }
}

TEST_CASE("decimal round trip") {
    CHECK(to_string(u128(0)) == "0");
    CHECK(to_string(pow10_u128(36)) == "1000000000000000000000000000000000000");
    CHECK(to_string(i128(-42)) == "-42");
    CHECK(parse_u128("607927101854026628663276779463775476") ==
          parse_u128("607927101854026628663276779463775476"));
    CHECK(parse_u128("0") == u128(0));
    CHECK_THROWS_AS(parse_u128(""), std::invalid_argument);
    CHECK_THROWS_AS(parse_u128("12x"), std::invalid_argument);
    CHECK_THROWS_AS(parse_u128("400000000000000000000000000000000000000"), std::out_of_range);

    std::mt19937_64 rng(99);
    for (int t = 0; t < 2000; ++t) {
        u128 v = random_u128_below(rng, pow10_u128(36));
        CHECK(parse_u128(to_string(v)) == v);
    }
}
