#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>

namespace sqfree {

using u32 = uint32_t;
using u64 = uint64_t;
using i64 = int64_t;

// 128-bit integers cover every quantity up to n = 10^36 exactly:
// n, d^2, n/d^2, x_i and all S/M accumulators (|partial| <= n < 2^120).
using u128 = unsigned __int128;
using i128 = __int128;

// 10^e for e <= 38
u128 pow10_u128(unsigned e);

// floor(sqrt(v)): the unique r with r^2 <= v < (r+1)^2
u128 isqrt(u128 v);

// floor(cbrt(v)): the unique r with r^3 <= v < (r+1)^3
u128 icbrt(u128 v);

// floor(num/den); throws std::domain_error("division by zero") if den == 0
u128 floor_div(u128 num, u128 den);

std::string to_string(u128 v);
std::string to_string(i128 v);

// Parse a nonnegative decimal integer < 2^127.
// Throws std::invalid_argument on malformed input, std::out_of_range on overflow.
u128 parse_u128(std::string_view s);

}  // namespace sqfree

// stream insertion for 128-bit ints (diagnostics, CLI, doctest messages)
std::ostream& operator<<(std::ostream& os, sqfree::u128 v);
std::ostream& operator<<(std::ostream& os, sqfree::i128 v);
