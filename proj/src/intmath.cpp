#include "sqfree/intmath.hpp"

#include <cmath>
#include <ostream>
#include <stdexcept>

namespace sqfree {

u128 pow10_u128(unsigned e) {
    if (e > 38)
        throw std::out_of_range("pow10_u128: exponent exceeds 128-bit range");
    u128 r = 1;
    while (e--) r *= 10;
    return r;
}

u128 isqrt(u128 v) {
    if (v == 0) return 0;
    // long double seed (64-bit mantissa) is within a few ulp of the true root;
    // guarded Newton steps plus division-based fixups make the result exact
    // without ever forming r*r (which could overflow near 2^127).
    u128 r = static_cast<u128>(sqrtl(static_cast<long double>(v)));
    if (r == 0) r = 1;
    for (int i = 0; i < 3; ++i) {
        u128 next = (r + v / r) / 2;
        if (next == r) break;
        r = next;
    }
    while (r > v / r) --r;               // r^2 <= v  (as r <= floor(v/r))
    while (r + 1 <= v / (r + 1)) ++r;    // (r+1)^2 > v
    return r;
}

u128 icbrt(u128 v) {
    if (v == 0) return 0;
    u128 r = static_cast<u128>(cbrtl(static_cast<long double>(v)));
    if (r == 0) r = 1;
    // r < 2^43 for v < 2^128, so r*r never overflows
    while (r > 1 && r * r > v / r) --r;          // r^3 <= v
    while ((r + 1) * (r + 1) <= v / (r + 1)) ++r;  // (r+1)^3 > v
    return r;
}

u128 floor_div(u128 num, u128 den) {
    if (den == 0) throw std::domain_error("division by zero");
    return num / den;
}

std::string to_string(u128 v) {
    if (v == 0) return "0";
    char buf[40];
    int pos = 40;
    while (v > 0) {
        buf[--pos] = char('0' + unsigned(v % 10));
        v /= 10;
    }
    return std::string(buf + pos, 40 - pos);
}

std::string to_string(i128 v) {
    if (v < 0) return "-" + to_string(static_cast<u128>(-v));
    return to_string(static_cast<u128>(v));
}

u128 parse_u128(std::string_view s) {
    if (s.empty())
        throw std::invalid_argument("parse_u128: empty string");
    constexpr u128 limit = (u128(1) << 127) - 1;
    u128 v = 0;
    for (char c : s) {
        if (c < '0' || c > '9')
            throw std::invalid_argument("parse_u128: invalid digit in \"" + std::string(s) + "\"");
        unsigned d = unsigned(c - '0');
        if (v > (limit - d) / 10)
            throw std::out_of_range("parse_u128: value exceeds 2^127-1");
        v = v * 10 + d;
    }
    return v;
}

}  // namespace sqfree

std::ostream& operator<<(std::ostream& os, sqfree::u128 v) {
    return os << sqfree::to_string(v);
}

std::ostream& operator<<(std::ostream& os, sqfree::i128 v) {
    return os << sqfree::to_string(v);
}
