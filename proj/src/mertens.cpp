#include "sqfree/mertens.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <stdexcept>

namespace sqfree {

MertensTable mertens_prefix_block(const MobiusBlock& block, i128 anchor) {
    MertensTable table;
    table.lo = block.lo;
    table.hi = block.hi;
    table.anchor = anchor;
    table.m.resize(block.mu.size());
    table.alloc_words = block.mu.size();
    i128 run = anchor;
    for (size_t idx = 0; idx < block.mu.size(); ++idx) {
        run += block.mu[idx];
        table.m[idx] = run;
    }
    return table;
}

namespace {

constexpr u64 kMinCutoff = 1024;
constexpr u64 kMaxCutoff = u64(1) << 28;  // transient-memory bound for the direct sieve

u64 choose_cutoff(u64 x) {
    u64 y = u64(std::cbrtl((long double)x * (long double)x));  // ~x^(2/3)
    while (u128(y) * y * y < u128(x) * x) ++y;                 // ceil
    y = std::max(y, kMinCutoff);
    if (y > kMaxCutoff)
        throw std::length_error("mertens_standalone: x too large for the direct-sieve cutoff");
    return y;
}

// M(v) for all v <= y via blocked mu sieving
std::vector<i64> sieve_small_mertens(u64 y) {
    std::vector<i64> small(size_t(y) + 1, 0);
    PrimeList primes = primes_up_to(u64(isqrt(u128(y))));
    u64 bsize = std::max<u64>(u64(isqrt(u128(y))), 4096);
    i64 run = 0;
    for (u64 lo = 0; lo < y; lo += bsize) {
        u64 hi = std::min(y, lo + bsize);
        MobiusBlock block = tabulate_mobius_block(lo, hi, primes);
        for (u64 k = lo + 1; k <= hi; ++k) {
            run += block.at(k);
            small[size_t(k)] = run;
        }
    }
    return small;
}

}  // namespace

MertensEvaluator mertens_evaluate(u64 x) {
    if (x == 0) throw std::invalid_argument("mertens_evaluate: x must be >= 1");

    MertensEvaluator ev;
    ev.x = x;
    u64 y = choose_cutoff(x);
    if (y >= x) {
        ev.cutoff = x;
        ev.small = sieve_small_mertens(x);
        return ev;
    }
    ev.cutoff = y;
    ev.small = sieve_small_mertens(y);

    // quotients v = floor(x/k) > y exist exactly for k <= x/(y+1)
    u64 kmax = x / (y + 1);
    ev.big.assign(size_t(kmax) + 1, 0);
    for (u64 k = kmax; k >= 1; --k) {
        u64 v = x / k;
        // M(v) = 1 - sum_{d>=2} M(floor(v/d)), grouped into equal-quotient runs
        i128 acc = 1;
        u64 d = 2;
        while (d <= v) {
            u64 q = v / d;
            u64 d2 = v / q;
            i64 mq = q <= y ? ev.small[size_t(q)] : ev.big[size_t(k * d)];
            acc -= i128(d2 - d + 1) * mq;
            d = d2 + 1;
        }
        assert(acc <= i128(v) && acc >= -i128(v));
        ev.big[size_t(k)] = i64(acc);
    }
    return ev;
}

i128 mertens_standalone(u64 x) {
    if (x == 0) throw std::invalid_argument("mertens_standalone: x must be >= 1");
    MertensEvaluator ev = mertens_evaluate(x);
    return ev.at_quotient(x);
}

}  // namespace sqfree
