#include "sqfree/mobius.hpp"

#include <algorithm>
#include <cassert>
#include <stdexcept>

namespace sqfree {

namespace {

// simple sieve; limit must fit one bool array
std::vector<u64> simple_primes(u64 limit) {
    std::vector<u64> out;
    if (limit < 2) return out;
    std::vector<bool> composite(size_t(limit) + 1, false);
    for (u64 p = 2; p * p <= limit; ++p) {
        if (composite[size_t(p)]) continue;
        for (u64 j = p * p; j <= limit; j += p) composite[size_t(j)] = true;
    }
    for (u64 p = 2; p <= limit; ++p)
        if (!composite[size_t(p)]) out.push_back(p);
    return out;
}

}  // namespace

PrimeList primes_up_to(u64 limit, const SieveOptions& opts) {
    if (limit > opts.capacity)
        throw std::length_error("limit exceeds sieve capacity");
    PrimeList list;
    list.limit = limit;
    if (limit < 2) return list;

    if (limit <= opts.segment_threshold) {
        list.primes = simple_primes(limit);
        return list;
    }

    // segmented: base primes up to sqrt(limit), then fixed-size windows
    u64 root = u64(isqrt(u128(limit)));
    std::vector<u64> base = simple_primes(root);
    list.primes = base;
    u64 seg = opts.segment_threshold;
    std::vector<bool> window;
    for (u64 lo = root + 1; lo <= limit; lo += seg) {
        u64 hi = std::min(limit, lo + seg - 1);
        window.assign(size_t(hi - lo + 1), false);
        for (u64 p : base) {
            if (p * p > hi) break;
            u64 start = std::max(p * p, ((lo + p - 1) / p) * p);
            for (u64 j = start; j <= hi; j += p) window[size_t(j - lo)] = true;
        }
        for (u64 k = lo; k <= hi; ++k)
            if (!window[size_t(k - lo)]) list.primes.push_back(k);
    }
    return list;
}

MobiusBlock tabulate_mobius(u64 K) {
    if (K < 1) throw std::invalid_argument("tabulate_mobius: K must be >= 1");
    MobiusBlock block;
    block.lo = 0;
    block.hi = K;
    block.mu.assign(size_t(K), 1);
    block.alloc_words = K;

    std::vector<u64> primes = simple_primes(K);
    block.alloc_words += primes.size();
    for (u64 p : primes) {
        if (p * p <= K)
            for (u64 j = p * p; j <= K; j += p * p) block.mu[size_t(j - 1)] = 0;
        for (u64 j = p; j <= K; j += p) block.mu[size_t(j - 1)] = -block.mu[size_t(j - 1)];
    }
    return block;
}

MobiusBlock tabulate_mobius_block(u64 a, u64 b, const PrimeList& primes) {
    if (a >= b) throw std::invalid_argument("tabulate_mobius_block: need a < b");
    u64 root = u64(isqrt(u128(b)));
    if (primes.limit < root)
        throw std::invalid_argument("insufficient primes");

    u64 len = b - a;
    MobiusBlock block;
    block.lo = a;
    block.hi = b;
    block.mu.assign(size_t(len), 1);
    // product of the prime divisors found so far; a final value < k means one
    // prime factor > sqrt(b) was never sieved
    std::vector<u64> m(size_t(len), 1);
    block.alloc_words = 2 * len;

    for (u64 p : primes.primes) {
        if (p > root) break;
        u64 p2 = p * p;
        for (u64 j = (a / p2 + 1) * p2; j <= b; j += p2)
            block.mu[size_t(j - a - 1)] = 0;
        for (u64 j = (a / p + 1) * p; j <= b; j += p) {
            size_t idx = size_t(j - a - 1);
            block.mu[idx] = -block.mu[idx];
            m[idx] *= p;
        }
    }
    for (u64 k = a + 1; k <= b; ++k) {
        size_t idx = size_t(k - a - 1);
        if (m[idx] < k) block.mu[idx] = -block.mu[idx];
    }
    return block;
}

int mobius_oracle(u64 k) {
    if (k == 0) throw std::invalid_argument("mobius_oracle: k must be >= 1");
    int factors = 0;
    for (u64 p = 2; p * p <= k; ++p) {
        if (k % p != 0) continue;
        k /= p;
        if (k % p == 0) return 0;
        ++factors;
    }
    if (k > 1) ++factors;
    return (factors & 1) ? -1 : 1;
}

}  // namespace sqfree
