#pragma once

#include "sqfree/intmath.hpp"

#include <cstdint>
#include <vector>

namespace sqfree {

// mu(k) over a half-open block (lo, hi]
struct MobiusBlock {
    u64 lo = 0;               // exclusive
    u64 hi = 0;               // inclusive
    std::vector<int8_t> mu;   // mu[k - lo - 1] == mu(k)
    u64 alloc_words = 0;      // array elements allocated while building the block

    int8_t at(u64 k) const { return mu[size_t(k - lo - 1)]; }
    u64 size() const { return hi - lo; }
};

struct PrimeList {
    u64 limit = 0;
    std::vector<u64> primes;  // all primes <= limit, ascending
};

struct SieveOptions {
    u64 segment_threshold = 100'000'000;  // simple sieve up to here, segmented beyond
    u64 capacity = 10'000'000'000ull;     // hard bound on limit
};

// all primes <= limit; throws std::length_error("limit exceeds sieve capacity")
PrimeList primes_up_to(u64 limit, const SieveOptions& opts = {});

// mu(k) for k in (0, K] with a single array of length K
MobiusBlock tabulate_mobius(u64 K);

// mu(k) for k in (a, b] sieving with primes <= sqrt(b); after the sieve passes,
// any k whose accumulated prime product m[k] is still < k has exactly one prime
// factor > sqrt(b) left, so its sign is flipped once more.
// Requires primes.limit >= isqrt(b); allocates O(b - a) words.
MobiusBlock tabulate_mobius_block(u64 a, u64 b, const PrimeList& primes);

// trial-division oracle; practical for k <= 10^12. Throws on k == 0.
int mobius_oracle(u64 k);

}  // namespace sqfree
