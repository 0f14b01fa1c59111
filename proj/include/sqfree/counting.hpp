#pragma once

#include "sqfree/intmath.hpp"

#include <map>
#include <string>

namespace sqfree {

enum class Algorithm { brute, basic, fast_inmemory, fast_blocked, parallel };

const char* algorithm_name(Algorithm a);

struct RunStats {
    u64 blocks = 0;        // sieve blocks processed
    u64 updates = 0;       // in-block Mx updates applied
    u64 tail_updates = 0;  // Mx[i] -= Mx[d^2 i] corrections after the block loop
    u64 peak_words = 0;    // peak live elements across the major arrays

    std::map<std::string, u64> as_map() const;
};

struct CountResult {
    u128 n = 0;
    i128 s = 0;            // S(n)
    Algorithm algorithm = Algorithm::basic;
    RunStats stats;
    i128 s1 = 0;           // split parts where the algorithm produces them
    i128 s2 = 0;
};

// S(n) by mu(k) * floor(n/k^2) over k <= sqrt(n), sieved in blocks of
// ~K^(1/2); time O(sqrt(n) loglog n), memory O(n^(1/4))
CountResult count_basic(u128 n);

// per-integer oracle (marks all multiples of squares); n <= 10^7
CountResult count_bruteforce(u128 n);

// (6/pi^2) n, for sanity reporting only
double approx_count(u128 n);

}  // namespace sqfree
