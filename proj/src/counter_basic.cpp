#include "sqfree/counting.hpp"

#include "sqfree/mobius.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace sqfree {

const char* algorithm_name(Algorithm a) {
    switch (a) {
        case Algorithm::brute: return "brute";
        case Algorithm::basic: return "basic";
        case Algorithm::fast_inmemory: return "fast-mem";
        case Algorithm::fast_blocked: return "fast";
        case Algorithm::parallel: return "parallel";
    }
    return "?";
}

std::map<std::string, u64> RunStats::as_map() const {
    return {
        {"blocks", blocks},
        {"updates", updates},
        {"tail_updates", tail_updates},
        {"peak_words", peak_words},
    };
}

CountResult count_basic(u128 n) {
    CountResult res;
    res.n = n;
    res.algorithm = Algorithm::basic;
    if (n == 0) return res;
    if (n == 1) {
        res.s = 1;
        return res;
    }

    u64 K = u64(isqrt(n));
    u64 B = std::max<u64>(u64(isqrt(u128(K))), 64);
    PrimeList primes = primes_up_to(u64(isqrt(u128(K))));

    i128 s = 0;
    u64 b = 0;
    while (b < K) {
        u64 a = b;
        b = std::min(b + B, K);
        MobiusBlock block = tabulate_mobius_block(a, b, primes);
        for (u64 k = a + 1; k <= b; ++k) {
            int8_t mu = block.at(k);
            if (mu != 0) s += i128(mu) * i128(n / (u128(k) * k));
        }
        res.stats.blocks++;
        res.stats.peak_words = std::max(res.stats.peak_words, block.alloc_words + primes.primes.size());
    }
    res.s = s;
    return res;
}

CountResult count_bruteforce(u128 n) {
    if (n > pow10_u128(7))
        throw std::out_of_range("count_bruteforce: n above oracle bound 10^7");
    CountResult res;
    res.n = n;
    res.algorithm = Algorithm::brute;
    u64 nn = u64(n);
    if (nn == 0) return res;

    std::vector<bool> squareful(size_t(nn) + 1, false);
    for (u64 d = 2; d * d <= nn; ++d)
        for (u64 j = d * d; j <= nn; j += d * d) squareful[size_t(j)] = true;
    u64 count = 0;
    for (u64 k = 1; k <= nn; ++k)
        if (!squareful[size_t(k)]) ++count;
    res.s = count;
    res.stats.peak_words = nn + 1;
    return res;
}

double approx_count(u128 n) {
    constexpr double inv_zeta2 = 0.6079271018540267;  // 6/pi^2
    return inv_zeta2 * double(n);
}

}  // namespace sqfree
