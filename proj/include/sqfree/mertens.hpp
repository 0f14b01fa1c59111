#pragma once

#include "sqfree/intmath.hpp"
#include "sqfree/mobius.hpp"

#include <vector>

namespace sqfree {

// Mertens prefix sums over a block (lo, hi], anchored at M(lo)
struct MertensTable {
    u64 lo = 0;
    u64 hi = 0;
    i128 anchor = 0;          // M(lo)
    std::vector<i128> m;      // m[k - lo - 1] == M(k)
    u64 alloc_words = 0;

    // M(k) for lo <= k <= hi; k == lo yields the anchor
    i128 at(u64 k) const { return k == lo ? anchor : m[size_t(k - lo - 1)]; }
};

// prefix-sums a Mobius block; anchor must equal M(block.lo)
MertensTable mertens_prefix_block(const MobiusBlock& block, i128 anchor);

// M at every quotient floor(x/k): values <= cutoff come from a direct sieve,
// larger ones from the divisor recursion evaluated in increasing order
struct MertensEvaluator {
    u64 x = 0;
    u64 cutoff = 0;
    std::vector<i64> small;   // small[v] = M(v) for v <= cutoff
    std::vector<i64> big;     // big[k] = M(floor(x/k)) for floor(x/k) > cutoff

    // v must be of the form floor(x/k)
    i64 at_quotient(u64 v) const {
        return v <= cutoff ? small[size_t(v)] : big[size_t(x / v)];
    }
};

MertensEvaluator mertens_evaluate(u64 x);

// M(x) exactly; time O(x^(2/3) polylog), transient memory O(x^(2/3)).
// Throws std::invalid_argument on x == 0.
i128 mertens_standalone(u64 x);

}  // namespace sqfree
