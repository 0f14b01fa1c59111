#pragma once

#include "sqfree/counting.hpp"
#include "sqfree/mertens.hpp"
#include "sqfree/mobius.hpp"

#include <optional>
#include <span>
#include <vector>

namespace sqfree {

// below this the fast variants delegate to count_basic: the parameter choice
// degenerates (I clamps toward 1) and the split buys nothing
inline constexpr u128 kFastMinN = 10'000;

struct Parameters {
    u128 n = 0;
    u64 I = 0;  // split count, 1 <= I <= icbrt(n/4) so the x sequence strictly decreases
    u64 D = 0;  // x_I = isqrt(n/I); S1 covers d <= D
    u64 B = 0;  // sieve block size, default isqrt(D)
    u64 L = 0;  // block count ceil(D/B)
};

// I = clamp(round(n^(1/5) (ln ln n)^(4/5)), 1, icbrt(n/4)) unless overridden.
// Throws "I exceeds cube-root bound" for an override outside [1, icbrt(n/4)].
Parameters choose_parameters(u128 n, std::optional<u64> override_I = {},
                             std::optional<u64> override_B = {});

struct XSequence {
    std::vector<u64> values;  // values[i-1] = x_i = isqrt(n/i), strictly decreasing

    u64 at(u64 i) const { return values[size_t(i - 1)]; }
    u64 size() const { return values.size(); }
};

XSequence compute_x_sequence(const Parameters& p);

// One row's update walk over the block (a, b]. k must be the smallest update
// position in (a, b] for this row (some d >= 2 has floor(xi/d) == k); applies
// mx -= (d_a - d_b) * M(k) for every update position in the block and returns
// the first position > b. Throws "invalid resume point" on a bad entry k.
u64 mx_block_update(u64 a, u64 b, u64 xi, u64 k, const MertensTable& mt, i128& mx,
                    u64& updates);

// S2 = sum_{1<=i<I} M(x_i) - (I-1) M(x_I); mx_final holds the I-1 row values
i128 assemble_s2(std::span<const i128> mx_final, i128 m_at_D);

// Scheduling state for the blocked pass: row accumulators, each row's next
// update position, and per-block buckets of rows due in that block.
struct UpdateState {
    u64 I = 0;
    u64 B = 0;
    u64 first_block = 0;   // global index of the first bucket held
    u64 block_count = 0;
    std::vector<i128> mx;  // index i in [1, I); [0] unused
    std::vector<u64> mink;
    std::vector<std::vector<u32>> ilist;
    u64 updates = 0;

    // rows start at their smallest update position > a_lo; positions beyond
    // horizon (or with no valid d >= 2) are left to other intervals
    void init(const Parameters& p, const XSequence& x, u64 a_lo, u64 horizon, i128 mx_init);
    void schedule(u64 i, u64 k);
};

// Block pipeline over (a_lo, a_hi] on the global grid a_l = B*l (the edge
// blocks may be partial when the interval splits a block): per block, sieve
// mu, add the S1 terms, chain Mertens prefixes from start_anchor, drain the
// due rows and reschedule them. Serial counting runs it over (0, D]; each
// parallel worker runs it over its own interval.
struct BlockPipelineResult {
    i128 s1 = 0;
    i128 end_anchor = 0;  // M(a_hi)
    u64 blocks = 0;
    u64 block_peak_words = 0;  // largest transient block allocation
    double s1_seconds = 0.0;
    double update_seconds = 0.0;
};

BlockPipelineResult run_block_pipeline(const Parameters& p, const XSequence& x,
                                       const PrimeList& primes, u64 a_lo, u64 a_hi,
                                       i128 start_anchor, UpdateState& state,
                                       bool time_phases = false);

// instrumentation hook for tests and calibration
struct FastDebug {
    std::vector<i128> mx_final;  // index i; [1, I) hold the final M(x_i)
    i128 m_at_D = 0;
    double s1_seconds = 0.0;
    double update_seconds = 0.0;
};

// Algorithm-2 style reference: full mu and Mertens tables up to D, rows
// resolved by the divisor recursion with arguments > D taken from already
// computed rows. Test-scale only; throws if D exceeds the memory budget.
CountResult count_fast_inmemory(u128 n, const Parameters& p);

// the production blocked counter: time ~n^(2/5), memory ~n^(1/5)
CountResult count_fast_blocked(u128 n, const Parameters& p, FastDebug* dbg = nullptr);

// parameter-choosing fronts; delegate to count_basic below kFastMinN
CountResult count_fast_inmemory(u128 n);
CountResult count_fast_blocked(u128 n);

}  // namespace sqfree
