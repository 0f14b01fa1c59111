#pragma once

#include "sqfree/fast.hpp"

#include <optional>
#include <vector>

namespace sqfree {

struct CostModel {
    double t_s = 1.0;  // mean cost of one S1 summand (sieve + divide)
    double t_u = 1.0;  // mean cost of one Mx update
};

// U(a): expected update count in the prefix (0, a].
//   I*a                                       for a <= (n/I)^(1/4)
//   n/(3a^3) - 2 sqrt(nI)/a + (8/3) n^(1/4) I^(3/4)   otherwise
double expected_updates(u64 a, u128 n, u64 I);

// T(a) = t_s a + t_u U(a)
double expected_work(u64 a, const CostModel& model, u128 n, u64 I);

// balance slack: each interval's modeled work stays within
// (1 + kBalanceSlack) * T(D)/P
inline constexpr double kBalanceSlack = 0.05;

struct WorkPartition {
    std::vector<u64> boundaries;  // a_0 = 0 < ... < a_P = D
    double total_work = 0.0;      // T(D)
    double max_interval_work = 0.0;
};

// Boundaries placed so T(a_p) tracks p*T(D)/P, found by bisection on the
// model. A boundary snaps to the block grid when a grid point lies within
// the balance slack of its target; otherwise it splits a block exactly
// (the first block alone holds ~3/8 of all updates, so even shares are
// impossible on the grid). Throws "too many workers for block granularity"
// when intervals cannot all be nonempty.
WorkPartition partition(const Parameters& p, u64 workers, const CostModel& model);

struct WorkerResult {
    i128 partial_s1 = 0;
    std::vector<i128> mx_delta;  // index i; only this interval's subtractions
    u64 updates_done = 0;
    u64 blocks = 0;
    i128 start_anchor = 0;  // M(a_p), computed from scratch
    i128 end_anchor = 0;    // M(a_{p+1}) after chaining through the interval
    u64 peak_words = 0;
    double busy_seconds = 0.0;
};

// One worker's pass over (a_lo, a_hi]: from-scratch Mertens checkpoint at
// a_lo, then the block pipeline restricted to the interval with locally
// derived first update positions per row.
WorkerResult run_worker(u64 a_lo, u64 a_hi, const Parameters& p, const XSequence& x,
                        const PrimeList& primes);

// Parallel counter: partition by the work model, run workers concurrently,
// merge the S1 parts and Mx deltas exactly, finish with the serial tail
// phase and the S2 assembly. Bit-identical to count_fast_blocked for any
// worker count. workers == 0 picks a default from the hardware.
CountResult count_parallel(u128 n, u64 workers, std::optional<CostModel> model = {},
                           std::optional<u64> override_I = {},
                           std::optional<u64> override_B = {});

// largest worker count the n^(2/15) checkpoint bound admits
u64 max_workers_for(u128 n);

// Measure t_s and t_u with an instrumented serial pass at n_probe; a provided
// seed is returned unchanged.
CostModel calibrate(std::optional<CostModel> seed, u128 n_probe);

}  // namespace sqfree
