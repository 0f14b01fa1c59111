#include "sqfree/parallel.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <stdexcept>
#include <thread>

namespace sqfree {

double expected_updates(u64 a, u128 n, u64 I) {
    if (a == 0) return 0.0;
    double nd = double(n);
    double Id = double(I);
    double ad = double(a);
    double knee = std::pow(nd / Id, 0.25);
    if (ad <= knee) return Id * ad;
    return nd / (3.0 * ad * ad * ad) - 2.0 * std::sqrt(nd * Id) / ad +
           (8.0 / 3.0) * std::pow(nd, 0.25) * std::pow(Id, 0.75);
}

double expected_work(u64 a, const CostModel& model, u128 n, u64 I) {
    return model.t_s * double(a) + model.t_u * expected_updates(a, n, I);
}

WorkPartition partition(const Parameters& p, u64 workers, const CostModel& model) {
    if (workers < 1) throw std::invalid_argument("partition: need at least one worker");
    if (model.t_s < 0.0 || model.t_u < 0.0 || (model.t_s == 0.0 && model.t_u == 0.0))
        throw std::invalid_argument("partition: cost model rates must be nonnegative and not both zero");
    if (workers > p.D)
        throw std::invalid_argument("too many workers for block granularity");

    auto work = [&](u64 a) { return expected_work(a, model, p.n, p.I); };
    double total = work(p.D);
    // half the slack on each side keeps every interval within (1+slack)*T(D)/P
    double snap_tol = 0.5 * kBalanceSlack * total / double(workers);

    WorkPartition part;
    part.boundaries.assign(size_t(workers) + 1, 0);
    part.boundaries[size_t(workers)] = p.D;
    part.total_work = total;

    for (u64 q = 1; q < workers; ++q) {
        double target = total * double(q) / double(workers);
        // exact integer crossing: the smallest a with T(a) >= target
        u64 lo = 0, hi = p.D;
        while (lo + 1 < hi) {
            u64 mid = lo + (hi - lo) / 2;
            if (work(mid) < target)
                lo = mid;
            else
                hi = mid;
        }
        // prefer a block-grid point when one is inside the balance slack;
        // updates concentrate below sqrt(D), where a single block can exceed
        // a whole share, so those boundaries must split blocks
        u64 g0 = (hi / p.B) * p.B;
        u64 g1 = std::min(g0 + p.B, p.D);
        u64 chosen = hi;
        double e0 = std::abs(work(g0) - target);
        double e1 = std::abs(work(g1) - target);
        if (e0 <= snap_tol && e0 <= e1)
            chosen = g0;
        else if (e1 <= snap_tol)
            chosen = g1;

        u64 prev = part.boundaries[size_t(q - 1)];
        if (chosen <= prev) chosen = prev + 1;  // keep the interval nonempty
        if (chosen + (workers - 1 - q) >= p.D)
            throw std::invalid_argument("too many workers for block granularity");
        part.boundaries[size_t(q)] = chosen;
    }

    for (u64 q = 0; q < workers; ++q) {
        double w = work(part.boundaries[size_t(q + 1)]) - work(part.boundaries[size_t(q)]);
        part.max_interval_work = std::max(part.max_interval_work, w);
    }
    return part;
}

WorkerResult run_worker(u64 a_lo, u64 a_hi, const Parameters& p, const XSequence& x,
                        const PrimeList& primes) {
    auto t0 = std::chrono::steady_clock::now();
    WorkerResult res;
    res.start_anchor = a_lo == 0 ? i128(0) : mertens_standalone(a_lo);

    UpdateState state;
    state.init(p, x, a_lo, a_hi, 0);
    BlockPipelineResult pipe =
        run_block_pipeline(p, x, primes, a_lo, a_hi, res.start_anchor, state);

    res.partial_s1 = pipe.s1;
    res.end_anchor = pipe.end_anchor;
    res.updates_done = state.updates;
    res.blocks = pipe.blocks;
    res.mx_delta = std::move(state.mx);
    res.peak_words = u64(res.mx_delta.size()) + u64(state.mink.size()) +
                     u64(state.ilist.size()) + pipe.block_peak_words;
    res.busy_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return res;
}

u64 max_workers_for(u128 n) {
    double cap = std::pow(double(n), 2.0 / 15.0);
    u64 m = u64(cap);
    return std::max<u64>(m, 1);
}

CountResult count_parallel(u128 n, u64 workers, std::optional<CostModel> model,
                           std::optional<u64> override_I, std::optional<u64> override_B) {
    if (n < kFastMinN) return count_basic(n);
    if (workers == 0)
        workers = std::max<u64>(std::thread::hardware_concurrency(), 1);
    workers = std::min(workers, max_workers_for(n));

    Parameters p = choose_parameters(n, override_I, override_B);
    XSequence x = compute_x_sequence(p);
    PrimeList primes = primes_up_to(u64(isqrt(u128(p.D))));
    CostModel cm = model.value_or(CostModel{});
    WorkPartition part = partition(p, workers, cm);

    std::vector<WorkerResult> results(static_cast<size_t>(workers));
    std::vector<std::exception_ptr> errors(static_cast<size_t>(workers));
    {
        std::vector<std::thread> pool;
        pool.reserve(size_t(workers));
        for (u64 w = 0; w < workers; ++w) {
            pool.emplace_back([&, w] {
                try {
                    results[size_t(w)] = run_worker(part.boundaries[size_t(w)],
                                                    part.boundaries[size_t(w) + 1], p, x, primes);
                } catch (...) {
                    errors[size_t(w)] = std::current_exception();
                }
            });
        }
        for (auto& t : pool) t.join();
    }
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);

    // exact merge: one addition per worker into s1 and each Mx entry
    CountResult res;
    res.n = n;
    res.algorithm = Algorithm::parallel;
    std::vector<i128> mx(size_t(p.I), 1);
    i128 s1 = 0;
    u64 peak = u64(x.values.size()) + u64(primes.primes.size()) + u64(mx.size());
    for (const WorkerResult& wr : results) {
        s1 += wr.partial_s1;
        for (size_t i = 1; i < size_t(p.I); ++i) mx[i] += wr.mx_delta[i];
        res.stats.updates += wr.updates_done;
        res.stats.blocks += wr.blocks;
        peak += wr.peak_words;
    }
    res.stats.peak_words = peak;

    // serial tail phase, then the S2 assembly with M(D) from the last interval
    u64 tail = 0;
    for (u64 i = p.I; i-- > 1;)
        for (u64 d = 2; d * d * i < p.I; ++d) {
            mx[size_t(i)] -= mx[size_t(d * d * i)];
            ++tail;
        }
    res.stats.tail_updates = tail;
    i128 m_at_D = results.empty() ? i128(0) : results.back().end_anchor;
    res.s1 = s1;
    res.s2 = assemble_s2(std::span<const i128>(mx.data() + 1, size_t(p.I - 1)), m_at_D);
    res.s = res.s1 + res.s2;
    return res;
}

CostModel calibrate(std::optional<CostModel> seed, u128 n_probe) {
    if (seed) return *seed;
    if (n_probe < kFastMinN) n_probe = kFastMinN;
    Parameters p = choose_parameters(n_probe);
    FastDebug dbg;
    CountResult run = count_fast_blocked(n_probe, p, &dbg);
    CostModel cm;
    cm.t_s = std::max(dbg.s1_seconds / double(p.D), 1e-12);
    cm.t_u = std::max(dbg.update_seconds / double(std::max<u64>(run.stats.updates, 1)), 1e-12);
    return cm;
}

}  // namespace sqfree
