#include "sqfree/fast.hpp"

#include <algorithm>
#include <cassert>
#include <chrono>
#include <cmath>
#include <stdexcept>

namespace sqfree {

Parameters choose_parameters(u128 n, std::optional<u64> override_I,
                             std::optional<u64> override_B) {
    if (n < 4) throw std::invalid_argument("choose_parameters: n must be >= 4");
    u64 cap = u64(icbrt(n / 4));  // largest I keeping the x sequence strictly decreasing
    u64 I;
    if (override_I) {
        I = *override_I;
        if (I < 1 || I > cap)
            throw std::invalid_argument("I exceeds cube-root bound");
    } else {
        double raw = std::pow(double(n), 0.2) *
                     std::pow(std::log(std::log(double(n))), 0.8);
        I = u64(std::llround(raw));
        I = std::clamp<u64>(I, 1, cap);
    }

    Parameters p;
    p.n = n;
    p.I = I;
    p.D = u64(isqrt(floor_div(n, I)));
    if (override_B) {
        if (*override_B < 1)
            throw std::invalid_argument("block size must be >= 1");
        p.B = *override_B;
    } else {
        p.B = std::max<u64>(u64(isqrt(u128(p.D))), 1);
    }
    p.L = (p.D + p.B - 1) / p.B;
    return p;
}

XSequence compute_x_sequence(const Parameters& p) {
    XSequence x;
    x.values.resize(size_t(p.I));
    for (u64 i = 1; i <= p.I; ++i) {
        u128 xi = isqrt(floor_div(p.n, i));
        assert(xi < (u128(1) << 63));
        x.values[size_t(i - 1)] = u64(xi);
        if (i > 1 && x.values[size_t(i - 1)] >= x.values[size_t(i - 2)])
            throw std::logic_error("x sequence not strictly decreasing");
    }
    assert(p.I == 0 || x.values.back() == p.D);
    return x;
}

u64 mx_block_update(u64 a, u64 b, u64 xi, u64 k, const MertensTable& mt, i128& mx,
                    u64& updates) {
    if (!(a < k && k <= b))
        throw std::invalid_argument("invalid resume point: k outside block");
    u64 d_a = xi / k;
    if (d_a < 2 || xi / d_a != k)
        throw std::invalid_argument("invalid resume point: no d >= 2 maps to k");
    while (true) {
        u64 d_b = xi / (k + 1);
        mx -= i128(d_a - d_b) * mt.at(k);
        ++updates;
        if (d_b < 2) return xi;  // only d = 1 remains; x_i itself is not an update
        k = xi / d_b;
        d_a = d_b;
        if (k > b) return k;
    }
}

i128 assemble_s2(std::span<const i128> mx_final, i128 m_at_D) {
    i128 sum = 0;
    for (i128 v : mx_final) sum += v;
    return sum - i128(u64(mx_final.size())) * m_at_D;
}

void UpdateState::init(const Parameters& p, const XSequence& x, u64 a_lo, u64 horizon,
                       i128 mx_init) {
    I = p.I;
    B = p.B;
    first_block = a_lo / p.B;
    u64 last_exclusive = (horizon + p.B - 1) / p.B;  // block holding position `horizon`
    block_count = last_exclusive - first_block;
    mx.assign(size_t(I), mx_init);
    mink.assign(size_t(I), 0);
    ilist.assign(size_t(block_count), {});
    updates = 0;

    for (u64 i = 1; i < I; ++i) {
        u64 xi = x.at(i);
        u64 d = xi / (a_lo + 1);  // largest d with floor(xi/d) > a_lo
        if (d < 2) continue;      // no update position in (a_lo, x_i) remains
        u64 k = xi / d;           // smallest update position > a_lo
        mink[size_t(i)] = k;
        if (k <= horizon && k < xi) schedule(i, k);
    }
}

void UpdateState::schedule(u64 i, u64 k) {
    u64 bucket = (k - 1) / B;
    assert(bucket >= first_block && bucket < first_block + block_count);
    ilist[size_t(bucket - first_block)].push_back(u32(i));
}

BlockPipelineResult run_block_pipeline(const Parameters& p, const XSequence& x,
                                       const PrimeList& primes, u64 a_lo, u64 a_hi,
                                       i128 start_anchor, UpdateState& state,
                                       bool time_phases) {
    using clock = std::chrono::steady_clock;
    BlockPipelineResult res;
    i128 anchor = start_anchor;
    u64 horizon = std::min(a_hi, p.D);

    for (u64 l = state.first_block; l < state.first_block + state.block_count; ++l) {
        u64 a = std::max(p.B * l, a_lo);  // interval edges may split a block
        u64 b = std::min(p.B * (l + 1), a_hi);
        MobiusBlock mb = tabulate_mobius_block(a, b, primes);

        clock::time_point t0;
        if (time_phases) t0 = clock::now();
        i128 s1 = 0;
        for (u64 k = a + 1; k <= b; ++k) {
            int8_t mu = mb.at(k);
            if (mu != 0) s1 += i128(mu) * i128(p.n / (u128(k) * k));
        }
        res.s1 += s1;
        if (time_phases)
            res.s1_seconds += std::chrono::duration<double>(clock::now() - t0).count();

        MertensTable mt = mertens_prefix_block(mb, anchor);
        anchor = mt.at(b);

        if (time_phases) t0 = clock::now();
        auto& due = state.ilist[size_t(l - state.first_block)];
        for (u32 i : due) {
            u64 xi = x.at(i);
            u64 next = mx_block_update(a, b, xi, state.mink[size_t(i)], mt,
                                       state.mx[size_t(i)], state.updates);
            state.mink[size_t(i)] = next;
            if (next <= horizon && next < xi) state.schedule(i, next);
        }
        due.clear();
        if (time_phases)
            res.update_seconds += std::chrono::duration<double>(clock::now() - t0).count();

        res.blocks++;
        res.block_peak_words =
            std::max(res.block_peak_words, std::max(mb.alloc_words, mb.size() + mt.alloc_words));
    }
    res.end_anchor = anchor;
    return res;
}

namespace {

// tail corrections Mx[i] -= Mx[d^2 i] (the positions > D, via the quotient
// identity floor(x_i/d) = x_{d^2 i}); rows must be walked in decreasing i
u64 apply_tail_updates(std::vector<i128>& mx, u64 I) {
    u64 count = 0;
    for (u64 i = I; i-- > 1;) {
        for (u64 d = 2; d * d * i < I; ++d) {
            mx[size_t(i)] -= mx[size_t(d * d * i)];
            ++count;
        }
    }
    return count;
}

}  // namespace

CountResult count_fast_blocked(u128 n, const Parameters& p, FastDebug* dbg) {
    if (n < kFastMinN)
        throw std::invalid_argument("count_fast_blocked: n below the fast-path threshold");
    CountResult res;
    res.n = n;
    res.algorithm = Algorithm::fast_blocked;

    XSequence x = compute_x_sequence(p);
    PrimeList primes = primes_up_to(u64(isqrt(u128(p.D))));

    UpdateState state;
    state.init(p, x, 0, p.D, 1);
    BlockPipelineResult pipe =
        run_block_pipeline(p, x, primes, 0, p.D, 0, state, dbg != nullptr);

    res.stats.tail_updates = apply_tail_updates(state.mx, p.I);
    i128 m_at_D = pipe.end_anchor;
    res.s1 = pipe.s1;
    res.s2 = assemble_s2(std::span<const i128>(state.mx.data() + 1, size_t(p.I - 1)), m_at_D);
    res.s = res.s1 + res.s2;

    res.stats.blocks = pipe.blocks;
    res.stats.updates = state.updates;
    u64 base_words = u64(x.values.size()) + u64(state.mx.size()) + u64(state.mink.size()) +
                     u64(state.ilist.size()) + p.I /* bucket nodes */ +
                     u64(primes.primes.size());
    res.stats.peak_words = base_words + pipe.block_peak_words;

    if (dbg) {
        dbg->mx_final = state.mx;
        dbg->m_at_D = m_at_D;
        dbg->s1_seconds = pipe.s1_seconds;
        dbg->update_seconds = pipe.update_seconds;
    }
    return res;
}

CountResult count_fast_inmemory(u128 n, const Parameters& p) {
    if (n < kFastMinN)
        throw std::invalid_argument("count_fast_inmemory: n below the fast-path threshold");
    constexpr u64 kMaxTable = u64(1) << 31;
    if (p.D > kMaxTable)
        throw std::length_error("count_fast_inmemory: memory budget exceeded");

    CountResult res;
    res.n = n;
    res.algorithm = Algorithm::fast_inmemory;

    XSequence x = compute_x_sequence(p);
    u64 D = p.D;
    MobiusBlock mu = tabulate_mobius(D);

    std::vector<i64> mert(size_t(D) + 1, 0);
    i64 run = 0;
    i128 s1 = 0;
    for (u64 d = 1; d <= D; ++d) {
        int8_t m = mu.at(d);
        run += m;
        mert[size_t(d)] = run;
        if (m != 0) s1 += i128(m) * i128(n / (u128(d) * d));
    }

    std::vector<i128> mx(size_t(p.I), 0);
    for (u64 i = p.I; i-- > 1;) {
        u64 xi = x.at(i);
        i128 acc = 1;
        u64 d = 2;
        for (; d * d * i < p.I; ++d) acc -= mx[size_t(d * d * i)];  // arguments > D
        while (d <= xi) {  // arguments <= D, in equal-quotient runs
            u64 q = xi / d;
            u64 d2 = xi / q;
            acc -= i128(d2 - d + 1) * mert[size_t(q)];
            d = d2 + 1;
        }
        mx[size_t(i)] = acc;
    }

    res.s1 = s1;
    res.s2 = assemble_s2(std::span<const i128>(mx.data() + 1, size_t(p.I - 1)), mert[size_t(D)]);
    res.s = res.s1 + res.s2;
    res.stats.blocks = 1;
    res.stats.peak_words = mu.alloc_words + u64(mert.size()) + u64(mx.size()) + u64(x.values.size());
    return res;
}

CountResult count_fast_blocked(u128 n) {
    if (n < kFastMinN) return count_basic(n);
    return count_fast_blocked(n, choose_parameters(n));
}

CountResult count_fast_inmemory(u128 n) {
    if (n < kFastMinN) return count_basic(n);
    return count_fast_inmemory(n, choose_parameters(n));
}

}  // namespace sqfree
