// Acceptance suite: one line per criterion, [PASS]/[FAIL]/[WARN].
// Exit status is the number of hard failures.
//
// SQFREE_EXTENDED=1 adds the e = 16..18 golden rows (longer runtime).

#include "sqfree/counting.hpp"
#include "sqfree/fast.hpp"
#include "sqfree/golden.hpp"
#include "sqfree/mertens.hpp"
#include "sqfree/mobius.hpp"
#include "sqfree/parallel.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <random>
#include <string>
#include <thread>
#include <utility>
#include <vector>

using namespace sqfree;
using clk = std::chrono::steady_clock;

namespace {

int failures = 0;

double since(clk::time_point t0) {
    return std::chrono::duration<double>(clk::now() - t0).count();
}

void report(int id, bool ok, const std::string& what) {
    std::printf("[%s] criterion %d: %s\n", ok ? "PASS" : "FAIL", id, what.c_str());
    if (!ok) ++failures;
}

void report_soft(int id, bool ok, const std::string& what) {
    std::printf("[%s] criterion %d: %s\n", ok ? "PASS" : "WARN", id, what.c_str());
}

// ---- criterion 1: golden table rows via the blocked counter ----------------

void criterion_golden() {
    auto t0 = clk::now();
    bool ok = true;
    unsigned max_e = 15;
    for (unsigned e = 0; e <= max_e; ++e) {
        auto res = count_fast_blocked(pow10_u128(e));
        if (res.s < 0 || u128(res.s) != golden_value(e)) {
            ok = false;
            std::printf("  golden mismatch at e=%u: got %s\n", e, to_string(res.s).c_str());
        }
    }
    double el = since(t0);
    ok = ok && el < 60.0;
    char buf[160];
    std::snprintf(buf, sizeof buf,
                  "S(10^e) matches the published table for e=0..%u via count_fast_blocked "
                  "(%.2fs, budget 60s)",
                  max_e, el);
    report(1, ok, buf);

    if (const char* ext = std::getenv("SQFREE_EXTENDED"); ext && std::string(ext) == "1") {
        for (unsigned e = 16; e <= 18; ++e) {
            auto te = clk::now();
            auto res = count_fast_blocked(pow10_u128(e));
            bool okx = res.s >= 0 && u128(res.s) == golden_value(e);
            std::printf("  [extended %s] e=%u computed in %.2fs\n", okx ? "PASS" : "FAIL", e,
                        since(te));
            if (!okx) ++failures;
        }
    }
}

// ---- criterion 2: oracle equivalence at small n -----------------------------

void criterion_oracle_equivalence() {
    bool ok = true;

    // incremental brute-force oracle: prefix counts over a squareful sieve
    const u64 N = 100'000;
    std::vector<bool> squareful(N + 1, false);
    for (u64 d = 2; d * d <= N; ++d)
        for (u64 j = d * d; j <= N; j += d * d) squareful[size_t(j)] = true;
    std::vector<u64> prefix(N + 1, 0);
    for (u64 k = 1; k <= N; ++k) prefix[size_t(k)] = prefix[size_t(k - 1)] + (squareful[size_t(k)] ? 0 : 1);

    for (u64 n = 0; n <= N && ok; ++n) {
        i128 want = i128(prefix[size_t(n)]);
        if (count_basic(n).s != want || count_fast_inmemory(n).s != want ||
            count_fast_blocked(n).s != want) {
            ok = false;
            std::printf("  mismatch at n=%llu\n", (unsigned long long)n);
        }
    }

    std::mt19937_64 rng(281);
    for (int t = 0; t < 200 && ok; ++t) {
        u64 n = 100'000 + rng() % (10'000'000 - 100'000);
        i128 want = count_bruteforce(n).s;
        if (count_basic(n).s != want || count_fast_inmemory(n).s != want ||
            count_fast_blocked(n).s != want) {
            ok = false;
            std::printf("  mismatch at n=%llu\n", (unsigned long long)n);
        }
    }
    report(2, ok, "basic, fast-mem, fast and brute force agree for all n <= 10^5 "
                  "and 200 random n in [10^5, 10^7]");
}

// ---- criterion 3: cross-algorithm equality at scale -------------------------

void criterion_cross_scale() {
    bool ok = true;
    std::mt19937_64 rng(1923);
    for (int t = 0; t < 20 && ok; ++t) {
        u128 span = pow10_u128(11) - pow10_u128(8);
        u128 n = pow10_u128(8) + (((u128(rng()) << 64) | rng()) % span);
        if (count_basic(n).s != count_fast_blocked(n).s) {
            ok = false;
            std::printf("  mismatch at n=%s\n", to_string(n).c_str());
        }
    }
    report(3, ok, "count_basic == count_fast_blocked for 20 random n in [10^8, 10^11]");
}

// ---- criterion 4: parallel determinism --------------------------------------

void criterion_parallel_determinism() {
    bool ok = true;
    for (unsigned e : {10u, 12u}) {
        u128 n = pow10_u128(e);
        i128 serial = count_fast_blocked(n).s;
        for (u64 workers : {1, 2, 4, 8}) {
            i128 s = count_parallel(n, workers).s;
            if (s != serial) {
                ok = false;
                std::printf("  e=%u workers=%llu got %s, serial %s\n", e,
                            (unsigned long long)workers, to_string(s).c_str(),
                            to_string(serial).c_str());
            }
        }
        if (serial < 0 || u128(serial) != golden_value(e)) ok = false;
    }
    report(4, ok, "count_parallel identical for P in {1,2,4,8} at n in {10^10, 10^12} "
                  "and equal to count_fast_blocked");
}

// ---- criterion 5: update-walk arithmetic vs brute enumeration ---------------

void criterion_update_walk() {
    bool ok = true;
    std::mt19937_64 rng(5150);
    auto primes = primes_up_to(1024);
    auto block = tabulate_mobius_block(0, 500'016, primes);
    auto mert = mertens_prefix_block(block, 0);

    std::vector<u32> mult;  // position -> #{d >= 2 : floor(xi/d) == k}
    std::vector<u64> attained;
    int pairs = 0;
    while (pairs < 10'000 && ok) {
        u64 xi = 10 + rng() % 1'000'000;
        mult.assign(size_t(xi / 2 + 2), 0);
        for (u64 d = 2; d <= xi; ++d) mult[size_t(xi / d)]++;
        attained.clear();
        for (u64 k = 1; k < mult.size(); ++k)
            if (mult[size_t(k)]) attained.push_back(k);

        for (int j = 0; j < 100 && pairs < 10'000 && ok; ++j, ++pairs) {
            u64 d = 2 + rng() % (xi - 1);
            u64 k = xi / d;
            auto it = std::lower_bound(attained.begin(), attained.end(), k);
            if (it == attained.end() || *it != k) { ok = false; break; }

            i128 mx = 0;
            u64 updates = 0;
            u64 next = mx_block_update(k > 1 ? k - 1 : 0, k, xi, k, mert, mx, updates);
            u64 expect_next = (it + 1) == attained.end() ? xi : *(it + 1);
            i128 expect_mx = -i128(mult[size_t(k)]) * mert.at(k);
            if (updates != 1 || next != expect_next || mx != expect_mx) {
                ok = false;
                std::printf("  xi=%llu k=%llu: updates=%llu next=%llu (want %llu)\n",
                            (unsigned long long)xi, (unsigned long long)k,
                            (unsigned long long)updates, (unsigned long long)next,
                            (unsigned long long)expect_next);
            }
        }
    }
    report(5, ok, "multiplicity and next-k of the update walk match brute-force "
                  "enumeration over d for 10^4 random (x_i, k) pairs");
}

// ---- criterion 6: quotient identity -----------------------------------------

void criterion_quotient_identity() {
    bool ok = true;
    std::mt19937_64 rng(6174);
    int done = 0;
    while (done < 10'000) {
        u128 n = u128(10'000) + (((u128(rng()) << 64) | rng()) % (pow10_u128(12) - 10'000));
        Parameters p = choose_parameters(n);
        if (p.I < 5) continue;
        u64 i = 1 + rng() % ((p.I - 1) / 4 + 1);
        u64 dmax = u64(std::sqrt(double(p.I - 1) / double(i)));
        if (dmax < 2) continue;
        u64 d = 2 + rng() % (dmax - 1 ? dmax - 1 : 1);
        if (d * d * i >= p.I) continue;
        u64 xi = u64(isqrt(floor_div(n, i)));
        u64 xj = u64(isqrt(floor_div(n, d * d * i)));
        if (xi / d != xj) {
            ok = false;
            std::printf("  n=%s i=%llu d=%llu\n", to_string(n).c_str(), (unsigned long long)i,
                        (unsigned long long)d);
            break;
        }
        ++done;
    }
    report(6, ok, "floor(x_i/d) == x_{d^2 i} for 10^4 random valid (n, i, d)");
}

// ---- criterion 7: Mertens correctness ----------------------------------------

void criterion_mertens() {
    bool ok = true;

    // oracle prefix table to 10^5, then every x
    {
        auto block = tabulate_mobius(100'000);
        i64 run = 0;
        for (u64 x = 1; x <= 100'000 && ok; ++x) {
            run += block.at(x);
            if (mertens_standalone(x) != i128(run)) {
                ok = false;
                std::printf("  mismatch at x=%llu\n", (unsigned long long)x);
            }
        }
    }

    // 100 random x <= 10^8 against a streaming sieve prefix
    if (ok) {
        std::mt19937_64 rng(7001);
        std::vector<u64> xs;
        for (int t = 0; t < 100; ++t) xs.push_back(1 + rng() % 100'000'000);
        std::sort(xs.begin(), xs.end());
        auto primes = primes_up_to(10'000);
        i64 run = 0;
        u64 lo = 0;
        size_t idx = 0;
        while (lo < 100'000'000 && idx < xs.size() && ok) {
            u64 hi = std::min<u64>(100'000'000, lo + 1'000'000);
            auto block2 = tabulate_mobius_block(lo, hi, primes);
            for (u64 k = lo + 1; k <= hi; ++k) {
                run += block2.at(k);
                while (idx < xs.size() && xs[idx] == k) {
                    if (mertens_standalone(k) != i128(run)) {
                        ok = false;
                        std::printf("  mismatch at x=%llu\n", (unsigned long long)k);
                    }
                    ++idx;
                }
            }
            lo = hi;
        }
    }

    // recursion self-consistency: M(x) + sum_{d>=2} M(floor(x/d)) == 1
    if (ok) {
        std::mt19937_64 rng(7002);
        for (int t = 0; t < 50 && ok; ++t) {
            u64 x = 1 + rng() % 1'000'000'000;
            MertensEvaluator ev = mertens_evaluate(x);
            i128 sum = 0;
            u64 d = 2;
            while (d <= x) {
                u64 q = x / d;
                u64 d2 = x / q;
                sum += i128(d2 - d + 1) * ev.at_quotient(q);
                d = d2 + 1;
            }
            if (i128(ev.at_quotient(x)) + sum != 1) {
                ok = false;
                std::printf("  recursion violated at x=%llu\n", (unsigned long long)x);
            }
        }
    }
    report(7, ok, "mertens_standalone equals the prefix oracle (all x <= 10^5, 100 random "
                  "x <= 10^8); divisor recursion holds for 50 random x <= 10^9");
}

// ---- criterion 8: update-count model ------------------------------------------

void criterion_update_model() {
    bool ok = true;
    for (unsigned e : {10u, 12u}) {
        u128 n = pow10_u128(e);
        Parameters p = choose_parameters(n);
        auto res = count_fast_blocked(n, p);
        double model = expected_updates(p.D, n, p.I);
        double rel = std::abs(model - double(res.stats.updates)) / double(res.stats.updates);
        std::printf("  n=10^%u: exact=%llu model=%.0f rel=%.3f%%\n", e,
                    (unsigned long long)res.stats.updates, model, 100 * rel);
        if (rel > 0.05) ok = false;
    }

    // branch-point continuity of U(a)
    std::mt19937_64 rng(88);
    for (int t = 0; t < 100 && ok; ++t) {
        double n = 1e8 + double(rng() % u64(1e15));
        double I = 10 + double(rng() % 100'000);
        double a = std::pow(n / I, 0.25);
        double left = I * a;
        double right = n / (3 * a * a * a) - 2 * std::sqrt(n * I) / a +
                       (8.0 / 3.0) * std::pow(n, 0.25) * std::pow(I, 0.75);
        if (std::abs(left - right) / left > 1e-9) ok = false;
    }
    report(8, ok, "U(D) within 5% of the instrumented update count at n in {10^10, 10^12}; "
                  "branch-point continuity to 1e-9 relative");
}

// ---- criterion 9: memory contract ---------------------------------------------

void criterion_memory() {
    const u128 n = pow10_u128(12);
    Parameters p = choose_parameters(n);
    auto res = count_fast_blocked(n, p);
    u64 budget = 16 * (p.I + p.L + p.B);
    bool ok = res.stats.peak_words <= budget;
    char buf[200];
    std::snprintf(buf, sizeof buf,
                  "peak allocation at n=10^12 is %llu words <= 16*(I+L+B) = %llu "
                  "(baseline would need ~10^6)",
                  (unsigned long long)res.stats.peak_words, (unsigned long long)budget);
    report(9, ok, buf);
}

// ---- criterion 10: parallel speedup (soft) --------------------------------------

void criterion_speedup() {
    const u128 n = pow10_u128(14);
    auto timed = [&](u64 workers) {
        double best = 1e300;
        double ideal = 0;
        for (int rep = 0; rep < 3; ++rep) {
            auto t0 = clk::now();
            Parameters p = choose_parameters(n);
            XSequence x = compute_x_sequence(p);
            PrimeList primes = primes_up_to(u64(isqrt(u128(p.D))));
            WorkPartition part = partition(p, workers, CostModel{});
            std::vector<WorkerResult> results(workers);
            std::vector<std::thread> pool;
            for (u64 q = 0; q < workers; ++q)
                pool.emplace_back([&, q] {
                    results[q] = run_worker(part.boundaries[q], part.boundaries[q + 1], p, x, primes);
                });
            for (auto& t : pool) t.join();
            double busy = 0;
            for (auto& wr : results) busy += wr.busy_seconds;
            double el = since(t0);
            if (el < best) {
                best = el;
                ideal = busy / double(workers);
            }
        }
        return std::pair<double, double>(best, ideal);
    };

    auto [t1, i1] = timed(1);
    auto [t4, i4] = timed(4);
    double speedup = t1 / t4;
    double gap = (t4 - i4) / t4;
    bool ok = speedup >= 2.0 && gap <= 0.25;
    char buf[220];
    std::snprintf(buf, sizeof buf,
                  "n=10^14: 4-worker speedup %.2fx (want >= 2), ideal-vs-elapsed gap %.1f%% "
                  "(want <= 25%%); machine-dependent",
                  speedup, 100 * gap);
    report_soft(10, ok, buf);
}

}  // namespace

int main() {
    auto t0 = clk::now();
    criterion_golden();
    criterion_oracle_equivalence();
    criterion_cross_scale();
    criterion_parallel_determinism();
    criterion_update_walk();
    criterion_quotient_identity();
    criterion_mertens();
    criterion_update_model();
    criterion_memory();
    criterion_speedup();
    std::printf("acceptance finished in %.1fs with %d hard failure(s)\n", since(t0), failures);
    return failures;
}
