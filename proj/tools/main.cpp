// sqfree: exact square-free counting up to 10^36.
//
// Subcommands:
//   count   print S(n) for one n
//   verify  recompute S(10^e) for e = 0..max-e and compare with the built-in table
//   bench   time the parallel counter across worker counts
//
// Exit codes: 0 ok, 1 verification mismatch, 2 usage error, 3 internal error.

#include "CLI11.hpp"
#include "json.hpp"

#include "sqfree/counting.hpp"
#include "sqfree/fast.hpp"
#include "sqfree/golden.hpp"
#include "sqfree/parallel.hpp"

#include <chrono>
#include <cstdio>
#include <iostream>
#include <optional>
#include <span>
#include <string>
#include <thread>
#include <vector>

using json = nlohmann::ordered_json;
using namespace sqfree;

namespace {

struct CommonOpts {
    std::string algo = "fast";
    u64 workers = 0;
    std::optional<u64> override_I;
    std::optional<u64> override_B;
    std::optional<double> ts, tu;
    std::string report = "text";
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

u128 parse_n(const std::string& text) {
    u128 n;
    try {
        n = parse_u128(text);
    } catch (const std::exception& e) {
        throw CLI::ValidationError("--n", std::string("not a nonnegative integer: ") + e.what());
    }
    if (n > pow10_u128(36))
        throw CLI::ValidationError("--n", "value exceeds the supported bound 10^36");
    return n;
}

std::optional<CostModel> model_from(const CommonOpts& o) {
    if (!o.ts && !o.tu) return std::nullopt;
    CostModel m;
    if (o.ts) m.t_s = *o.ts;
    if (o.tu) m.t_u = *o.tu;
    return m;
}

CountResult dispatch(u128 n, const CommonOpts& o) {
    if (o.algo == "brute") return count_bruteforce(n);
    if (o.algo == "basic") return count_basic(n);
    if (o.algo == "fast-mem") {
        if (n < kFastMinN) return count_fast_inmemory(n);
        return count_fast_inmemory(n, choose_parameters(n, o.override_I, o.override_B));
    }
    if (o.algo == "fast") {
        if (n < kFastMinN) return count_fast_blocked(n);
        return count_fast_blocked(n, choose_parameters(n, o.override_I, o.override_B));
    }
    if (o.algo == "parallel")
        return count_parallel(n, o.workers, model_from(o), o.override_I, o.override_B);
    throw CLI::ValidationError("--algo", "unknown algorithm " + o.algo);
}

json stats_json(const RunStats& st) {
    json j = json::object();
    for (auto& [k, v] : st.as_map()) j[k] = v;
    return j;
}

void add_common(CLI::App* cmd, CommonOpts& o, bool with_algo = true, bool with_workers = true) {
    if (with_algo)
        cmd->add_option("--algo", o.algo, "algorithm")
            ->check(CLI::IsMember({"brute", "basic", "fast-mem", "fast", "parallel"}));
    if (with_workers)
        cmd->add_option("--workers", o.workers, "worker count for --algo parallel (0 = auto)");
    cmd->add_option("--I", o.override_I, "override the split parameter I");
    cmd->add_option("--block-size", o.override_B, "override the sieve block size B");
    cmd->add_option("--ts", o.ts, "cost-model seed: seconds per S1 summand");
    cmd->add_option("--tu", o.tu, "cost-model seed: seconds per Mx update");
    cmd->add_option("--report", o.report, "output form")
        ->check(CLI::IsMember({"text", "structured"}));
}

int run_count(const std::string& n_text, const CommonOpts& o) {
    u128 n = parse_n(n_text);
    auto t0 = std::chrono::steady_clock::now();
    CountResult res = dispatch(n, o);
    double elapsed = seconds_since(t0);

    if (o.report == "structured") {
        json j;
        j["command"] = "count";
        j["n"] = to_string(n);
        j["algorithm"] = algorithm_name(res.algorithm);
        j["s"] = to_string(res.s);
        j["elapsed_seconds"] = elapsed;
        j["workers"] = o.workers;
        j["approx"] = approx_count(n);
        j["stats"] = stats_json(res.stats);
        std::cout << j.dump(2) << "\n";
    } else {
        std::cout << to_string(res.s) << "\n";
        std::cerr << "algorithm=" << algorithm_name(res.algorithm) << " elapsed=" << elapsed
                  << "s blocks=" << res.stats.blocks << " updates=" << res.stats.updates
                  << " peak_words=" << res.stats.peak_words << "\n";
    }
    return 0;
}

int run_verify(unsigned max_e, const CommonOpts& o) {
    if (max_e > kGoldenMaxExp)
        throw CLI::ValidationError("--max-e", "table covers e = 0..36");
    bool all_ok = true;
    json rows = json::array();
    for (unsigned e = 0; e <= max_e; ++e) {
        u128 n = pow10_u128(e);
        auto t0 = std::chrono::steady_clock::now();
        CountResult res = dispatch(n, o);
        double elapsed = seconds_since(t0);
        u128 want = golden_value(e);
        bool ok = res.s >= 0 && u128(res.s) == want;
        all_ok = all_ok && ok;
        if (o.report == "structured") {
            json row;
            row["e"] = e;
            row["s"] = to_string(res.s);
            row["expected"] = to_string(want);
            row["pass"] = ok;
            row["elapsed_seconds"] = elapsed;
            rows.push_back(row);
        } else {
            std::cout << "e=" << e << " s=" << to_string(res.s) << " expected=" << to_string(want)
                      << (ok ? " PASS" : " FAIL") << "\n";
        }
    }
    if (o.report == "structured") {
        json j;
        j["command"] = "verify";
        j["algorithm"] = o.algo;
        j["rows"] = rows;
        j["pass"] = all_ok;
        std::cout << j.dump(2) << "\n";
    } else {
        std::cout << (all_ok ? "verify: all comparisons passed" : "verify: MISMATCH") << "\n";
    }
    return all_ok ? 0 : 1;
}

int run_bench(const std::string& n_text, std::vector<u64> counts, const CommonOpts& o) {
    u128 n = parse_n(n_text);
    if (n < kFastMinN)
        throw CLI::ValidationError("--n", "bench needs n >= 10^4 (the blocked counter's range)");
    if (counts.empty()) counts = {1, 2, 4};
    json rows = json::array();
    for (u64 w : counts) {
        auto t0 = std::chrono::steady_clock::now();

        Parameters p = choose_parameters(n, o.override_I, o.override_B);
        XSequence x = compute_x_sequence(p);
        PrimeList primes = primes_up_to(u64(isqrt(u128(p.D))));
        CostModel cm = model_from(o).value_or(CostModel{});
        WorkPartition part = partition(p, std::min(w, max_workers_for(n)), cm);
        u64 used = part.boundaries.size() - 1;

        double busy = 0.0;
        u64 updates = 0;
        i128 check = 0;
        {
            // same merge as count_parallel, but keeping per-worker busy times
            std::vector<WorkerResult> results(used);
            std::vector<std::exception_ptr> errors(used);
            std::vector<std::thread> pool;
            for (u64 q = 0; q < used; ++q)
                pool.emplace_back([&, q] {
                    try {
                        results[q] =
                            run_worker(part.boundaries[q], part.boundaries[q + 1], p, x, primes);
                    } catch (...) {
                        errors[q] = std::current_exception();
                    }
                });
            for (auto& t : pool) t.join();
            for (auto& e : errors)
                if (e) std::rethrow_exception(e);
            std::vector<i128> mx(size_t(p.I), 1);
            i128 s1 = 0;
            for (auto& wr : results) {
                busy += wr.busy_seconds;
                updates += wr.updates_done;
                s1 += wr.partial_s1;
                for (size_t i = 1; i < size_t(p.I); ++i) mx[i] += wr.mx_delta[i];
            }
            for (u64 i = p.I; i-- > 1;)
                for (u64 d = 2; d * d * i < p.I; ++d) mx[size_t(i)] -= mx[size_t(d * d * i)];
            check = s1 + assemble_s2(std::span<const i128>(mx.data() + 1, size_t(p.I - 1)),
                                     results.back().end_anchor);
        }
        double elapsed = seconds_since(t0);
        double ideal = busy / double(used);

        if (o.report == "structured") {
            json row;
            row["workers"] = used;
            row["elapsed_seconds"] = elapsed;
            row["ideal_seconds"] = ideal;
            row["updates"] = updates;
            row["s"] = to_string(check);
            rows.push_back(row);
        } else {
            std::cout << "workers=" << used << " elapsed=" << elapsed << "s ideal=" << ideal
                      << "s updates=" << updates << " s=" << to_string(check) << "\n";
        }
    }
    if (o.report == "structured") {
        json j;
        j["command"] = "bench";
        j["n"] = to_string(n);
        j["rows"] = rows;
        std::cout << j.dump(2) << "\n";
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact square-free counting"};
    app.require_subcommand(1);

    std::string n_text;
    unsigned max_e = 15;
    std::vector<u64> bench_workers;
    CommonOpts count_opts, verify_opts, bench_opts;
    verify_opts.algo = "fast";

    auto* count = app.add_subcommand("count", "compute S(n)");
    count->add_option("--n", n_text, "n as a decimal string, up to 10^36")->required();
    add_common(count, count_opts);

    auto* verify = app.add_subcommand("verify", "check S(10^e) against the built-in table");
    verify->add_option("--max-e", max_e, "largest exponent to verify (0..36)");
    add_common(verify, verify_opts);

    auto* bench = app.add_subcommand("bench", "time the parallel counter");
    bench->add_option("--n", n_text, "n as a decimal string, up to 10^36")->required();
    bench->add_option("--workers", bench_workers, "worker counts to run")->delimiter(',');
    add_common(bench, bench_opts, false, false);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (*count) return run_count(n_text, count_opts);
        if (*verify) return run_verify(max_e, verify_opts);
        if (*bench) return run_bench(n_text, bench_workers, bench_opts);
    } catch (const CLI::ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::out_of_range& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::length_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 3;
    }
    return 2;
}
