// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any failure.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "collatz/cli.hpp"
#include "collatz/kernel.hpp"
#include "collatz/padic.hpp"
#include "collatz/realext.hpp"
#include "collatz/structure.hpp"
#include "collatz/verifier.hpp"

using namespace collatz;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

struct Verdict {
    bool pass = true;
    std::string detail;
};

Verdict fail(std::string why) { return {false, std::move(why)}; }

Natural N(std::uint64_t v) { return Natural(v); }

// 1. Golden trajectory, byte-exact, < 1 ms.
Verdict golden_trajectory() {
    std::ostringstream out;
    std::ostringstream err;
    const int code = run_cli({"trajectory", "17"}, out, err);
    const std::string want_values = "values=17,52,26,13,40,20,10,5,16,8,4,2,1\n";
    if (code != 0) return fail("exit code " + std::to_string(code));
    if (out.str().find(want_values) == std::string::npos) return fail("chain mismatch: " + out.str());
    if (out.str().find("steps=12\n") == std::string::npos) return fail("step count mismatch");

    double best = 1e9;
    for (int i = 0; i < 50; ++i) {
        const auto t0 = Clock::now();
        const auto t = trajectory(N(17));
        const double dt = seconds_since(t0);
        if (t.step_count() != 12) return fail("library step count mismatch");
        best = std::min(best, dt);
    }
    if (best >= 1e-3) return fail("runtime " + std::to_string(best * 1e3) + " ms");
    return {true, "runtime " + std::to_string(best * 1e6) + " us"};
}

// 2. Sets A and B, closed forms vs recurrences for n <= 30.
Verdict set_reproduction() {
    const std::uint64_t a[] = {5, 21, 85, 341, 1365, 5461};
    const std::uint64_t b[] = {10, 42, 170, 682, 2730, 10922};
    for (std::uint64_t i = 0; i < 6; ++i) {
        if (a_element(i + 1) != N(a[i])) return fail("A element " + std::to_string(i + 1));
        if (b_element(i + 1) != N(b[i])) return fail("B element " + std::to_string(i + 1));
    }
    Natural ra(5);
    Natural rb(10);
    for (std::uint64_t n = 1; n <= 30; ++n) {
        if (a_element(n) != ra || b_element(n) != rb) return fail("recurrence mismatch at n=" + std::to_string(n));
        ra = ra * N(4) + N(1);
        rb = rb * N(4) + N(2);
    }
    if (a_element(31) != ra || b_element(31) != rb) return fail("recurrence mismatch at n=31");
    return {true, "first six of A and B exact; recurrences hold to n=31"};
}

// 3. (2^k - 1) mod 3 dichotomy, k <= 1e4, unbounded integers, < 10 s.
Verdict divisibility() {
    const auto t0 = Clock::now();
    for (std::uint64_t k = 1; k <= 10'000; ++k) {
        const auto r = pow2_minus1_mod3(k);
        if (r != (k % 2 == 0 ? 0U : 1U)) return fail("k=" + std::to_string(k));
    }
    const double dt = seconds_since(t0);
    if (dt >= 10) return fail("runtime " + std::to_string(dt) + " s");
    return {true, "runtime " + std::to_string(dt) + " s"};
}

// 4. Odd multiples of 3 up to 1e6 have odd quotients.
Verdict odd_quotient() {
    std::uint64_t checked = 0;
    for (std::uint64_t x = 3; x <= 1'000'000; x += 6) {
        if (odd_quotient_by3(N(x)).is_even()) return fail("x=" + std::to_string(x));
        ++checked;
    }
    return {true, std::to_string(checked) + " odd multiples, 0 violations"};
}

// 5. Syracuse identities and inequality.
Verdict syracuse_suite() {
    for (std::uint64_t k = 1; k <= 100'000; k += 2) {
        if (syracuse_step(N(4 * k + 1)) != syracuse_step(N(k))) return fail("f(4k+1) != f(k) at k=" + std::to_string(k));
    }
    for (std::uint64_t h = 1; h <= 1000; h += 2) {
        Natural pow3(1);
        for (std::uint64_t p = 1; p <= 20; ++p) {
            Natural x = Natural::pow2(p) * N(h) - N(1);
            for (std::uint64_t i = 0; i + 1 < p; ++i) x = syracuse_step(x);
            if (x != N(2) * pow3 * N(h) - N(1)) {
                return fail("iterate identity at h=" + std::to_string(h) + " p=" + std::to_string(p));
            }
            pow3 *= N(3);
        }
    }
    for (std::uint64_t h = 1; h <= 100'000; h += 2) {
        if (syracuse_step(N(2 * h - 1)) * N(2) > N(3 * h - 1)) return fail("inequality at h=" + std::to_string(h));
    }
    return {true, "0 violations"};
}

// 6. Pipeline property for 2 <= n <= 1e6, < 60 s.
Verdict pipeline() {
    const auto t0 = Clock::now();
    for (std::uint64_t n = 2; n <= 1'000'000; ++n) {
        const Natural start(n);
        if (is_power_of_two(start)) continue;
        // direct walk: remember the two values before the first power of two
        Natural prev2;
        Natural prev1;
        Natural x = start;
        std::uint64_t index = 0;
        while (!is_power_of_two(x)) {
            prev2 = prev1;
            prev1 = x;
            x = step_standard(x);
            ++index;
        }
        if (!is_power_of_four(x)) return fail("first power of two not a power of 4 at n=" + std::to_string(n));
        if (!in_set_a(prev1)) return fail("predecessor not in A at n=" + std::to_string(n));
        if (index >= 2 && !in_set_b(prev2)) return fail("A-predecessor not in B at n=" + std::to_string(n));

        const auto report = classify_stage(start);
        if (!report.reached_one || !report.pipeline_consistent) return fail("stage report inconsistent at n=" + std::to_string(n));
    }
    const double dt = seconds_since(t0);
    if (dt >= 60) return fail("runtime " + std::to_string(dt) + " s");
    return {true, "0 violations, runtime " + std::to_string(dt) + " s"};
}

// 7. Truncated 2-adic isometry over 1e4 random pairs, k <= 32.
Verdict isometry() {
    std::mt19937_64 rng(20261016);
    std::uniform_int_distribution<std::uint64_t> value(1, 1'000'000'000);
    std::uniform_int_distribution<std::uint64_t> low_bits(1, 29);
    std::uint64_t congruent_cases = 0;
    for (int i = 0; i < 10'000; ++i) {
        const std::uint64_t x = value(rng);
        std::uint64_t y = value(rng);
        if (i % 2 == 1) {
            // share the low j bits so the congruent side is exercised as well
            const std::uint64_t m = std::uint64_t{1} << low_bits(rng);
            y = x % m + m * (value(rng) % (1'000'000'000 / m));
            if (y == 0) y = m;
        }
        for (std::uint64_t k = 1; k <= 32; ++k) {
            if ((x % (std::uint64_t{1} << k)) == (y % (std::uint64_t{1} << k))) ++congruent_cases;
            if (!isometry_check(N(x), N(y), k)) {
                return fail("x=" + std::to_string(x) + " y=" + std::to_string(y) + " k=" + std::to_string(k));
            }
        }
    }
    return {true, "320000 (pair, k) cases, " + std::to_string(congruent_cases) + " congruent, 0 violations"};
}

// 8. Smooth maps agree with the integer maps, n <= 1e6, rel. tol 1e-9.
Verdict real_agreement() {
    double worst = 0;
    for (std::uint64_t n = 1; n <= 1'000'000; ++n) {
        const double z = static_cast<double>(n);
        const double a = step_standard(N(n)).to_double();
        const double b = step_shortcut(N(n)).to_double();
        const double ea = std::fabs(smooth_map(z) - a) / (1 + a);
        const double eb = std::fabs(smooth_map_shortcut(z) - b) / (1 + b);
        worst = std::max({worst, ea, eb});
        if (ea > 1e-9 || eb > 1e-9) return fail("n=" + std::to_string(n));
    }
    char buf[64];
    std::snprintf(buf, sizeof buf, "worst relative error %.3g", worst);
    return {true, buf};
}

// 9. [2, 1e8] DropBelowStart clean; cross-mode equivalence at 1e5.
Verdict desk_verification() {
    VerifyConfig cfg;
    cfg.lo = N(2);
    cfg.hi = N(100'000'000);
    cfg.worker_count = std::max(1U, std::thread::hardware_concurrency());
    const auto big = verify_range(cfg);
    if (!big.complete || big.stats.numbers_checked != 99'999'999) return fail("incomplete run");
    if (!big.stats.counterexamples.empty()) return fail("counterexamples found");
    if (!big.stats.unresolved.empty()) return fail("unresolved numbers");

    VerifyConfig drop;
    drop.lo = N(2);
    drop.hi = N(100'000);
    drop.chunk_size = 4096;
    auto full = drop;
    full.mode = VerifyMode::FullToOne;
    const auto a = verify_range(drop);
    const auto b = verify_range(full);
    if (a.stats.counterexamples != b.stats.counterexamples || a.stats.unresolved != b.stats.unresolved) {
        return fail("modes disagree at 1e5");
    }
    if (!a.all_converged()) return fail("non-converged numbers below 1e5");
    return {true, "1e8 range in " + std::to_string(big.elapsed_seconds) + " s, max stopping steps " +
                      std::to_string(big.stats.max_steps) + " at n=" + big.stats.max_steps_n.to_string()};
}

// 10. Determinism across workers and across interrupt/resume; checkpoint round-trip.
Verdict determinism_and_resume() {
    VerifyConfig cfg;
    cfg.lo = N(2);
    cfg.hi = N(2'000'000);
    cfg.chunk_size = 1 << 16;

    std::string reference;
    for (unsigned workers : {1U, 2U, 4U, 7U}) {
        cfg.worker_count = workers;
        const auto text = render_report_text(verify_range(cfg), false) + render_report_json(verify_range(cfg), false);
        if (reference.empty()) reference = text;
        if (text != reference) return fail("report differs at worker_count=" + std::to_string(workers));
    }

    const auto dir = std::filesystem::temp_directory_path() / "collatz_lab_acceptance";
    std::filesystem::create_directories(dir);
    for (std::uint64_t stop_at : {1, 3, 17}) {
        cfg.worker_count = 2;
        cfg.checkpoint_path = dir / ("resume_" + std::to_string(stop_at) + ".ckpt");
        std::filesystem::remove(*cfg.checkpoint_path);
        RunControls controls;
        controls.stop_after_chunks = stop_at;
        verify_range(cfg, controls);

        const auto ck = checkpoint_read(*cfg.checkpoint_path);
        if (parse_checkpoint(serialize_checkpoint(ck)) != ck) return fail("checkpoint round-trip");
        checkpoint_write(*cfg.checkpoint_path, ck);
        if (checkpoint_read(*cfg.checkpoint_path) != ck) return fail("checkpoint file round-trip");

        cfg.worker_count = 3;
        const auto resumed = verify_range(cfg);
        const auto text = render_report_text(resumed, false) + render_report_json(resumed, false);
        if (text != reference) return fail("resume after chunk " + std::to_string(stop_at) + " differs");
        cfg.checkpoint_path.reset();
    }
    return {true, "identical across 1/2/4/7 workers and 3 interrupt points"};
}

}  // namespace

int main() {
    struct Criterion {
        const char* name;
        std::function<Verdict()> run;
    };
    const std::vector<Criterion> criteria = {
        {"1 golden trajectory", golden_trajectory},
        {"2 set reproduction", set_reproduction},
        {"3 divisibility dichotomy", divisibility},
        {"4 odd quotient", odd_quotient},
        {"5 syracuse suite", syracuse_suite},
        {"6 pipeline property", pipeline},
        {"7 2-adic isometry", isometry},
        {"8 real-extension agreement", real_agreement},
        {"9 desk-scale verification", desk_verification},
        {"10 determinism and resume", determinism_and_resume},
    };

    int failures = 0;
    for (const auto& c : criteria) {
        Verdict v;
        try {
            v = c.run();
        } catch (const std::exception& e) {
            v = fail(std::string("exception: ") + e.what());
        }
        std::printf("[%s] %s: %s\n", v.pass ? "PASS" : "FAIL", c.name, v.detail.c_str());
        std::fflush(stdout);
        failures += v.pass ? 0 : 1;
    }
    std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
    return failures == 0 ? 0 : 1;
}
