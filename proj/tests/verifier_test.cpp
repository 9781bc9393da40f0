#include <filesystem>
#include <fstream>

#include <doctest.h>

#include "collatz/verifier.hpp"
#include "oracle.hpp"

using namespace collatz;
namespace fs = std::filesystem;

namespace {

Natural N(std::uint64_t v) { return Natural(v); }

fs::path scratch(const std::string& name) {
    auto dir = fs::temp_directory_path() / "collatz_lab_tests";
    fs::create_directories(dir);
    auto p = dir / name;
    fs::remove(p);
    return p;
}

VerifyConfig small_config(std::uint64_t hi, std::uint64_t chunk, unsigned workers) {
    VerifyConfig cfg;
    cfg.lo = N(2);
    cfg.hi = N(hi);
    cfg.chunk_size = chunk;
    cfg.worker_count = workers;
    return cfg;
}

}  // namespace

TEST_CASE("verify_one examples") {
    const auto two = verify_one(N(2), VerifyMode::DropBelowStart);
    CHECK(two.converged());
    CHECK(two.steps == 1);
    CHECK(verify_one(N(2), VerifyMode::FullToOne).steps == 1);

    const auto r17 = verify_one(N(17), VerifyMode::FullToOne);
    CHECK(r17.converged());
    CHECK(r17.steps == 12);
    CHECK(r17.peak == N(52));

    const auto o = oracle::orbit_to_one(27);
    const auto r27 = verify_one(N(27), VerifyMode::FullToOne);
    CHECK(r27.converged());
    CHECK(r27.steps == o.steps);
    CHECK(r27.peak == N(o.peak));
    CHECK(verify_one(N(27), VerifyMode::DropBelowStart).steps == oracle::steps_below_start(27));

    CHECK_THROWS_AS(verify_one(N(1), VerifyMode::FullToOne), DomainError);
}

TEST_CASE("verify_one: budget exhaustion is unresolved") {
    const auto r = verify_one(N(27), VerifyMode::FullToOne, 50);
    CHECK(r.outcome == Outcome::Unresolved);
    CHECK_FALSE(r.converged());
}

TEST_CASE("verify_one promotes past 64 and 128 bits") {
    // 2^k - 1 climbs for k odd steps before any halving chain can bring it down.
    for (std::uint64_t k : {63, 64, 100, 127, 128, 160}) {
        const Natural n = Natural::pow2(k) - N(1);
        const auto r = verify_one(n, VerifyMode::DropBelowStart, 100'000);
        REQUIRE(r.converged());
        // oracle: the same walk in cpp_int
        boost::multiprecision::cpp_int x = n.to_big();
        const auto start = x;
        auto peak = x;
        std::uint64_t steps = 0;
        while (x >= start) {
            x = (x % 2 == 0) ? boost::multiprecision::cpp_int(x / 2) : boost::multiprecision::cpp_int(3 * x + 1);
            if (x > peak) peak = x;
            ++steps;
        }
        CHECK(r.steps == steps);
        CHECK(r.peak.to_big() == peak);
    }
}

TEST_CASE("config validation") {
    auto cfg = small_config(10, 4, 1);
    cfg.lo = N(1);
    CHECK_THROWS_AS(cfg.validate(), DomainError);
    cfg = small_config(10, 0, 1);
    CHECK_THROWS_AS(cfg.validate(), DomainError);
    cfg = small_config(10, 4, 0);
    CHECK_THROWS_AS(cfg.validate(), DomainError);
    cfg = small_config(10, 4, 1);
    cfg.lo = N(11);
    CHECK_THROWS_AS(verify_range(cfg), DomainError);
}

TEST_CASE("verify_range on a single number") {
    const auto r = verify_range(small_config(2, 16, 1));
    CHECK(r.complete);
    CHECK(r.stats.numbers_checked == 1);
    CHECK(r.all_converged());
}

TEST_CASE("DropBelowStart and FullToOne agree on [2, 1e4]") {
    auto drop = small_config(10'000, 512, 1);
    auto full = drop;
    full.mode = VerifyMode::FullToOne;
    const auto a = verify_range(drop);
    const auto b = verify_range(full);
    CHECK(a.stats.counterexamples == b.stats.counterexamples);
    CHECK(a.stats.unresolved == b.stats.unresolved);
    CHECK(a.all_converged());
    CHECK(a.stats.numbers_checked == 9999);

    // max-steps statistics against the oracle
    std::uint64_t best_n = 0;
    std::uint64_t best = 0;
    for (std::uint64_t n = 2; n <= 10'000; ++n) {
        const auto s = oracle::orbit_to_one(n).steps;
        if (s > best) {
            best = s;
            best_n = n;
        }
    }
    CHECK(b.stats.max_steps == best);
    CHECK(b.stats.max_steps_n == N(best_n));
}

TEST_CASE("reports are identical across worker counts") {
    std::string reference;
    for (unsigned workers : {1U, 2U, 3U, 8U}) {
        const auto text = render_report_text(verify_range(small_config(50'000, 997, workers)), false);
        if (reference.empty()) reference = text;
        CHECK(text == reference);
    }
    CHECK(reference.find("numbers_checked=49999\n") != std::string::npos);
}

TEST_CASE("report renderings") {
    VerificationReport r;
    r.lo = N(2);
    r.hi = N(10);
    r.stats.numbers_checked = 9;
    r.stats.max_steps_n = N(9);
    r.stats.max_steps = 19;
    r.stats.max_peak_n = N(7);
    r.stats.max_peak = N(52);
    r.stats.unresolved = {N(5), N(6)};
    r.elapsed_seconds = 0.5;
    CHECK(render_report_text(r) ==
          "range_lo=2\nrange_hi=10\ncounterexamples=\nunresolved=5,6\nnumbers_checked=9\nmax_steps_n=9\n"
          "max_steps=19\nmax_peak_n=7\nmax_peak=52\nelapsed_seconds=0.500000\n");
    CHECK(render_report_json(r, false) ==
          R"({"range_lo":2,"range_hi":10,"counterexamples":[],"unresolved":[5,6],"numbers_checked":9,)"
          R"("max_steps_n":9,"max_steps":19,"max_peak_n":7,"max_peak":52})");
}

TEST_CASE("checkpoint serialization") {
    Checkpoint c;
    c.config_digest = 0x00ab'cdef'0123'4567ULL;
    c.lo = N(2);
    c.hi = N(1000);
    c.next_unverified = N(258);
    c.partial_stats.numbers_checked = 256;
    c.partial_stats.max_steps_n = N(231);
    c.partial_stats.max_steps = 127;
    c.partial_stats.max_peak_n = N(255);
    c.partial_stats.max_peak = N(13120);

    const auto text = serialize_checkpoint(c);
    CHECK(text ==
          "COLLATZ-CKPT 1\ndigest=00abcdef01234567\nlo=2\nhi=1000\nnext=258\nchecked=256\nmax_steps_n=231\n"
          "max_steps=127\nmax_peak_n=255\nmax_peak=13120\ncounterexamples=\nunresolved=\n");
    CHECK(parse_checkpoint(text) == c);

    c.partial_stats.unresolved = {N(7), Natural::pow2(140)};
    CHECK(parse_checkpoint(serialize_checkpoint(c)) == c);

    const auto path = scratch("roundtrip.ckpt");
    checkpoint_write(path, c);
    CHECK(checkpoint_read(path) == c);
    CHECK_FALSE(fs::exists(path.string() + ".tmp"));
}

TEST_CASE("checkpoint errors are distinct") {
    Checkpoint c;
    c.lo = N(2);
    c.hi = N(9);
    c.next_unverified = N(2);
    const auto text = serialize_checkpoint(c);

    auto kind_of = [](const std::string& t) {
        try {
            parse_checkpoint(t);
        } catch (const CheckpointError& e) {
            return e.kind();
        }
        FAIL("expected a CheckpointError");
        return CheckpointError::Kind::Io;
    };
    CHECK(kind_of(text.substr(0, text.size() / 2)) == CheckpointError::Kind::Malformed);
    CHECK(kind_of(text.substr(0, text.size() - 1)) == CheckpointError::Kind::Malformed);
    CHECK(kind_of("") == CheckpointError::Kind::Malformed);
    CHECK(kind_of("COLLATZ-CKPT 2" + text.substr(text.find('\n'))) == CheckpointError::Kind::VersionMismatch);
    std::string bad_value = text;
    bad_value.replace(bad_value.find("next=2"), 6, "next=x");
    CHECK(kind_of(bad_value) == CheckpointError::Kind::Malformed);
    std::string bad_digest = text;
    bad_digest.replace(bad_digest.find("digest=") + 7, 1, "G");
    CHECK(kind_of(bad_digest) == CheckpointError::Kind::Malformed);

    // resuming under a different configuration
    auto cfg = small_config(5000, 100, 1);
    cfg.checkpoint_path = scratch("mismatch.ckpt");
    RunControls stop;
    stop.stop_after_chunks = 2;
    verify_range(cfg, stop);
    cfg.max_steps = 999;
    try {
        verify_range(cfg);
        FAIL("expected a digest mismatch");
    } catch (const CheckpointError& e) {
        CHECK(e.kind() == CheckpointError::Kind::DigestMismatch);
    }
}

TEST_CASE("interrupt and resume reproduce an uninterrupted run") {
    auto cfg = small_config(20'000, 1000, 2);
    const auto uninterrupted = render_report_text(verify_range(cfg), false);

    for (std::uint64_t stop_at : {1, 3, 7, 19}) {
        cfg.checkpoint_path = scratch("resume_" + std::to_string(stop_at) + ".ckpt");
        RunControls controls;
        controls.stop_after_chunks = stop_at;
        const auto partial = verify_range(cfg, controls);
        CHECK_FALSE(partial.complete);
        CHECK(partial.stats.numbers_checked == stop_at * 1000);
        const auto ck = checkpoint_read(*cfg.checkpoint_path);
        CHECK(ck.next_unverified == N(2 + stop_at * 1000));

        cfg.worker_count = 3;  // resuming with a different pool size is allowed
        const auto resumed = verify_range(cfg);
        CHECK(resumed.complete);
        CHECK(render_report_text(resumed, false) == uninterrupted);
        cfg.worker_count = 2;
    }
}

TEST_CASE("config digest ignores worker count and checkpoint placement") {
    auto a = small_config(100, 10, 1);
    auto b = small_config(100, 10, 7);
    b.checkpoint_path = "/tmp/x";
    b.checkpoint_interval = 5;
    CHECK(config_digest(a) == config_digest(b));
    b.mode = VerifyMode::FullToOne;
    CHECK(config_digest(a) != config_digest(b));
}
