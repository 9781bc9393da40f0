#include "collatz/verifier.hpp"

#include <algorithm>
#include <chrono>
#include <exception>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>
#include <thread>

#include <json.hpp>

namespace collatz {
namespace {

template <class U>
struct FixedResult {
    Outcome outcome;
    std::uint64_t steps;
    U peak;
};

// Returns nullopt when 3x+1 would overflow U.
template <class U>
std::optional<FixedResult<U>> run_fixed(U n, VerifyMode mode, std::uint64_t max_steps) {
    constexpr U kTripleLimit = (std::numeric_limits<U>::max() - 1) / 3;
    U x = n;
    U peak = n;
    std::uint64_t steps = 0;
    while (true) {
        if (mode == VerifyMode::DropBelowStart ? x < n : x == 1) return FixedResult<U>{Outcome::Converged, steps, peak};
        if (steps != 0 && x == n) return FixedResult<U>{Outcome::Cycle, steps, peak};
        if (steps == max_steps) return FixedResult<U>{Outcome::Unresolved, steps, peak};
        if ((x & 1) == 0) {
            x >>= 1;
        } else {
            if (x > kTripleLimit) return std::nullopt;
            x = 3 * x + 1;
            if (x > peak) peak = x;
        }
        ++steps;
    }
}

OneResult run_unbounded(const Natural& n, VerifyMode mode, std::uint64_t max_steps) {
    Natural x = n;
    OneResult r{Outcome::Unresolved, 0, n};
    while (true) {
        if (mode == VerifyMode::DropBelowStart ? x < n : x.is_one()) {
            r.outcome = Outcome::Converged;
            return r;
        }
        if (r.steps != 0 && x == n) {
            r.outcome = Outcome::Cycle;
            return r;
        }
        if (r.steps == max_steps) return r;
        if (x.is_even()) {
            x >>= 1;
        } else {
            x = x * Natural(3) + Natural(1);
            if (x > r.peak) r.peak = x;
        }
        ++r.steps;
    }
}

std::string join(const std::vector<Natural>& xs) {
    std::string out;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        if (i != 0) out += ',';
        out += xs[i].to_string();
    }
    return out;
}

nlohmann::ordered_json to_json(const Natural& n) {
    if (const auto v = n.to_u64()) return *v;
    return n.to_string();
}

RangeStats verify_chunk(const Natural& lo, const Natural& hi, VerifyMode mode, std::uint64_t max_steps) {
    RangeStats stats;
    const auto lo64 = lo.to_u64();
    const auto hi64 = hi.to_u64();
    if (lo64 && hi64) {
        for (std::uint64_t n = *lo64;; ++n) {
            if (const auto r = run_fixed<std::uint64_t>(n, mode, max_steps)) {
                stats.record(Natural(n), OneResult{r->outcome, r->steps, Natural(r->peak)});
            } else {
                stats.record(Natural(n), verify_one(Natural(n), mode, max_steps));
            }
            if (n == *hi64) break;
        }
        return stats;
    }
    for (Natural n = lo; n <= hi; n += Natural(1)) stats.record(n, verify_one(n, mode, max_steps));
    return stats;
}

std::vector<Natural> parse_list(std::string_view text) {
    std::vector<Natural> out;
    if (text.empty()) return out;
    std::size_t pos = 0;
    while (true) {
        const auto comma = text.find(',', pos);
        out.push_back(Natural::from_decimal(text.substr(pos, comma == std::string_view::npos ? text.npos : comma - pos)));
        if (comma == std::string_view::npos) break;
        pos = comma + 1;
    }
    return out;
}

}  // namespace

std::string_view to_string(VerifyMode m) {
    return m == VerifyMode::DropBelowStart ? "drop-below-start" : "full-to-one";
}

VerifyMode parse_verify_mode(std::string_view name) {
    if (name == "drop" || name == "drop-below-start") return VerifyMode::DropBelowStart;
    if (name == "full" || name == "full-to-one") return VerifyMode::FullToOne;
    throw std::invalid_argument("unknown verification mode '" + std::string(name) + "'");
}

void VerifyConfig::validate() const {
    if (lo < Natural(2)) throw DomainError("verify: lo must be >= 2");
    if (hi < lo) throw DomainError("verify: hi must be >= lo");
    if (chunk_size == 0) throw DomainError("verify: chunk_size must be >= 1");
    if (worker_count == 0) throw DomainError("verify: worker_count must be >= 1");
    if (checkpoint_interval == 0) throw DomainError("verify: checkpoint_interval must be >= 1");
    if (max_steps == 0) throw DomainError("verify: max_steps must be >= 1");
}

std::uint64_t config_digest(const VerifyConfig& cfg) {
    const std::string canon = "lo=" + cfg.lo.to_string() + ";hi=" + cfg.hi.to_string() +
                              ";chunk=" + std::to_string(cfg.chunk_size) + ";mode=" + std::string(to_string(cfg.mode)) +
                              ";max_steps=" + std::to_string(cfg.max_steps);
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : canon) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

OneResult verify_one(const Natural& n, VerifyMode mode, std::uint64_t max_steps) {
    if (n < Natural(2)) throw DomainError("verify_one: n must be >= 2");
    if (const auto n64 = n.to_u64()) {
        if (const auto r = run_fixed<std::uint64_t>(*n64, mode, max_steps)) {
            return {r->outcome, r->steps, Natural(r->peak)};
        }
    }
    if (const auto n128 = n.small()) {
        if (const auto r = run_fixed<u128>(*n128, mode, max_steps)) {
            return {r->outcome, r->steps, Natural::from_u128(r->peak)};
        }
    }
    return run_unbounded(n, mode, max_steps);
}

void RangeStats::record(const Natural& n, const OneResult& r) {
    ++numbers_checked;
    if (r.outcome == Outcome::Cycle) counterexamples.push_back(n);
    if (r.outcome == Outcome::Unresolved) unresolved.push_back(n);
    if (r.steps > max_steps) {
        max_steps = r.steps;
        max_steps_n = n;
    }
    if (r.peak > max_peak) {
        max_peak = r.peak;
        max_peak_n = n;
    }
}

void RangeStats::merge(const RangeStats& later) {
    numbers_checked += later.numbers_checked;
    if (later.max_steps > max_steps) {
        max_steps = later.max_steps;
        max_steps_n = later.max_steps_n;
    }
    if (later.max_peak > max_peak) {
        max_peak = later.max_peak;
        max_peak_n = later.max_peak_n;
    }
    counterexamples.insert(counterexamples.end(), later.counterexamples.begin(), later.counterexamples.end());
    unresolved.insert(unresolved.end(), later.unresolved.begin(), later.unresolved.end());
}

std::string render_report_text(const VerificationReport& r, bool include_elapsed) {
    std::ostringstream os;
    os << "range_lo=" << r.lo << '\n'
       << "range_hi=" << r.hi << '\n'
       << "counterexamples=" << join(r.stats.counterexamples) << '\n'
       << "unresolved=" << join(r.stats.unresolved) << '\n'
       << "numbers_checked=" << r.stats.numbers_checked << '\n'
       << "max_steps_n=" << r.stats.max_steps_n << '\n'
       << "max_steps=" << r.stats.max_steps << '\n'
       << "max_peak_n=" << r.stats.max_peak_n << '\n'
       << "max_peak=" << r.stats.max_peak << '\n';
    if (include_elapsed) {
        char buf[64];
        std::snprintf(buf, sizeof buf, "%.6f", r.elapsed_seconds);
        os << "elapsed_seconds=" << buf << '\n';
    }
    return os.str();
}

std::string render_report_json(const VerificationReport& r, bool include_elapsed) {
    nlohmann::ordered_json j;
    j["range_lo"] = to_json(r.lo);
    j["range_hi"] = to_json(r.hi);
    j["counterexamples"] = nlohmann::ordered_json::array();
    for (const auto& n : r.stats.counterexamples) j["counterexamples"].push_back(to_json(n));
    j["unresolved"] = nlohmann::ordered_json::array();
    for (const auto& n : r.stats.unresolved) j["unresolved"].push_back(to_json(n));
    j["numbers_checked"] = r.stats.numbers_checked;
    j["max_steps_n"] = to_json(r.stats.max_steps_n);
    j["max_steps"] = r.stats.max_steps;
    j["max_peak_n"] = to_json(r.stats.max_peak_n);
    j["max_peak"] = to_json(r.stats.max_peak);
    if (include_elapsed) j["elapsed_seconds"] = r.elapsed_seconds;
    return j.dump();
}

std::string serialize_checkpoint(const Checkpoint& c) {
    char digest[17];
    std::snprintf(digest, sizeof digest, "%016llx", static_cast<unsigned long long>(c.config_digest));
    const auto& s = c.partial_stats;
    std::ostringstream os;
    os << kCheckpointMagic << ' ' << c.format_version << '\n'
       << "digest=" << digest << '\n'
       << "lo=" << c.lo << '\n'
       << "hi=" << c.hi << '\n'
       << "next=" << c.next_unverified << '\n'
       << "checked=" << s.numbers_checked << '\n'
       << "max_steps_n=" << s.max_steps_n << '\n'
       << "max_steps=" << s.max_steps << '\n'
       << "max_peak_n=" << s.max_peak_n << '\n'
       << "max_peak=" << s.max_peak << '\n'
       << "counterexamples=" << join(s.counterexamples) << '\n'
       << "unresolved=" << join(s.unresolved) << '\n';
    return os.str();
}

Checkpoint parse_checkpoint(std::string_view text) {
    using Kind = CheckpointError::Kind;
    std::vector<std::string_view> lines;
    std::size_t pos = 0;
    while (pos < text.size()) {
        const auto nl = text.find('\n', pos);
        if (nl == std::string_view::npos) throw CheckpointError(Kind::Malformed, "checkpoint: missing final newline");
        lines.push_back(text.substr(pos, nl - pos));
        pos = nl + 1;
    }
    if (lines.empty()) throw CheckpointError(Kind::Malformed, "checkpoint: empty file");

    const std::string magic = std::string(kCheckpointMagic) + ' ';
    if (lines[0].substr(0, magic.size()) != magic) throw CheckpointError(Kind::Malformed, "checkpoint: bad header");
    const auto version = lines[0].substr(magic.size());
    if (version != std::to_string(kCheckpointVersion)) {
        throw CheckpointError(Kind::VersionMismatch, "checkpoint: unsupported version '" + std::string(version) + "'");
    }

    static constexpr std::string_view kKeys[] = {"digest", "lo", "hi", "next", "checked", "max_steps_n", "max_steps",
                                                 "max_peak_n", "max_peak", "counterexamples", "unresolved"};
    constexpr std::size_t kFieldCount = std::size(kKeys);
    if (lines.size() != kFieldCount + 1) throw CheckpointError(Kind::Malformed, "checkpoint: wrong number of lines");

    std::vector<std::string_view> values;
    for (std::size_t i = 0; i < kFieldCount; ++i) {
        const auto line = lines[i + 1];
        const auto eq = line.find('=');
        if (eq == std::string_view::npos || line.substr(0, eq) != kKeys[i]) {
            throw CheckpointError(Kind::Malformed, "checkpoint: expected field '" + std::string(kKeys[i]) + "'");
        }
        values.push_back(line.substr(eq + 1));
    }

    Checkpoint c;
    try {
        const auto digest = values[0];
        if (digest.size() != 16 || digest.find_first_not_of("0123456789abcdef") != std::string_view::npos) {
            throw std::invalid_argument("digest");
        }
        c.config_digest = std::stoull(std::string(digest), nullptr, 16);
        c.lo = Natural::from_decimal(values[1]);
        c.hi = Natural::from_decimal(values[2]);
        c.next_unverified = Natural::from_decimal(values[3]);
        auto& s = c.partial_stats;
        const auto checked = Natural::from_decimal(values[4]).to_u64();
        const auto steps = Natural::from_decimal(values[6]).to_u64();
        if (!checked || !steps) throw std::invalid_argument("counter out of range");
        s.numbers_checked = *checked;
        s.max_steps_n = Natural::from_decimal(values[5]);
        s.max_steps = *steps;
        s.max_peak_n = Natural::from_decimal(values[7]);
        s.max_peak = Natural::from_decimal(values[8]);
        s.counterexamples = parse_list(values[9]);
        s.unresolved = parse_list(values[10]);
    } catch (const std::invalid_argument& e) {
        throw CheckpointError(Kind::Malformed, std::string("checkpoint: bad value (") + e.what() + ")");
    }
    return c;
}

void checkpoint_write(const std::filesystem::path& path, const Checkpoint& c) {
    auto tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw CheckpointError(CheckpointError::Kind::Io, "checkpoint: cannot open " + tmp.string());
        out << serialize_checkpoint(c);
        out.flush();
        if (!out) throw CheckpointError(CheckpointError::Kind::Io, "checkpoint: write failed for " + tmp.string());
    }
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
    if (ec) throw CheckpointError(CheckpointError::Kind::Io, "checkpoint: rename failed: " + ec.message());
}

Checkpoint checkpoint_read(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw CheckpointError(CheckpointError::Kind::Io, "checkpoint: cannot open " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_checkpoint(buf.str());
}

VerificationReport verify_range(const VerifyConfig& cfg, const RunControls& controls) {
    cfg.validate();
    const auto t0 = std::chrono::steady_clock::now();
    const auto digest = config_digest(cfg);

    VerificationReport report;
    report.lo = cfg.lo;
    report.hi = cfg.hi;
    Natural next = cfg.lo;

    if (cfg.checkpoint_path && std::filesystem::exists(*cfg.checkpoint_path)) {
        auto ck = checkpoint_read(*cfg.checkpoint_path);
        if (ck.config_digest != digest || ck.lo != cfg.lo || ck.hi != cfg.hi) {
            throw CheckpointError(CheckpointError::Kind::DigestMismatch,
                                  "checkpoint: written for a different configuration");
        }
        if (ck.next_unverified < cfg.lo || (ck.next_unverified - cfg.lo) % Natural(cfg.chunk_size) != Natural(0)) {
            throw CheckpointError(CheckpointError::Kind::Malformed, "checkpoint: next is not a chunk boundary");
        }
        next = std::move(ck.next_unverified);
        report.stats = std::move(ck.partial_stats);
    }

    auto save = [&] {
        if (!cfg.checkpoint_path) return;
        checkpoint_write(*cfg.checkpoint_path, Checkpoint{kCheckpointVersion, digest, cfg.lo, cfg.hi, next, report.stats});
    };

    const Natural chunk(cfg.chunk_size);
    std::uint64_t merged = 0;
    bool stopped = controls.stop_after_chunks == std::uint64_t{0};
    while (next <= cfg.hi && !stopped) {
        std::uint64_t batch = cfg.worker_count;
        if (controls.stop_after_chunks) batch = std::min(batch, *controls.stop_after_chunks - merged);

        std::vector<std::pair<Natural, Natural>> bounds;
        for (Natural s = next; bounds.size() < batch && s <= cfg.hi; s += chunk) {
            Natural e = s + chunk - Natural(1);
            bounds.emplace_back(s, std::min(e, cfg.hi));
        }

        std::vector<RangeStats> results(bounds.size());
        if (bounds.size() == 1) {
            results[0] = verify_chunk(bounds[0].first, bounds[0].second, cfg.mode, cfg.max_steps);
        } else {
            std::vector<std::exception_ptr> errors(bounds.size());
            {
                std::vector<std::jthread> workers;
                workers.reserve(bounds.size());
                for (std::size_t i = 0; i < bounds.size(); ++i) {
                    workers.emplace_back([&, i] {
                        try {
                            results[i] = verify_chunk(bounds[i].first, bounds[i].second, cfg.mode, cfg.max_steps);
                        } catch (...) {
                            errors[i] = std::current_exception();
                        }
                    });
                }
            }
            for (const auto& e : errors) {
                if (e) std::rethrow_exception(e);
            }
        }

        for (std::size_t i = 0; i < bounds.size(); ++i) {
            report.stats.merge(results[i]);
            next = bounds[i].second + Natural(1);
            ++merged;
            stopped = controls.stop_after_chunks && merged >= *controls.stop_after_chunks;
            if (merged % cfg.checkpoint_interval == 0 || stopped || next > cfg.hi) save();
        }
    }

    report.complete = next > cfg.hi;
    report.elapsed_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return report;
}

}  // namespace collatz
