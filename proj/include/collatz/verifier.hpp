#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "collatz/natural.hpp"

namespace collatz {

enum class VerifyMode {
    DropBelowStart,  // stop once an iterate falls below the start
    FullToOne,       // iterate all the way down to 1
};

std::string_view to_string(VerifyMode m);
/// Accepts "drop" / "drop-below-start" and "full" / "full-to-one".
VerifyMode parse_verify_mode(std::string_view name);

inline constexpr std::uint64_t kDefaultChunkSize = std::uint64_t{1} << 20;
inline constexpr std::uint64_t kDefaultVerifySteps = 100'000;

struct VerifyConfig {
    Natural lo{2};
    Natural hi{2};
    std::uint64_t chunk_size = kDefaultChunkSize;
    VerifyMode mode = VerifyMode::DropBelowStart;
    std::uint64_t max_steps = kDefaultVerifySteps;
    unsigned worker_count = 1;
    std::optional<std::filesystem::path> checkpoint_path;
    std::uint64_t checkpoint_interval = 1;  // in chunks

    /// Throws DomainError unless 2 <= lo <= hi, chunk_size >= 1,
    /// worker_count >= 1, checkpoint_interval >= 1 and max_steps >= 1.
    void validate() const;
};

/// Stable 64-bit FNV-1a digest over the fields that determine the report
/// (lo, hi, chunk_size, mode, max_steps). Worker count and checkpoint
/// placement do not change results and are excluded.
std::uint64_t config_digest(const VerifyConfig& cfg);

enum class Outcome {
    Converged,
    Unresolved,  // step budget exhausted
    Cycle,       // orbit returned to its start without converging
};

struct OneResult {
    Outcome outcome = Outcome::Unresolved;
    std::uint64_t steps = 0;
    Natural peak;

    bool converged() const noexcept { return outcome == Outcome::Converged; }
};

/// Verifies a single n >= 2. Arithmetic runs in 64-bit words, then 128-bit,
/// then unbounded integers, restarting in the wider type on overflow.
OneResult verify_one(const Natural& n, VerifyMode mode, std::uint64_t max_steps = kDefaultVerifySteps);

/// Merged statistics over a verified prefix of the range. Ties on max_steps
/// and max_peak keep the smallest n.
struct RangeStats {
    std::uint64_t numbers_checked = 0;
    Natural max_steps_n;
    std::uint64_t max_steps = 0;
    Natural max_peak_n;
    Natural max_peak;
    std::vector<Natural> counterexamples;  // orbits that cycle without converging
    std::vector<Natural> unresolved;       // step budget exhausted

    void record(const Natural& n, const OneResult& r);
    void merge(const RangeStats& later);

    friend bool operator==(const RangeStats&, const RangeStats&) = default;
};

struct VerificationReport {
    Natural lo;
    Natural hi;
    RangeStats stats;
    bool complete = false;
    double elapsed_seconds = 0;

    bool all_converged() const { return stats.counterexamples.empty() && stats.unresolved.empty(); }
};

/// Flat key=value block. elapsed_seconds is omitted when include_elapsed is
/// false, which makes the rendering a deterministic function of the config.
std::string render_report_text(const VerificationReport& r, bool include_elapsed = true);
std::string render_report_json(const VerificationReport& r, bool include_elapsed = true);

// Checkpoint file, line-based text:
//   COLLATZ-CKPT 1
//   digest=<16 lowercase hex>
//   lo= hi= next= checked= max_steps_n= max_steps= max_peak_n= max_peak=
//   counterexamples= unresolved=   (comma-separated, possibly empty)
// one field per line in that order, each line terminated by '\n'.

inline constexpr std::string_view kCheckpointMagic = "COLLATZ-CKPT";
inline constexpr int kCheckpointVersion = 1;

struct Checkpoint {
    int format_version = kCheckpointVersion;
    std::uint64_t config_digest = 0;
    Natural lo;
    Natural hi;
    Natural next_unverified;
    RangeStats partial_stats;

    friend bool operator==(const Checkpoint&, const Checkpoint&) = default;
};

class CheckpointError : public std::runtime_error {
public:
    enum class Kind { Malformed, VersionMismatch, DigestMismatch, Io };

    CheckpointError(Kind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
    Kind kind() const noexcept { return kind_; }

private:
    Kind kind_;
};

std::string serialize_checkpoint(const Checkpoint& c);
Checkpoint parse_checkpoint(std::string_view text);

/// Writes to a sibling temporary file and renames it over `path`, so a failed
/// write leaves any previous checkpoint intact.
void checkpoint_write(const std::filesystem::path& path, const Checkpoint& c);
Checkpoint checkpoint_read(const std::filesystem::path& path);

struct RunControls {
    /// Stop (after writing a checkpoint) once this many chunks have been
    /// merged in this run. Simulates an interruption.
    std::optional<std::uint64_t> stop_after_chunks;
};

/// Verifies [lo, hi] in chunks aligned to lo + i * chunk_size. Chunks run on
/// worker_count threads and merge strictly in chunk order. When
/// checkpoint_path names an existing file the run resumes from it; a digest
/// mismatch throws CheckpointError.
VerificationReport verify_range(const VerifyConfig& cfg, const RunControls& controls = {});

}  // namespace collatz
