#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>

namespace collatz {

/// Outcome of running one named invariant suite.
struct PropResult {
    std::string suite;
    std::uint64_t cases_checked = 0;
    std::optional<std::string> first_counterexample;

    bool passed() const noexcept { return !first_counterexample; }
};

/// syracuse, mod3, pipeline, isometry, realagree
std::span<const std::string_view> prop_suite_names();

/// Runs the suite up to `bound`. Throws std::invalid_argument for an unknown
/// suite name.
///
///   syracuse   f(4k+1) = f(k) and f(2h-1) <= (3h-1)/2 for odd k, h <= bound;
///              f^(p-1)(2^p h - 1) = 2 3^(p-1) h - 1 for odd h <= min(bound, 1000), p <= 20
///   mod3       (2^k - 1) mod 3 is 0 for even k, 1 for odd k, 1 <= k <= bound
///   pipeline   classify_stage is consistent and reaches 1 for 2 <= n <= bound
///   isometry   `bound` seeded random pairs below 1e9, every 1 <= k <= 32
///   realagree  smooth maps match the integer maps at 1 <= n <= bound, rel. tol 1e-9
PropResult run_prop_suite(std::string_view suite, std::uint64_t bound);

}  // namespace collatz
