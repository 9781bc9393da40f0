#pragma once

#include <cstdint>
#include <string_view>
#include <vector>

#include "collatz/natural.hpp"

namespace collatz {

enum class Variant { Standard, Shortcut, Syracuse };

enum class StepKind {
    Halve,            // n -> n/2, even n only
    TripleAddOne,     // n -> 3n+1, odd n only
    ShortcutOddStep,  // n -> (3n+1)/2, odd n only
    SyracuseStep,     // k -> odd part of 3k+1, odd k only
};

std::string_view to_string(Variant v);
std::string_view to_string(StepKind k);
/// Accepts "standard", "shortcut", "syracuse". Throws std::invalid_argument.
Variant parse_variant(std::string_view name);

inline constexpr std::uint64_t kDefaultTrajectorySteps = 1'000'000;

struct Trajectory {
    Natural start;
    Variant variant = Variant::Standard;
    std::vector<Natural> values;  // values[0] == start
    std::vector<StepKind> steps;  // steps.size() == values.size() - 1
    Natural peak;
    bool terminated = false;  // reached 1 within the budget

    std::size_t step_count() const noexcept { return steps.size(); }
};

/// n/2 for even n, 3n+1 for odd n. Rejects n = 0.
Natural step_standard(const Natural& n);
/// n/2 for even n, (3n+1)/2 for odd n. Rejects n = 0.
Natural step_shortcut(const Natural& n);

struct TwoAdicSplit {
    std::uint64_t exponent = 0;
    Natural odd_part;
};

/// Splits n = 2^exponent * odd_part with odd_part odd. Rejects n = 0.
TwoAdicSplit v2_factor(const Natural& n);

/// Odd part of 3k+1, for odd k. Rejects even k.
Natural syracuse_step(const Natural& k);

/// One application of the step map named by the variant, together with the
/// kind of step that was taken.
std::pair<Natural, StepKind> step(const Natural& n, Variant variant);

/// Applies a single recorded step kind, checking the parity precondition.
Natural apply_step(const Natural& n, StepKind kind);

/// Iterates the chosen map from start until it reaches 1 or max_steps steps
/// have been taken. A start of 1 yields a zero-step trajectory unless
/// continue_past_one is set, in which case iteration runs through the 1-4-2
/// cycle until the budget is spent. Budget exhaustion is reported through
/// `terminated`, never thrown.
Trajectory trajectory(const Natural& start, Variant variant = Variant::Standard,
                      std::uint64_t max_steps = kDefaultTrajectorySteps, bool continue_past_one = false);

/// Rebuilds the value sequence from a start value and recorded step kinds.
std::vector<Natural> replay(const Natural& start, const std::vector<StepKind>& steps);

bool is_power_of_two(const Natural& n);
bool is_power_of_four(const Natural& n);

}  // namespace collatz
