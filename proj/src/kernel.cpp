#include "collatz/kernel.hpp"

#include <string>

namespace collatz {
namespace {

void require_positive(const Natural& n, const char* op) {
    if (n.is_zero()) throw DomainError(std::string(op) + ": n must be >= 1");
}

Natural triple_plus_one(const Natural& n) {
    if (const auto s = n.small(); s && *s <= (~u128{0} - 1) / 3) return Natural::from_u128(3 * *s + 1);
    return n * Natural(3) + Natural(1);
}

}  // namespace

std::string_view to_string(Variant v) {
    switch (v) {
        case Variant::Standard: return "standard";
        case Variant::Shortcut: return "shortcut";
        case Variant::Syracuse: return "syracuse";
    }
    return "?";
}

std::string_view to_string(StepKind k) {
    switch (k) {
        case StepKind::Halve: return "halve";
        case StepKind::TripleAddOne: return "triple_add_one";
        case StepKind::ShortcutOddStep: return "shortcut_odd";
        case StepKind::SyracuseStep: return "syracuse";
    }
    return "?";
}

Variant parse_variant(std::string_view name) {
    if (name == "standard") return Variant::Standard;
    if (name == "shortcut") return Variant::Shortcut;
    if (name == "syracuse") return Variant::Syracuse;
    throw std::invalid_argument("unknown variant '" + std::string(name) + "'");
}

Natural step_standard(const Natural& n) {
    require_positive(n, "step_standard");
    return n.is_even() ? n >> 1 : triple_plus_one(n);
}

Natural step_shortcut(const Natural& n) {
    require_positive(n, "step_shortcut");
    // 3n+1 is even for odd n, so the halving is exact.
    return n.is_even() ? n >> 1 : triple_plus_one(n) >> 1;
}

TwoAdicSplit v2_factor(const Natural& n) {
    require_positive(n, "v2_factor");
    const auto e = n.trailing_zeros();
    return {e, n >> e};
}

Natural syracuse_step(const Natural& k) {
    if (k.is_zero() || k.is_even()) throw DomainError("syracuse_step: input must be odd");
    return v2_factor(triple_plus_one(k)).odd_part;
}

std::pair<Natural, StepKind> step(const Natural& n, Variant variant) {
    switch (variant) {
        case Variant::Standard:
            return {step_standard(n), n.is_even() ? StepKind::Halve : StepKind::TripleAddOne};
        case Variant::Shortcut:
            return {step_shortcut(n), n.is_even() ? StepKind::Halve : StepKind::ShortcutOddStep};
        case Variant::Syracuse:
            return {syracuse_step(n), StepKind::SyracuseStep};
    }
    throw std::logic_error("unreachable variant");
}

Natural apply_step(const Natural& n, StepKind kind) {
    require_positive(n, "apply_step");
    switch (kind) {
        case StepKind::Halve:
            if (n.is_odd()) throw DomainError("halve applied to an odd value");
            return n >> 1;
        case StepKind::TripleAddOne:
            if (n.is_even()) throw DomainError("3n+1 applied to an even value");
            return triple_plus_one(n);
        case StepKind::ShortcutOddStep:
            if (n.is_even()) throw DomainError("(3n+1)/2 applied to an even value");
            return triple_plus_one(n) >> 1;
        case StepKind::SyracuseStep:
            return syracuse_step(n);
    }
    throw std::logic_error("unreachable step kind");
}

Trajectory trajectory(const Natural& start, Variant variant, std::uint64_t max_steps, bool continue_past_one) {
    require_positive(start, "trajectory");
    if (max_steps == 0) throw DomainError("trajectory: max_steps must be >= 1");
    if (variant == Variant::Syracuse && start.is_even()) {
        throw DomainError("trajectory: the Syracuse map needs an odd start");
    }

    Trajectory t;
    t.start = start;
    t.variant = variant;
    t.values.push_back(start);
    t.peak = start;
    t.terminated = start.is_one();

    Natural current = start;
    while (t.steps.size() < max_steps) {
        if (current.is_one() && !continue_past_one) break;
        auto [next, kind] = step(current, variant);
        if (next > t.peak) t.peak = next;
        t.steps.push_back(kind);
        t.values.push_back(next);
        current = std::move(next);
        if (current.is_one()) {
            t.terminated = true;
            if (!continue_past_one) break;
        }
    }
    return t;
}

std::vector<Natural> replay(const Natural& start, const std::vector<StepKind>& steps) {
    std::vector<Natural> out;
    out.reserve(steps.size() + 1);
    out.push_back(start);
    for (const auto kind : steps) out.push_back(apply_step(out.back(), kind));
    return out;
}

bool is_power_of_two(const Natural& n) { return n.is_single_bit(); }

bool is_power_of_four(const Natural& n) { return n.is_single_bit() && n.trailing_zeros() % 2 == 0; }

}  // namespace collatz
