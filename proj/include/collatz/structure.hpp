#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "collatz/kernel.hpp"
#include "collatz/natural.hpp"

namespace collatz {

// Stage sets. A holds the odd x != 1 with 3x+1 a power of four, i.e. the odd
// numbers one 3x+1 step before a power of two: 5, 21, 85, 341, ...
// B = 2A holds the even numbers one halving before A: 10, 42, 170, 682, ...

/// n-th element of A, (4^(n+1) - 1) / 3, for n >= 1.
Natural a_element(std::uint64_t n);
/// n-th element of B, 2 * a_element(n), for n >= 1.
Natural b_element(std::uint64_t n);

bool in_set_a(const Natural& x);
bool in_set_b(const Natural& x);

/// Every m with step_standard(m) == n, in ascending order. The doubling 2n is
/// always present; (n-1)/3 joins when it is an odd integer >= 1. The value 1
/// (the odd preimage of 4) is dropped unless include_one is set, since 1 is the
/// destination and not a stage before 4.
std::vector<Natural> preimages(const Natural& n, bool include_one = false);

struct BackwardNode {
    Natural value;
    std::uint64_t depth = 0;
    std::optional<Natural> parent;
    bool via_odd_branch = false;  // value == (parent - 1) / 3

    friend bool operator==(const BackwardNode&, const BackwardNode&) = default;
};

/// Breadth-first preimage tree rooted at `root`, `depth` levels deep, sorted by
/// (depth, value). A value already in the tree is not expanded again.
std::vector<BackwardNode> backward_tree(const Natural& root, std::uint64_t depth, bool include_one = false);

/// (2^k - 1) mod 3 computed on the exact integer, for k >= 1.
std::uint64_t pow2_minus1_mod3(std::uint64_t k);

/// x / 3 for an odd multiple of three; the quotient is odd.
Natural odd_quotient_by3(const Natural& x);

struct StageHit {
    std::uint64_t index = 0;
    Natural value;

    friend bool operator==(const StageHit&, const StageHit&) = default;
};

/// Where a standard trajectory enters each stage of the
/// ... -> B -> A -> 4^m -> 1 pipeline. Index 0 is the start itself.
struct StageReport {
    Natural start;
    std::optional<StageHit> first_b_hit;
    std::optional<StageHit> first_a_hit;
    /// Entry into the "4^m = 2^n" stage: the first power of two on the
    /// trajectory. For a start that is not a power of two this value is
    /// always a power of four.
    std::optional<StageHit> first_pow4_hit;
    std::optional<std::uint64_t> one_index;
    bool reached_one = false;
    bool pipeline_consistent = false;
};

StageReport classify_stage(const Natural& start, std::uint64_t max_steps = kDefaultTrajectorySteps);

}  // namespace collatz
