#pragma once

#include <cstdint>
#include <vector>

#include "collatz/natural.hpp"

namespace collatz {

inline constexpr std::uint64_t kDefaultParityBits = 64;

/// First k parities of the shortcut-map orbit of `source`:
/// bit i = T^i(source) mod 2.
struct ParityVector {
    Natural source;
    std::vector<std::uint8_t> bits;

    std::size_t length() const noexcept { return bits.size(); }
    bool is_prefix_of(const ParityVector& other) const;
};

ParityVector parity_vector(const Natural& x, std::uint64_t k = kDefaultParityBits);

/// Sum of bit_i * 2^i over the first k parity bits, i.e. Q(x) mod 2^k.
Natural q_truncated(const Natural& x, std::uint64_t k = kDefaultParityBits);

/// Evaluates both sides of the truncated isometry for one pair and reports
/// whether they agree: (x == y mod 2^k) <=> (q_truncated(x,k) == q_truncated(y,k)).
bool isometry_check(const Natural& x, const Natural& y, std::uint64_t k = kDefaultParityBits);

}  // namespace collatz
