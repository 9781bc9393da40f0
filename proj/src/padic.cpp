#include "collatz/padic.hpp"

#include <algorithm>

#include "collatz/kernel.hpp"

namespace collatz {

bool ParityVector::is_prefix_of(const ParityVector& other) const {
    return bits.size() <= other.bits.size() && std::equal(bits.begin(), bits.end(), other.bits.begin());
}

ParityVector parity_vector(const Natural& x, std::uint64_t k) {
    if (x.is_zero()) throw DomainError("parity_vector: x must be >= 1");
    if (k == 0) throw DomainError("parity_vector: k must be >= 1");
    ParityVector pv{x, {}};
    pv.bits.reserve(k);
    Natural t = x;
    for (std::uint64_t i = 0; i < k; ++i) {
        pv.bits.push_back(t.is_odd() ? 1 : 0);
        if (i + 1 < k) t = step_shortcut(t);
    }
    return pv;
}

Natural q_truncated(const Natural& x, std::uint64_t k) {
    const auto pv = parity_vector(x, k);
    Natural q;
    for (std::uint64_t i = 0; i < k; ++i) {
        if (pv.bits[i] != 0) q += Natural::pow2(i);
    }
    return q;
}

bool isometry_check(const Natural& x, const Natural& y, std::uint64_t k) {
    if (x.is_zero() || y.is_zero()) throw DomainError("isometry_check: x, y must be >= 1");
    const Natural modulus = Natural::pow2(k);
    const bool congruent = x % modulus == y % modulus;
    const bool same_prefix = q_truncated(x, k) == q_truncated(y, k);
    return congruent == same_prefix;
}

}  // namespace collatz
