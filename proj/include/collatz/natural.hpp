#pragma once

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>

#include <boost/multiprecision/cpp_int.hpp>

namespace collatz {

using u128 = unsigned __int128;
using BigInt = boost::multiprecision::cpp_int;

/// Raised when an argument lies outside an operation's mathematical domain
/// (zero where a positive integer is required, an even input to the Syracuse
/// map, and so on).
class DomainError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Exact nonnegative integer of unbounded size.
///
/// Values that fit in 128 bits live in a machine-word fast path; anything
/// larger is promoted to an arbitrary-precision integer. The representation is
/// kept canonical (a value is big only when it does not fit in 128 bits), so
/// equality and ordering never depend on how a value was produced.
class Natural {
public:
    Natural() = default;
    Natural(std::uint64_t v) : rep_(static_cast<u128>(v)) {}  // NOLINT(google-explicit-constructor)
    static Natural from_u128(u128 v);
    static Natural from_big(BigInt v);

    /// Parses a decimal string of digits. Throws std::invalid_argument on
    /// empty input, signs, or non-digit characters.
    static Natural from_decimal(std::string_view text);

    /// 2^exponent.
    static Natural pow2(std::uint64_t exponent);

    bool is_small() const noexcept { return std::holds_alternative<u128>(rep_); }
    std::optional<u128> small() const noexcept;
    std::optional<std::uint64_t> to_u64() const noexcept;
    BigInt to_big() const;

    bool is_zero() const noexcept;
    bool is_one() const noexcept;
    bool is_even() const noexcept;
    bool is_odd() const noexcept { return !is_even(); }

    /// Number of significant bits; zero has bit length 0.
    std::uint64_t bit_length() const;
    /// Count of trailing zero bits. Undefined meaning for zero; returns 0.
    std::uint64_t trailing_zeros() const;
    /// True when exactly one bit is set.
    bool is_single_bit() const;

    std::string to_string() const;
    double to_double() const;

    Natural& operator+=(const Natural& rhs);
    /// Throws DomainError when the result would be negative.
    Natural& operator-=(const Natural& rhs);
    Natural& operator*=(const Natural& rhs);
    /// Throws DomainError on division by zero.
    Natural& operator/=(const Natural& rhs);
    Natural& operator%=(const Natural& rhs);
    Natural& operator<<=(std::uint64_t bits);
    Natural& operator>>=(std::uint64_t bits);

    friend Natural operator+(Natural a, const Natural& b) { return a += b; }
    friend Natural operator-(Natural a, const Natural& b) { return a -= b; }
    friend Natural operator*(Natural a, const Natural& b) { return a *= b; }
    friend Natural operator/(Natural a, const Natural& b) { return a /= b; }
    friend Natural operator%(Natural a, const Natural& b) { return a %= b; }
    friend Natural operator<<(Natural a, std::uint64_t bits) { return a <<= bits; }
    friend Natural operator>>(Natural a, std::uint64_t bits) { return a >>= bits; }

    /// Residue modulo a small nonzero divisor.
    std::uint64_t mod_small(std::uint64_t divisor) const;

    friend bool operator==(const Natural& a, const Natural& b);
    friend std::strong_ordering operator<=>(const Natural& a, const Natural& b);

private:
    explicit Natural(BigInt v);
    void normalize();

    std::variant<u128, BigInt> rep_{u128{0}};
};

std::ostream& operator<<(std::ostream& os, const Natural& n);

/// Decimal rendering of a 128-bit value.
std::string to_string(u128 v);

}  // namespace collatz
