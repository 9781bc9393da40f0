#include "collatz/natural.hpp"

#include <algorithm>
#include <ostream>

namespace collatz {
namespace {

const BigInt& u128_max_big() {
    static const BigInt v = (BigInt(1) << 128) - 1;
    return v;
}

BigInt big_from(u128 v) {
    BigInt out = static_cast<std::uint64_t>(v >> 64);
    out <<= 64;
    out += static_cast<std::uint64_t>(v);
    return out;
}

u128 u128_from(const BigInt& v) {
    const auto hi = static_cast<std::uint64_t>(v >> 64);
    const auto lo = static_cast<std::uint64_t>(v & std::numeric_limits<std::uint64_t>::max());
    return (static_cast<u128>(hi) << 64) | lo;
}

int bit_width_u128(u128 v) {
    const auto hi = static_cast<std::uint64_t>(v >> 64);
    if (hi != 0) return 128 - __builtin_clzll(hi);
    const auto lo = static_cast<std::uint64_t>(v);
    return lo == 0 ? 0 : 64 - __builtin_clzll(lo);
}

}  // namespace

std::string to_string(u128 v) {
    if (v == 0) return "0";
    std::string out;
    while (v != 0) {
        out.push_back(static_cast<char>('0' + static_cast<int>(v % 10)));
        v /= 10;
    }
    std::reverse(out.begin(), out.end());
    return out;
}

Natural::Natural(BigInt v) : rep_(std::move(v)) { normalize(); }

Natural Natural::from_u128(u128 v) {
    Natural n;
    n.rep_ = v;
    return n;
}

Natural Natural::from_big(BigInt v) {
    if (v < 0) throw DomainError("negative value is not a natural number");
    return Natural(std::move(v));
}

Natural Natural::from_decimal(std::string_view text) {
    if (text.empty()) throw std::invalid_argument("empty number");
    for (char c : text) {
        if (c < '0' || c > '9') {
            throw std::invalid_argument("not a decimal number: '" + std::string(text) + "'");
        }
    }
    if (text.size() <= 38) {
        u128 v = 0;
        for (char c : text) v = v * 10 + static_cast<unsigned>(c - '0');
        return from_u128(v);
    }
    return Natural(BigInt(std::string(text)));
}

Natural Natural::pow2(std::uint64_t exponent) {
    if (exponent < 128) return from_u128(u128{1} << exponent);
    BigInt v = 1;
    v <<= exponent;
    return Natural(std::move(v));
}

void Natural::normalize() {
    if (auto* b = std::get_if<BigInt>(&rep_); b != nullptr && *b <= u128_max_big()) {
        rep_ = u128_from(*b);
    }
}

std::optional<u128> Natural::small() const noexcept {
    if (const auto* s = std::get_if<u128>(&rep_)) return *s;
    return std::nullopt;
}

std::optional<std::uint64_t> Natural::to_u64() const noexcept {
    const auto s = small();
    if (!s || (*s >> 64) != 0) return std::nullopt;
    return static_cast<std::uint64_t>(*s);
}

BigInt Natural::to_big() const {
    if (const auto* s = std::get_if<u128>(&rep_)) return big_from(*s);
    return std::get<BigInt>(rep_);
}

bool Natural::is_zero() const noexcept {
    const auto s = small();
    return s && *s == 0;
}

bool Natural::is_one() const noexcept {
    const auto s = small();
    return s && *s == 1;
}

bool Natural::is_even() const noexcept {
    if (const auto* s = std::get_if<u128>(&rep_)) return (*s & 1) == 0;
    return !boost::multiprecision::bit_test(std::get<BigInt>(rep_), 0);
}

std::uint64_t Natural::bit_length() const {
    if (const auto* s = std::get_if<u128>(&rep_)) return static_cast<std::uint64_t>(bit_width_u128(*s));
    return boost::multiprecision::msb(std::get<BigInt>(rep_)) + 1;
}

std::uint64_t Natural::trailing_zeros() const {
    if (const auto* s = std::get_if<u128>(&rep_)) {
        if (*s == 0) return 0;
        const auto lo = static_cast<std::uint64_t>(*s);
        if (lo != 0) return static_cast<std::uint64_t>(__builtin_ctzll(lo));
        return 64 + static_cast<std::uint64_t>(__builtin_ctzll(static_cast<std::uint64_t>(*s >> 64)));
    }
    return boost::multiprecision::lsb(std::get<BigInt>(rep_));
}

bool Natural::is_single_bit() const {
    if (const auto* s = std::get_if<u128>(&rep_)) return *s != 0 && (*s & (*s - 1)) == 0;
    const auto& b = std::get<BigInt>(rep_);
    return boost::multiprecision::lsb(b) == boost::multiprecision::msb(b);
}

std::string Natural::to_string() const {
    if (const auto* s = std::get_if<u128>(&rep_)) return collatz::to_string(*s);
    return std::get<BigInt>(rep_).str();
}

double Natural::to_double() const {
    if (const auto* s = std::get_if<u128>(&rep_)) return static_cast<double>(*s);
    return std::get<BigInt>(rep_).convert_to<double>();
}

Natural& Natural::operator+=(const Natural& rhs) {
    if (is_small() && rhs.is_small()) {
        u128 out;
        if (!__builtin_add_overflow(std::get<u128>(rep_), std::get<u128>(rhs.rep_), &out)) {
            rep_ = out;
            return *this;
        }
    }
    rep_ = to_big() + rhs.to_big();
    normalize();
    return *this;
}

Natural& Natural::operator-=(const Natural& rhs) {
    if (*this < rhs) throw DomainError("natural subtraction would go negative");
    if (is_small()) {
        rep_ = std::get<u128>(rep_) - std::get<u128>(rhs.rep_);
        return *this;
    }
    rep_ = to_big() - rhs.to_big();
    normalize();
    return *this;
}

Natural& Natural::operator*=(const Natural& rhs) {
    if (is_small() && rhs.is_small()) {
        u128 out;
        if (!__builtin_mul_overflow(std::get<u128>(rep_), std::get<u128>(rhs.rep_), &out)) {
            rep_ = out;
            return *this;
        }
    }
    rep_ = to_big() * rhs.to_big();
    normalize();
    return *this;
}

Natural& Natural::operator/=(const Natural& rhs) {
    if (rhs.is_zero()) throw DomainError("division by zero");
    if (is_small() && rhs.is_small()) {
        rep_ = std::get<u128>(rep_) / std::get<u128>(rhs.rep_);
        return *this;
    }
    rep_ = to_big() / rhs.to_big();
    normalize();
    return *this;
}

Natural& Natural::operator%=(const Natural& rhs) {
    if (rhs.is_zero()) throw DomainError("division by zero");
    if (is_small() && rhs.is_small()) {
        rep_ = std::get<u128>(rep_) % std::get<u128>(rhs.rep_);
        return *this;
    }
    rep_ = to_big() % rhs.to_big();
    normalize();
    return *this;
}

Natural& Natural::operator<<=(std::uint64_t bits) {
    if (bits == 0 || is_zero()) return *this;
    if (const auto* s = std::get_if<u128>(&rep_); s != nullptr && bits < 128 &&
                                                  static_cast<std::uint64_t>(bit_width_u128(*s)) + bits <= 128) {
        rep_ = *s << bits;
        return *this;
    }
    BigInt b = to_big();
    b <<= bits;
    rep_ = std::move(b);
    normalize();
    return *this;
}

Natural& Natural::operator>>=(std::uint64_t bits) {
    if (const auto* s = std::get_if<u128>(&rep_)) {
        rep_ = bits >= 128 ? u128{0} : (*s >> bits);
        return *this;
    }
    std::get<BigInt>(rep_) >>= bits;
    normalize();
    return *this;
}

std::uint64_t Natural::mod_small(std::uint64_t divisor) const {
    if (divisor == 0) throw DomainError("division by zero");
    if (const auto* s = std::get_if<u128>(&rep_)) return static_cast<std::uint64_t>(*s % divisor);
    return static_cast<std::uint64_t>(std::get<BigInt>(rep_) % divisor);
}

bool operator==(const Natural& a, const Natural& b) { return a.rep_ == b.rep_; }

std::strong_ordering operator<=>(const Natural& a, const Natural& b) {
    const auto* sa = std::get_if<u128>(&a.rep_);
    const auto* sb = std::get_if<u128>(&b.rep_);
    if (sa != nullptr && sb != nullptr) return *sa <=> *sb;
    // Canonical form: a big value always exceeds every small one.
    if (sa != nullptr) return std::strong_ordering::less;
    if (sb != nullptr) return std::strong_ordering::greater;
    const int c = std::get<BigInt>(a.rep_).compare(std::get<BigInt>(b.rep_));
    return c < 0 ? std::strong_ordering::less : c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal;
}

std::ostream& operator<<(std::ostream& os, const Natural& n) { return os << n.to_string(); }

}  // namespace collatz
