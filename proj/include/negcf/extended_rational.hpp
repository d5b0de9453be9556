#pragma once

#include "negcf/bigint.hpp"

#include <compare>
#include <string>

namespace negcf {

/// An element of Q ∪ {∞} kept as a reduced fraction num/den with den >= 0.
/// The point at infinity is stored exactly as 1/0.
class ExtendedRational {
public:
    ExtendedRational() : num_(0), den_(1) {}
    ExtendedRational(long n) : num_(n), den_(1) {}  // NOLINT(google-explicit-constructor)
    ExtendedRational(BigInt num, BigInt den);

    static ExtendedRational infinity() { return ExtendedRational(BigInt(1), BigInt(0)); }

    const BigInt& num() const noexcept { return num_; }
    const BigInt& den() const noexcept { return den_; }

    bool is_infinite() const noexcept { return den_ == 0; }

    /// "num/den", or "inf" for ∞.
    std::string str() const;
    /// Like str() but integers print without "/1".
    std::string pretty() const;

    bool operator==(const ExtendedRational& o) const { return num_ == o.num_ && den_ == o.den_; }

private:
    BigInt num_;
    BigInt den_;
};

/// Order on finite values; ∞ compares greater than every finite value.
std::strong_ordering compare(const ExtendedRational& a, const ExtendedRational& b);

inline bool operator<(const ExtendedRational& a, const ExtendedRational& b) {
    return compare(a, b) == std::strong_ordering::less;
}
inline bool operator<=(const ExtendedRational& a, const ExtendedRational& b) {
    return compare(a, b) != std::strong_ordering::greater;
}

// Arithmetic on finite values only; ∞ operands throw PreconditionViolated.
ExtendedRational operator+(const ExtendedRational& a, const ExtendedRational& b);
ExtendedRational operator-(const ExtendedRational& a, const ExtendedRational& b);
ExtendedRational abs_of(const ExtendedRational& a);

/// Decimal expansion of a finite value to `digits` fractional digits, rounded
/// toward -∞ (round_up = false) or +∞ (round_up = true).
std::string to_decimal(const ExtendedRational& x, int digits, bool round_up);

struct ExtendedRationalHash {
    std::size_t operator()(const ExtendedRational& x) const;
};

}  // namespace negcf
