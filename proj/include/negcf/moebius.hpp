#pragma once

#include "negcf/bigint.hpp"
#include "negcf/coefficient_stream.hpp"
#include "negcf/extended_rational.hpp"

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace negcf {

/// z -> (az + b) / (cz + d) with ad - bc = 1, an element of the modular group.
class MoebiusMap {
public:
    /// Throws PreconditionViolated unless ad - bc = 1.
    MoebiusMap(BigInt a, BigInt b, BigInt c, BigInt d);

    static MoebiusMap identity() { return {1, 0, 0, 1}; }

    const BigInt& a() const noexcept { return a_; }
    const BigInt& b() const noexcept { return b_; }
    const BigInt& c() const noexcept { return c_; }
    const BigInt& d() const noexcept { return d_; }

    BigInt determinant() const { return a_ * d_ - b_ * c_; }

    MoebiusMap inverse() const { return {d_, -b_, -c_, a_}; }

    bool operator==(const MoebiusMap&) const = default;

private:
    BigInt a_, b_, c_, d_;
};

/// z -> b - 1/z, matrix ((b, -1), (1, 0)).
MoebiusMap s_map(const BigInt& b);

/// f ∘ g.
MoebiusMap compose(const MoebiusMap& f, const MoebiusMap& g);

/// Exact image of x, with ∞ handled projectively.
ExtendedRational apply(const MoebiusMap& f, const ExtendedRational& x);

/// s_0 ∘ s_1 ∘ ... ∘ s_{k-1} for the given coefficients (identity when empty).
MoebiusMap composite(std::span<const BigInt> coeffs);

/// Convergents v_k = c_k / d_k of a negative continued fraction.
///
/// c and d follow the three-term recurrence c_k = b_k c_{k-1} - c_{k-2} with
/// c_{-1} = 1, d_{-1} = 0, so consecutive pairs satisfy
/// c_{k-1} d_k - c_k d_{k-1} = 1. The raw c_k, d_k are kept unnormalized
/// (d_k may be negative); entries hold the reduced values.
struct ConvergentSeq {
    std::vector<ExtendedRational> entries;
    std::vector<BigInt> c;
    std::vector<BigInt> d;

    std::size_t size() const noexcept { return entries.size(); }
};

/// First n convergents. Throws StreamExhausted when a Finite stream is shorter
/// than n.
ConvergentSeq convergents(const CoefficientStream& s, std::size_t n);
ConvergentSeq convergents(std::span<const BigInt> coeffs);

/// Value of a finite continued fraction; the empty one evaluates to ∞.
ExtendedRational evaluate_finite(const Finite& s);
ExtendedRational evaluate_finite(std::span<const BigInt> coeffs);

struct Interval {
    ExtendedRational lo;
    ExtendedRational hi;

    ExtendedRational width() const { return hi - lo; }
    bool contains(const ExtendedRational& x) const { return lo <= x && x <= hi; }
    bool operator==(const Interval&) const = default;
};

/// Guaranteed enclosure of the limit of a continued fraction whose
/// coefficients b_1..b_n all have modulus at least 2, assuming the uninspected
/// tail keeps that property. Returns b_0 + T_n([-1, 1]) where
/// T_n = t_1 ∘ ... ∘ t_n and t_k(z) = -1/(b_k + z); the intervals are nested in
/// n and start from [b_0 - 1, b_0 + 1] at n = 0.
///
/// Throws PreconditionViolated if some |b_i| <= 1 with 1 <= i <= n, and
/// StreamExhausted if a Finite stream has fewer than n + 1 coefficients.
Interval enclose_value(const CoefficientStream& s, std::size_t n);
Interval enclose_value(std::span<const BigInt> coeffs);

/// Outward-rounded decimal rendering "[lo, hi]" with `digits` fractional digits.
struct DecimalEnclosure {
    std::string lo;
    std::string hi;
};
DecimalEnclosure to_decimal(const Interval& iv, int digits);

}  // namespace negcf
