#include "negcf/moebius.hpp"

#include "negcf/errors.hpp"

#include <utility>

namespace negcf {

MoebiusMap::MoebiusMap(BigInt a, BigInt b, BigInt c, BigInt d)
    : a_(std::move(a)), b_(std::move(b)), c_(std::move(c)), d_(std::move(d)) {
    if (determinant() != 1) throw PreconditionViolated("Moebius map determinant is not 1");
}

MoebiusMap s_map(const BigInt& b) { return {b, -1, 1, 0}; }

MoebiusMap compose(const MoebiusMap& f, const MoebiusMap& g) {
    return {f.a() * g.a() + f.b() * g.c(), f.a() * g.b() + f.b() * g.d(), f.c() * g.a() + f.d() * g.c(),
            f.c() * g.b() + f.d() * g.d()};
}

ExtendedRational apply(const MoebiusMap& f, const ExtendedRational& x) {
    return {f.a() * x.num() + f.b() * x.den(), f.c() * x.num() + f.d() * x.den()};
}

MoebiusMap composite(std::span<const BigInt> coeffs) {
    // Accumulate the matrix product in place; each factor has determinant 1.
    BigInt a = 1, b = 0, c = 0, d = 1;
    for (const BigInt& bk : coeffs) {
        BigInt na = a * bk + b;
        BigInt nc = c * bk + d;
        b = -a;
        d = -c;
        a = std::move(na);
        c = std::move(nc);
    }
    return {a, b, c, d};
}

ConvergentSeq convergents(std::span<const BigInt> coeffs) {
    ConvergentSeq out;
    out.entries.reserve(coeffs.size());
    out.c.reserve(coeffs.size());
    out.d.reserve(coeffs.size());
    BigInt c_prev = 1, d_prev = 0;
    BigInt c_cur, d_cur;
    for (std::size_t k = 0; k < coeffs.size(); ++k) {
        if (k == 0) {
            c_cur = coeffs[0];
            d_cur = 1;
        } else {
            BigInt c_next = coeffs[k] * c_cur - c_prev;
            BigInt d_next = coeffs[k] * d_cur - d_prev;
            c_prev = std::move(c_cur);
            d_prev = std::move(d_cur);
            c_cur = std::move(c_next);
            d_cur = std::move(d_next);
        }
        out.c.push_back(c_cur);
        out.d.push_back(d_cur);
        out.entries.emplace_back(c_cur, d_cur);
    }
    return out;
}

ConvergentSeq convergents(const CoefficientStream& s, std::size_t n) {
    if (auto len = length_of(s); len && *len < n)
        throw StreamExhausted("requested " + std::to_string(n) + " convergents from a finite stream of length " +
                              std::to_string(*len));
    const Coefficients coeffs = take(s, n);
    return convergents(std::span<const BigInt>(coeffs));
}

ExtendedRational evaluate_finite(std::span<const BigInt> coeffs) {
    if (coeffs.empty()) return ExtendedRational::infinity();
    return convergents(coeffs).entries.back();
}

ExtendedRational evaluate_finite(const Finite& s) { return evaluate_finite(std::span<const BigInt>(s.coeffs)); }

Interval enclose_value(std::span<const BigInt> coeffs) {
    if (coeffs.empty()) throw StreamExhausted("enclosure needs at least the coefficient b_0");
    // T = t_1 ∘ ... ∘ t_n with t_k = ((0, -1), (1, b_k)).
    BigInt a = 1, b = 0, c = 0, d = 1;
    for (std::size_t k = 1; k < coeffs.size(); ++k) {
        const BigInt& bk = coeffs[k];
        if (mpz_cmpabs_ui(bk.get_mpz_t(), 1) <= 0)
            throw PreconditionViolated("enclosure needs |b_i| >= 2, but b_" + std::to_string(k) + " = " + bk.get_str());
        BigInt nb = b * bk - a;
        BigInt nd = d * bk - c;
        a = std::move(b);
        c = std::move(d);
        b = std::move(nb);
        d = std::move(nd);
    }
    const MoebiusMap t(a, b, c, d);
    const ExtendedRational b0(coeffs[0], 1);
    return {b0 + apply(t, ExtendedRational(-1)), b0 + apply(t, ExtendedRational(1))};
}

Interval enclose_value(const CoefficientStream& s, std::size_t n) {
    if (auto len = length_of(s); len && *len < n + 1)
        throw StreamExhausted("enclosure depth " + std::to_string(n) + " exceeds finite stream of length " +
                              std::to_string(*len));
    const Coefficients coeffs = take(s, n + 1);
    return enclose_value(std::span<const BigInt>(coeffs));
}

DecimalEnclosure to_decimal(const Interval& iv, int digits) {
    return {to_decimal(iv.lo, digits, false), to_decimal(iv.hi, digits, true)};
}

}  // namespace negcf
