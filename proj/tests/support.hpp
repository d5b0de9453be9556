#pragma once

// Independent reference computations and random stream sources for tests.
// Nothing here calls the library's evaluation or rewriting code.

#include "negcf/bigint.hpp"
#include "negcf/coefficient_stream.hpp"
#include "negcf/extended_rational.hpp"

#include <optional>
#include <random>
#include <vector>

namespace oracle {

using negcf::BigInt;
using negcf::Coefficients;
using negcf::ExtendedRational;

// Back-to-front evaluation: [b_k, rest] = (b_k * num - den) / num.
inline ExtendedRational value(const Coefficients& b) {
    BigInt num = 1, den = 0;
    for (auto it = b.rbegin(); it != b.rend(); ++it) {
        BigInt next = *it * num - den;
        den = num;
        num = next;
    }
    return ExtendedRational(num, den);
}

inline std::vector<ExtendedRational> convergents(const Coefficients& b) {
    std::vector<ExtendedRational> out;
    for (std::size_t k = 1; k <= b.size(); ++k) out.push_back(value(Coefficients(b.begin(), b.begin() + k)));
    return out;
}

inline bool unit_or_zero(const BigInt& x) { return x == 0 || x == 1 || x == -1; }

struct Singularized {
    Coefficients coeffs;
    std::size_t m;
    int rule;  // the removed coefficient: 0, 1 or -1
};

// One singularization of a finite list, written directly from the rewrite
// rules. Empty when no coefficient past b_0 is 0 or ±1.
inline std::optional<Singularized> singularize(const Coefficients& b) {
    std::size_t m = 1;
    while (m < b.size() && !unit_or_zero(b[m])) ++m;
    if (m >= b.size()) return std::nullopt;
    Singularized out;
    out.m = m;
    out.rule = static_cast<int>(b[m].get_si());
    const bool last = m + 1 == b.size();
    for (std::size_t i = 0; i + 1 < m; ++i) out.coeffs.push_back(b[i]);
    if (out.rule == 0) {
        if (!last) out.coeffs.push_back(b[m - 1] + b[m + 1]);
        for (std::size_t i = m + 2; i < b.size(); ++i) out.coeffs.push_back(b[i]);
    } else {
        out.coeffs.push_back(b[m - 1] - out.rule);
        if (!last) out.coeffs.push_back(b[m + 1] - out.rule);
        for (std::size_t i = m + 2; i < b.size(); ++i) out.coeffs.push_back(b[i]);
    }
    return out;
}

}  // namespace oracle

namespace sample {

using negcf::BigInt;
using negcf::Coefficients;

inline BigInt uniform(std::mt19937_64& rng, long lo, long hi) {
    return BigInt(std::uniform_int_distribution<long>(lo, hi)(rng));
}

inline Coefficients list(std::mt19937_64& rng, std::size_t n, long lo, long hi) {
    Coefficients xs;
    for (std::size_t i = 0; i < n; ++i) xs.push_back(uniform(rng, lo, hi));
    return xs;
}

// Uniform over [-hi, -2] ∪ [2, hi].
inline BigInt big(std::mt19937_64& rng, long hi) {
    const long mag = std::uniform_int_distribution<long>(2, hi)(rng);
    return BigInt(std::bernoulli_distribution(0.5)(rng) ? mag : -mag);
}

// b_0 anywhere in [-hi, hi], later coefficients of modulus 2..hi. Some lists
// are constant ±2 after b_0 and some get a constant ±2 tail, so the endpoint
// cases show up.
inline Coefficients big_list(std::mt19937_64& rng, std::size_t n, long hi) {
    Coefficients xs{uniform(rng, -hi, hi)};
    const int shape = std::uniform_int_distribution<int>(0, 9)(rng);
    const bool constant_tail = shape < 4;
    const std::size_t tail_from = shape < 2 ? 1 : std::uniform_int_distribution<std::size_t>(1, n)(rng);
    const BigInt tail = std::bernoulli_distribution(0.5)(rng) ? 2 : -2;
    for (std::size_t i = 1; i < n; ++i) xs.push_back(constant_tail && i >= tail_from ? tail : big(rng, hi));
    return xs;
}

inline negcf::EventuallyPeriodic periodic(std::mt19937_64& rng, long lo, long hi, std::size_t max_prefix,
                                          std::size_t max_period) {
    const std::size_t np = std::uniform_int_distribution<std::size_t>(0, max_prefix)(rng);
    const std::size_t nq = std::uniform_int_distribution<std::size_t>(1, max_period)(rng);
    return {list(rng, np, lo, hi), list(rng, nq, lo, hi)};
}

// Eventually periodic with |b_i| >= 2 for i >= 1; a third get period [±2].
inline negcf::EventuallyPeriodic periodic_big(std::mt19937_64& rng, long hi, std::size_t max_prefix,
                                              std::size_t max_period) {
    const std::size_t np = std::uniform_int_distribution<std::size_t>(1, max_prefix)(rng);
    Coefficients prefix{uniform(rng, -hi, hi)};
    for (std::size_t i = 1; i < np; ++i) prefix.push_back(big(rng, hi));
    Coefficients period;
    if (std::bernoulli_distribution(1.0 / 3)(rng)) {
        period.push_back(std::bernoulli_distribution(0.5)(rng) ? 2 : -2);
    } else {
        const std::size_t nq = std::uniform_int_distribution<std::size_t>(1, max_period)(rng);
        for (std::size_t i = 0; i < nq; ++i) period.push_back(big(rng, hi));
    }
    return {prefix, period};
}

}  // namespace sample
