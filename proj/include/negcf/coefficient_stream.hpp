#pragma once

#include "negcf/bigint.hpp"

#include <cstddef>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <variant>

namespace negcf {

struct Finite {
    Coefficients coeffs;

    bool operator==(const Finite&) const = default;
};

/// prefix followed by period repeated forever. The period is never empty.
struct EventuallyPeriodic {
    Coefficients prefix;
    Coefficients period;

    bool operator==(const EventuallyPeriodic&) const = default;
};

using GeneratorFn = std::function<BigInt(std::size_t)>;

/// A coefficient sequence defined by a pure function of the index.
///
/// `head` holds explicitly materialized coefficients; coefficient i is
/// head[i] for i < head.size() and fn(offset + i - head.size()) otherwise.
/// A freshly built generator has an empty head and zero offset. The
/// singularization engine rewrites the head and advances the offset while
/// leaving the function itself untouched.
struct Generator {
    std::shared_ptr<const GeneratorFn> fn;
    std::optional<std::size_t> horizon_hint;
    std::string name;
    Coefficients head;
    std::size_t offset = 0;

    BigInt tail_at(std::size_t j) const { return (*fn)(offset + j); }

    /// Two generators are equal when they share the function object and agree
    /// on the materialized state; the function itself cannot be compared.
    bool operator==(const Generator& o) const {
        return fn == o.fn && head == o.head && offset == o.offset;
    }
};

using CoefficientStream = std::variant<Finite, EventuallyPeriodic, Generator>;

Generator make_generator(GeneratorFn fn, std::string name,
                         std::optional<std::size_t> horizon_hint = std::nullopt);

inline bool is_finite(const CoefficientStream& s) { return std::holds_alternative<Finite>(s); }
inline bool is_periodic(const CoefficientStream& s) {
    return std::holds_alternative<EventuallyPeriodic>(s);
}
inline bool is_generator(const CoefficientStream& s) { return std::holds_alternative<Generator>(s); }

/// Coefficient b_i. Throws IndexOutOfRange for i past the end of a Finite stream.
BigInt coefficient_at(const CoefficientStream& s, std::size_t i);

/// Number of coefficients, or nullopt for infinite streams.
std::optional<std::size_t> length_of(const CoefficientStream& s);

/// First n coefficients (fewer if a Finite stream is shorter).
Coefficients take(const CoefficientStream& s, std::size_t n);

/// Minimal period, then minimal prefix.
EventuallyPeriodic canonicalize(const EventuallyPeriodic& s);

/// Canonicalizes EventuallyPeriodic streams; other variants pass through.
CoefficientStream canonical(const CoefficientStream& s);

/// The suffix b_from, b_from+1, ... as a stream of the same kind.
CoefficientStream drop(const CoefficientStream& s, std::size_t from);

/// Sign alternation b_i -> (-1)^i b_i, mapping a regular continued fraction to
/// the negative continued fraction with the same convergents.
CoefficientStream neg_from_regular(const CoefficientStream& s);

/// Inverse of neg_from_regular (the alternation is an involution).
CoefficientStream regular_from_neg(const CoefficientStream& s);

/// Stable text key for Finite/EventuallyPeriodic streams, used for hashing.
std::string state_key(const CoefficientStream& s);

}  // namespace negcf
