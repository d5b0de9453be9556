#include "negcf/coefficient_stream.hpp"

#include "negcf/errors.hpp"

#include <algorithm>
#include <utility>

namespace negcf {

Generator make_generator(GeneratorFn fn, std::string name, std::optional<std::size_t> horizon_hint) {
    Generator g;
    g.fn = std::make_shared<const GeneratorFn>(std::move(fn));
    g.horizon_hint = horizon_hint;
    g.name = std::move(name);
    return g;
}

BigInt coefficient_at(const CoefficientStream& s, std::size_t i) {
    if (const auto* f = std::get_if<Finite>(&s)) {
        if (i >= f->coeffs.size())
            throw IndexOutOfRange("coefficient index " + std::to_string(i) + " past end of finite stream of length " +
                                  std::to_string(f->coeffs.size()));
        return f->coeffs[i];
    }
    if (const auto* p = std::get_if<EventuallyPeriodic>(&s)) {
        if (i < p->prefix.size()) return p->prefix[i];
        return p->period[(i - p->prefix.size()) % p->period.size()];
    }
    const auto& g = std::get<Generator>(s);
    if (i < g.head.size()) return g.head[i];
    return g.tail_at(i - g.head.size());
}

std::optional<std::size_t> length_of(const CoefficientStream& s) {
    if (const auto* f = std::get_if<Finite>(&s)) return f->coeffs.size();
    return std::nullopt;
}

Coefficients take(const CoefficientStream& s, std::size_t n) {
    if (const auto* f = std::get_if<Finite>(&s)) n = std::min(n, f->coeffs.size());
    Coefficients out;
    out.reserve(n);
    for (std::size_t i = 0; i < n; ++i) out.push_back(coefficient_at(s, i));
    return out;
}

EventuallyPeriodic canonicalize(const EventuallyPeriodic& s) {
    if (s.period.empty()) throw PreconditionViolated("eventually periodic stream with empty period");
    EventuallyPeriodic out = s;

    const std::size_t n = out.period.size();
    for (std::size_t d = 1; d < n; ++d) {
        if (n % d) continue;
        bool repeats = true;
        for (std::size_t i = d; i < n && repeats; ++i) repeats = out.period[i] == out.period[i - d];
        if (repeats) {
            out.period.resize(d);
            break;
        }
    }

    // A prefix ending in the period's last element is absorbed by rotating the period right.
    while (!out.prefix.empty() && out.prefix.back() == out.period.back()) {
        out.prefix.pop_back();
        std::rotate(out.period.rbegin(), out.period.rbegin() + 1, out.period.rend());
    }
    return out;
}

CoefficientStream canonical(const CoefficientStream& s) {
    if (const auto* p = std::get_if<EventuallyPeriodic>(&s)) return canonicalize(*p);
    return s;
}

CoefficientStream drop(const CoefficientStream& s, std::size_t from) {
    if (const auto* f = std::get_if<Finite>(&s)) {
        if (from >= f->coeffs.size()) return Finite{};
        return Finite{Coefficients(f->coeffs.begin() + static_cast<std::ptrdiff_t>(from), f->coeffs.end())};
    }
    if (const auto* p = std::get_if<EventuallyPeriodic>(&s)) {
        EventuallyPeriodic out;
        if (from < p->prefix.size()) {
            out.prefix.assign(p->prefix.begin() + static_cast<std::ptrdiff_t>(from), p->prefix.end());
            out.period = p->period;
        } else {
            out.period = p->period;
            const std::size_t shift = (from - p->prefix.size()) % p->period.size();
            std::rotate(out.period.begin(), out.period.begin() + static_cast<std::ptrdiff_t>(shift), out.period.end());
        }
        return canonicalize(out);
    }
    Generator g = std::get<Generator>(s);
    if (from < g.head.size()) {
        g.head.erase(g.head.begin(), g.head.begin() + static_cast<std::ptrdiff_t>(from));
    } else {
        g.offset += from - g.head.size();
        g.head.clear();
    }
    return g;
}

namespace {

BigInt alternate(const BigInt& x, std::size_t i) { return (i % 2) ? BigInt(-x) : x; }

}  // namespace

CoefficientStream neg_from_regular(const CoefficientStream& s) {
    if (const auto* f = std::get_if<Finite>(&s)) {
        Finite out = *f;
        for (std::size_t i = 0; i < out.coeffs.size(); ++i) out.coeffs[i] = alternate(out.coeffs[i], i);
        return out;
    }
    if (const auto* p = std::get_if<EventuallyPeriodic>(&s)) {
        EventuallyPeriodic out;
        for (std::size_t i = 0; i < p->prefix.size(); ++i) out.prefix.push_back(alternate(p->prefix[i], i));
        // An odd period only repeats its sign pattern after two copies.
        const std::size_t copies = p->period.size() % 2 ? 2 : 1;
        for (std::size_t c = 0; c < copies; ++c)
            for (std::size_t j = 0; j < p->period.size(); ++j) {
                const std::size_t i = p->prefix.size() + c * p->period.size() + j;
                out.period.push_back(alternate(p->period[j], i));
            }
        return canonicalize(out);
    }
    const auto& g = std::get<Generator>(s);
    auto source = std::make_shared<const CoefficientStream>(g);
    return make_generator([source](std::size_t i) { return alternate(coefficient_at(*source, i), i); },
                          "alt(" + g.name + ")", g.horizon_hint);
}

CoefficientStream regular_from_neg(const CoefficientStream& s) { return neg_from_regular(s); }

std::string state_key(const CoefficientStream& s) {
    if (const auto* f = std::get_if<Finite>(&s)) return "F" + join(f->coeffs);
    if (const auto* p = std::get_if<EventuallyPeriodic>(&s)) return "P" + join(p->prefix) + "|" + join(p->period);
    const auto& g = std::get<Generator>(s);
    return "G" + g.name + ":" + join(g.head) + "|" + std::to_string(g.offset);
}

}  // namespace negcf
