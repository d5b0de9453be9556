#include "negcf/classifier.hpp"

#include "negcf/errors.hpp"

#include <algorithm>
#include <unordered_map>
#include <utility>

namespace negcf {

const char* to_string(Status s) {
    switch (s) {
        case Status::ConvergesRational: return "converges-rational";
        case Status::ConvergesIrrational: return "converges-irrational";
        case Status::ConvergesExtendedRational: return "converges-extended-rational";
        case Status::Diverges: return "diverges";
        case Status::Unknown: return "unknown";
    }
    return "?";
}

const char* to_string(Mode m) {
    switch (m) {
        case Mode::Exact: return "exact";
        case Mode::Empirical: return "empirical";
        case Mode::FiniteInput: return "finite-input";
    }
    return "?";
}

const char* to_string(CertificateKind k) {
    switch (k) {
        case CertificateKind::FixedPoint: return "fixed-point";
        case CertificateKind::ExactCycle: return "exact-cycle";
        case CertificateKind::DriftCycle: return "drift-cycle";
        case CertificateKind::ShiftCycle: return "shift-cycle";
    }
    return "?";
}

const char* to_string(TailTendency t) {
    switch (t) {
        case TailTendency::TailPlus2: return "tail-plus-2";
        case TailTendency::TailMinus2: return "tail-minus-2";
        case TailTendency::Neither: return "neither";
    }
    return "?";
}

namespace {

// Eventually periodic orbits never touch a generator, so the budget here only
// exists to satisfy the engine's interface.
AccessBudget unbounded_budget() { return AccessBudget(kAllStable, kAllStable); }

Position first_bad(const CoefficientStream& s) {
    auto budget = unbounded_budget();
    return detail::first_bad_from(s, 1, budget);
}

// Where coefficient i lands after a step; empty if it is the removed one.
Position coefficient_index_map(std::size_t i, const StepInfo& info) {
    if (info.rule == PhiRule::Fixed) return i;
    const std::size_t m = *info.m;
    if (info.rule == PhiRule::Zero) {
        if (i <= m - 1) return i;
        if (i == m) return std::nullopt;
        if (i == m + 1) return m - 1;
        return i - 2;
    }
    if (i <= m - 1) return i;
    if (i == m) return std::nullopt;
    return i - 1;
}

bool same_state(const CoefficientStream& a, const CoefficientStream& b) {
    return state_key(canonical(a)) == state_key(canonical(b));
}

struct DriftCheck {
    bool ok = false;
    std::size_t p_min = 0;
};

DriftCheck replay_drift(const CoefficientStream& anchor, std::size_t cycle, std::size_t position,
                        const BigInt& delta) {
    DriftCheck result;
    if (cycle == 0 || delta == 0) return result;
    const auto* anchor_ep = std::get_if<EventuallyPeriodic>(&anchor);
    if (!anchor_ep || position >= anchor_ep->prefix.size()) return result;

    auto budget = unbounded_budget();
    CoefficientStream cur = anchor;
    std::size_t chain = position;
    std::size_t p_min = kAllStable;
    for (std::size_t t = 0; t < cycle; ++t) {
        const Position p = detail::first_bad_from(cur, 1, budget);
        if (!p) return result;
        p_min = std::min(p_min, *p);
        if (chain >= 1) {
            const BigInt v = coefficient_at(cur, chain);
            if (sgn(v) != sgn(delta) || mpz_cmpabs_ui(v.get_mpz_t(), 1) <= 0) return result;
        }
        const StepInfo info = detail::phi_in_place(cur, *p, budget);
        const Position next = coefficient_index_map(chain, info);
        if (!next) return result;
        chain = *next;
    }
    if (chain != position) return result;

    EventuallyPeriodic expected = *anchor_ep;
    expected.prefix[position] += delta;
    if (!same_state(cur, canonicalize(expected))) return result;
    result.ok = true;
    result.p_min = p_min;
    return result;
}

struct ShiftCheck {
    bool ok = false;
    CoefficientStream final_state;
};

// Replays a candidate shift cycle of the given length and shift from anchor.
ShiftCheck replay_shift(const CoefficientStream& anchor, std::size_t cycle) {
    ShiftCheck result;
    const Position p0 = first_bad(anchor);
    if (!p0 || cycle == 0) return result;
    auto budget = unbounded_budget();
    CoefficientStream cur = anchor;
    Position p = p0;
    for (std::size_t t = 0; t < cycle; ++t) {
        if (!p || *p < *p0) return result;
        // With p = 1 the repeated block starts at b_0, which no scan checks.
        if (*p0 == 1 && is_unit_or_zero(coefficient_at(cur, 0))) return result;
        const StepInfo info = detail::phi_in_place(cur, *p, budget);
        p = detail::first_bad_from(cur, *info.m > 1 ? *info.m - 1 : 1, budget);
    }
    if (!p || *p <= *p0) return result;
    if (*p0 == 1 && is_unit_or_zero(coefficient_at(cur, 0))) return result;
    const std::size_t base = *p0 - 1;
    const std::size_t shift = *p - *p0;
    if (!same_state(drop(cur, base + shift), drop(anchor, base))) return result;
    result.ok = true;
    result.final_state = std::move(cur);
    return result;
}

class CertificateDetector {
public:
    explicit CertificateDetector(std::size_t history_cap) : history_cap_(history_cap) {}

    std::optional<CycleCertificate> observe(const CoefficientStream& state, Position p) {
        const std::size_t n = count_++;
        if (!p) {
            CycleCertificate cert;
            cert.kind = CertificateKind::FixedPoint;
            cert.n1 = cert.n2 = n;
            cert.anchor = state;
            cert.emitted_prefix = take(state, emitted_length(state));
            return cert;
        }
        if (states_.size() >= history_cap_) return std::nullopt;
        states_.push_back(state);
        p_.push_back(*p);

        const std::string key = state_key(state);
        if (auto it = full_.find(key); it != full_.end()) {
            const std::size_t n1 = it->second;
            CycleCertificate cert;
            cert.kind = CertificateKind::ExactCycle;
            cert.n1 = n1;
            cert.n2 = n;
            cert.anchor = states_[n1];
            cert.p_min = *std::min_element(p_.begin() + static_cast<std::ptrdiff_t>(n1), p_.end() - 1);
            return cert;
        }
        full_.emplace(key, n);

        if (auto cert = shift_candidate(state, *p, n)) return cert;
        if (auto cert = drift_candidate(state, *p, n)) return cert;
        return std::nullopt;
    }

private:
    static std::size_t emitted_length(const CoefficientStream& s) {
        if (const auto* f = std::get_if<Finite>(&s)) return f->coeffs.size();
        if (const auto* e = std::get_if<EventuallyPeriodic>(&s)) return e->prefix.size() + e->period.size();
        return 0;
    }

    std::optional<CycleCertificate> shift_candidate(const CoefficientStream& state, std::size_t p, std::size_t n) {
        auto& bucket = suffix_[state_key(drop(state, p - 1))];
        std::optional<CycleCertificate> found;
        for (auto it = bucket.rbegin(); it != bucket.rend() && !found; ++it) {
            const std::size_t n1 = *it;
            const std::size_t p1 = p_[n1];
            if (p1 >= p) continue;
            const bool floor_holds = std::all_of(p_.begin() + static_cast<std::ptrdiff_t>(n1), p_.end() - 1,
                                                 [p1](std::size_t q) { return q >= p1; });
            if (!floor_holds) continue;
            if (p1 == 1 && std::any_of(states_.begin() + static_cast<std::ptrdiff_t>(n1), states_.end(),
                                       [](const CoefficientStream& st) { return is_unit_or_zero(coefficient_at(st, 0)); }))
                continue;
            const std::size_t base = p1 - 1;
            const std::size_t shift = p - p1;
            CycleCertificate cert;
            cert.kind = CertificateKind::ShiftCycle;
            cert.n1 = n1;
            cert.n2 = n;
            cert.anchor = states_[n1];
            cert.emitted_prefix = take(state, base);
            Coefficients period = take(state, base + shift);
            period.erase(period.begin(), period.begin() + static_cast<std::ptrdiff_t>(base));
            cert.emitted_period = std::move(period);
            found = std::move(cert);
        }
        bucket.push_back(n);
        return found;
    }

    std::optional<CycleCertificate> drift_candidate(const CoefficientStream& state, std::size_t p, std::size_t n) {
        const auto* ep = std::get_if<EventuallyPeriodic>(&state);
        if (!ep) return std::nullopt;
        const std::string key = std::to_string(p) + "#" + std::to_string(ep->prefix.size()) + "#" + join(ep->period);
        auto& bucket = drift_[key];
        std::optional<CycleCertificate> found;
        std::size_t tried = 0;
        for (auto it = bucket.rbegin(); it != bucket.rend() && !found && tried < kDriftCandidates; ++it, ++tried) {
            const std::size_t n1 = *it;
            const auto& old = std::get<EventuallyPeriodic>(states_[n1]);
            std::optional<std::size_t> diff;
            bool single = true;
            for (std::size_t i = 0; i < ep->prefix.size() && single; ++i) {
                if (ep->prefix[i] == old.prefix[i]) continue;
                if (diff) single = false;
                diff = i;
            }
            if (!single || !diff) continue;
            const BigInt delta = ep->prefix[*diff] - old.prefix[*diff];
            const DriftCheck check = replay_drift(states_[n1], n - n1, *diff, delta);
            if (!check.ok) continue;
            CycleCertificate cert;
            cert.kind = CertificateKind::DriftCycle;
            cert.n1 = n1;
            cert.n2 = n;
            cert.anchor = states_[n1];
            cert.drift_position = *diff;
            cert.drift_delta = delta;
            cert.p_min = check.p_min;
            found = std::move(cert);
        }
        bucket.push_back(n);
        return found;
    }

    static constexpr std::size_t kDriftCandidates = 8;

    std::size_t history_cap_;
    std::size_t count_ = 0;
    std::vector<CoefficientStream> states_;
    std::vector<std::size_t> p_;
    std::unordered_map<std::string, std::size_t> full_;
    std::unordered_map<std::string, std::vector<std::size_t>> suffix_;
    std::unordered_map<std::string, std::vector<std::size_t>> drift_;
};

ExtendedRational tail_value(TailTendency t) { return t == TailTendency::TailPlus2 ? ExtendedRational(1) : ExtendedRational(-1); }

// Verdict for a limit continued fraction all of whose coefficients past b_0
// have modulus >= 2: rational exactly when the tail is constant 2 or -2.
void settle_limit(ClassificationReport& report, const EventuallyPeriodic& limit, std::size_t depth) {
    const EventuallyPeriodic canon = canonicalize(limit);
    report.limit_cf = canon;
    report.p_liminf = std::nullopt;
    const TailTendency tail = tail_tendency(canon);
    if (tail != TailTendency::Neither) {
        report.status = Status::ConvergesRational;
        report.exact_value = rational_value_from_tail(canon, canon.prefix.size());
        return;
    }
    report.status = Status::ConvergesIrrational;
    report.enclosure = enclose_value(canon, depth);
}

ClassificationReport classify_periodic(const EventuallyPeriodic& input, const StepBudget& budget) {
    ClassificationReport report;
    report.mode = Mode::Exact;
    PhiTraceOptions options;
    CertificateDetector detector(budget.history_cap);
    auto access = unbounded_budget();

    CoefficientStream cur = canonicalize(input);
    Position p = detail::first_bad_from(cur, 1, access);
    detail::record_state(report.trace, cur, p, options);
    std::optional<CycleCertificate> cert;
    for (std::size_t n = 0;; ++n) {
        cert = detector.observe(cur, p);
        if (cert || n == budget.max_steps) break;
        StepInfo info = detail::phi_in_place(cur, *p, access);
        const std::size_t m = *info.m;
        report.trace.steps.push_back(std::move(info));
        p = detail::first_bad_from(cur, m > 1 ? m - 1 : 1, access);
        detail::record_state(report.trace, cur, p, options);
    }
    detail::finish_trace(report.trace, cur, options);
    report.steps_used = report.trace.steps_taken();

    if (!cert) {
        report.status = Status::Unknown;
        Position p_min;
        for (const auto& q : report.trace.p_seq)
            if (q && (!p_min || *q < *p_min)) p_min = q;
        report.p_liminf = p_min;
        report.evidence = "no certificate within " + std::to_string(budget.max_steps) + " steps";
        return report;
    }

    switch (cert->kind) {
        case CertificateKind::FixedPoint: {
            const auto& limit = std::get<EventuallyPeriodic>(cert->anchor);
            report.trace.commit_p(std::nullopt, true);
            settle_limit(report, limit, budget.enclosure_depth);
            report.evidence = "fixed point of the singularization map at step " + std::to_string(cert->n1);
            break;
        }
        case CertificateKind::ShiftCycle: {
            EventuallyPeriodic limit{cert->emitted_prefix, *cert->emitted_period};
            report.trace.commit_p(std::nullopt, true);
            report.trace.stable_prefix = cert->emitted_prefix;
            report.trace.stable_prefix.insert(report.trace.stable_prefix.end(), cert->emitted_period->begin(),
                                              cert->emitted_period->end());
            settle_limit(report, limit, budget.enclosure_depth);
            report.evidence = "first bad position advances by " + std::to_string(cert->emitted_period->size()) +
                              " every " + std::to_string(cert->cycle_length()) + " steps";
            break;
        }
        case CertificateKind::ExactCycle: {
            const std::size_t pm = *cert->p_min;
            report.p_liminf = pm;
            report.trace.commit_p(pm, true);
            report.trace.stable_prefix = take(cert->anchor, pm - 1);
            report.status = Status::Diverges;
            report.evidence = "orbit returns to the step-" + std::to_string(cert->n1) + " state after " +
                              std::to_string(cert->cycle_length()) + " steps; q stays bounded";
            break;
        }
        case CertificateKind::DriftCycle: {
            const std::size_t pm = *cert->p_min;
            report.p_liminf = pm;
            report.trace.commit_p(pm, true);
            report.trace.stable_prefix = take(cert->anchor, pm - 1);
            if (*cert->drift_position + 1 == pm) {
                report.status = Status::ConvergesExtendedRational;
                report.exact_value = extended_rational_value_case2a(report.trace, pm);
                report.evidence = "coefficient at position p-1 drifts by " + cert->drift_delta->get_str() +
                                  " every " + std::to_string(cert->cycle_length()) + " steps; q grows without bound";
            } else {
                report.status = Status::Diverges;
                report.evidence = "drift at position " + std::to_string(*cert->drift_position) +
                                  " leaves q at position p-1 periodic";
            }
            break;
        }
    }
    report.certificate = std::move(cert);
    return report;
}

// Empirical thresholds for generator streams.
constexpr std::size_t kWindow = 100;
constexpr std::size_t kConvergeDepth = 50;
constexpr std::size_t kRecurrences = 5;
constexpr std::size_t kGrowthSamples = 20;

void settle_empirical_limit(ClassificationReport& report, const Coefficients& stable) {
    report.trace.stable_prefix = stable;
    report.p_liminf = std::nullopt;
    if (stable.size() >= 2) {
        const BigInt& last = stable.back();
        if (last == 2 || last == -2) {
            std::size_t start = stable.size();
            while (start > 0 && stable[start - 1] == last) --start;
            const std::size_t run = stable.size() - start;
            if (run >= 10 && 2 * run >= stable.size()) {
                const TailTendency t = last == 2 ? TailTendency::TailPlus2 : TailTendency::TailMinus2;
                report.status = Status::ConvergesRational;
                report.exact_value =
                    apply(composite(std::span<const BigInt>(stable.data(), start)), tail_value(t));
                report.limit_cf = canonicalize(
                    EventuallyPeriodic{Coefficients(stable.begin(), stable.begin() + static_cast<std::ptrdiff_t>(start)),
                                       Coefficients{last}});
                report.evidence += "; observed limit coefficients end in a run of " + std::to_string(run) + " x " +
                                   last.get_str();
                return;
            }
        }
    }
    report.status = Status::ConvergesIrrational;
    report.limit_cf = Finite{stable};
    report.enclosure = enclose_value(std::span<const BigInt>(stable));
}

ClassificationReport classify_generator(const Generator& input, const StepBudget& budget) {
    ClassificationReport report;
    report.mode = Mode::Empirical;
    PhiTraceOptions options;
    AccessBudget access(budget.max_accesses, input.horizon_hint ? *input.horizon_hint : budget.horizon);
    CoefficientStream cur = input;
    auto& trace = report.trace;
    std::unordered_map<std::string, std::size_t> row_counts;
    std::vector<std::string> row_keys;

    auto finish = [&] {
        detail::finish_trace(trace, cur, options);
        report.steps_used = trace.steps_taken();
    };

    try {
        Position p = detail::first_bad_from(cur, 1, access);
        detail::record_state(trace, cur, p, options);
        for (std::size_t n = 0;; ++n) {
            if (!p) {
                finish();
                report.evidence = "no coefficient in {0, 1, -1} within horizon " + std::to_string(access.horizon());
                const std::size_t len = std::min<std::size_t>(access.horizon(), 4096);
                settle_empirical_limit(report, take(cur, len));
                return report;
            }
            std::string key = std::to_string(*p) + "#" + join(trace.rows.back());
            row_keys.push_back(key);
            if (*p < options.row_cap) ++row_counts[key];

            if (n + 1 >= kWindow) {
                const std::size_t lo = n + 1 - kWindow;
                std::size_t p_min = kAllStable;
                bool monotone = true;
                for (std::size_t k = lo; k <= n; ++k) {
                    p_min = std::min(p_min, *trace.p_seq[k]);
                    if (k > lo && *trace.p_seq[k] < *trace.p_seq[k - 1]) monotone = false;
                }
                if (monotone && p_min > kConvergeDepth) {
                    finish();
                    report.evidence = "first bad position exceeded " + std::to_string(kConvergeDepth) +
                                      " and never decreased over the last " + std::to_string(kWindow) + " steps";
                    settle_empirical_limit(report, take(cur, p_min - 1));
                    return report;
                }

                std::size_t recurrences = 0;
                std::vector<BigInt> q_at_min;
                for (std::size_t k = lo; k <= n; ++k) {
                    if (*trace.p_seq[k] != p_min) continue;
                    if (auto it = row_counts.find(row_keys[k]); it != row_counts.end())
                        recurrences = std::max(recurrences, it->second);
                    if (p_min - 1 < trace.rows[k].size()) q_at_min.push_back(abs(trace.rows[k][p_min - 1]));
                }
                if (recurrences >= kRecurrences) {
                    finish();
                    trace.commit_p(p_min, false);
                    report.status = Status::Diverges;
                    report.p_liminf = p_min;
                    report.evidence = "coefficients 0..p recurred " + std::to_string(recurrences) +
                                      " times at p = " + std::to_string(p_min) + " with bounded q";
                    return report;
                }
                const bool growing =
                    q_at_min.size() >= kGrowthSamples &&
                    std::adjacent_find(q_at_min.begin(), q_at_min.end(),
                                       [](const BigInt& a, const BigInt& b) { return !(a < b); }) == q_at_min.end();
                if (growing) {
                    finish();
                    trace.commit_p(p_min, false);
                    trace.stable_prefix = take(cur, p_min - 1);
                    report.status = Status::ConvergesExtendedRational;
                    report.p_liminf = p_min;
                    report.exact_value = extended_rational_value_case2a(trace, p_min);
                    report.evidence = "q at p = " + std::to_string(p_min) + " strictly increased over " +
                                      std::to_string(q_at_min.size()) + " returns";
                    return report;
                }
            }
            if (n == budget.max_steps) break;
            StepInfo info = detail::phi_in_place(cur, *p, access);
            const std::size_t m = *info.m;
            trace.steps.push_back(std::move(info));
            p = detail::first_bad_from(cur, m > 1 ? m - 1 : 1, access);
            detail::record_state(trace, cur, p, options);
        }
        finish();
        report.evidence = "no empirical verdict within " + std::to_string(budget.max_steps) + " steps";
    } catch (const BudgetExhausted& e) {
        if (!trace.p_seq.empty()) finish();
        report.evidence = e.what();
    }
    report.status = Status::Unknown;
    report.p_liminf = trace.p_ref;
    return report;
}

}  // namespace

bool verify_certificate(const CycleCertificate& cert) {
    if (cert.n2 < cert.n1) return false;
    const CoefficientStream anchor = canonical(cert.anchor);
    switch (cert.kind) {
        case CertificateKind::FixedPoint:
            return !first_bad(anchor).has_value();
        case CertificateKind::ExactCycle: {
            if (cert.cycle_length() == 0) return false;
            auto budget = unbounded_budget();
            CoefficientStream cur = anchor;
            for (std::size_t t = 0; t < cert.cycle_length(); ++t)
                if (detail::phi_in_place(cur, 1, budget).rule == PhiRule::Fixed) return false;
            return same_state(cur, anchor);
        }
        case CertificateKind::DriftCycle: {
            if (!cert.drift_delta || !cert.drift_position) return false;
            const DriftCheck check = replay_drift(anchor, cert.cycle_length(), *cert.drift_position, *cert.drift_delta);
            return check.ok && (!cert.p_min || *cert.p_min == check.p_min);
        }
        case CertificateKind::ShiftCycle: {
            if (!cert.emitted_period || cert.emitted_period->empty()) return false;
            const Position p0 = first_bad(anchor);
            if (!p0 || *p0 != cert.emitted_prefix.size() + 1) return false;
            const ShiftCheck check = replay_shift(anchor, cert.cycle_length());
            if (!check.ok) return false;
            const std::size_t base = cert.emitted_prefix.size();
            const std::size_t shift = cert.emitted_period->size();
            if (first_bad(check.final_state) != Position(*p0 + shift)) return false;
            Coefficients head = take(check.final_state, base + shift);
            if (!std::equal(cert.emitted_prefix.begin(), cert.emitted_prefix.end(), head.begin())) return false;
            return std::equal(cert.emitted_period->begin(), cert.emitted_period->end(),
                              head.begin() + static_cast<std::ptrdiff_t>(base));
        }
    }
    return false;
}

std::optional<CycleCertificate> detect_certificate(std::span<const PhiState> states) {
    CertificateDetector detector(kAllStable);
    for (const PhiState& st : states) {
        const CoefficientStream s = canonical(st.stream);
        if (auto cert = detector.observe(s, first_bad(s))) return cert;
    }
    return std::nullopt;
}

ClassificationReport classify(const CoefficientStream& s, const StepBudget& budget) {
    if (const auto* f = std::get_if<Finite>(&s)) {
        ClassificationReport report;
        report.mode = Mode::FiniteInput;
        report.exact_value = evaluate_finite(*f);
        report.status = report.exact_value->is_infinite() ? Status::ConvergesExtendedRational
                                                          : Status::ConvergesRational;
        report.evidence = "finite continued fraction evaluated directly";
        return report;
    }
    if (const auto* p = std::get_if<EventuallyPeriodic>(&s)) return classify_periodic(*p, budget);
    return classify_generator(std::get<Generator>(s), budget);
}

TailTendency tail_tendency(const CoefficientStream& s) {
    if (std::holds_alternative<Finite>(s)) return TailTendency::Neither;
    if (const auto* p = std::get_if<EventuallyPeriodic>(&s)) {
        const EventuallyPeriodic c = canonicalize(*p);
        if (c.period.size() != 1) return TailTendency::Neither;
        if (c.period[0] == 2) return TailTendency::TailPlus2;
        if (c.period[0] == -2) return TailTendency::TailMinus2;
        return TailTendency::Neither;
    }
    const auto& g = std::get<Generator>(s);
    const std::size_t horizon = g.horizon_hint ? *g.horizon_hint : 1000;
    const BigInt first = coefficient_at(s, horizon / 2);
    if (first != 2 && first != -2) return TailTendency::Neither;
    for (std::size_t i = horizon / 2 + 1; i <= horizon; ++i)
        if (coefficient_at(s, i) != first) return TailTendency::Neither;
    return first == 2 ? TailTendency::TailPlus2 : TailTendency::TailMinus2;
}

ExtendedRational rational_value_from_tail(const CoefficientStream& s, std::size_t tail_start) {
    if (std::holds_alternative<Finite>(s))
        throw PreconditionViolated("a finite continued fraction has no constant tail");
    std::size_t check_to = tail_start;
    if (const auto* p = std::get_if<EventuallyPeriodic>(&s))
        check_to = std::max(tail_start, p->prefix.size()) + p->period.size();
    else {
        const auto& g = std::get<Generator>(s);
        check_to = std::max(tail_start + 1, g.horizon_hint ? *g.horizon_hint : std::size_t{1000});
    }
    const BigInt c = coefficient_at(s, tail_start);
    if (c != 2 && c != -2)
        throw PreconditionViolated("coefficient at tail start is " + c.get_str() + ", not 2 or -2");
    for (std::size_t i = tail_start; i < check_to; ++i)
        if (coefficient_at(s, i) != c)
            throw PreconditionViolated("tail is not constant from position " + std::to_string(tail_start));
    const Coefficients head = take(s, tail_start);
    return apply(composite(head), tail_value(c == 2 ? TailTendency::TailPlus2 : TailTendency::TailMinus2));
}

ExtendedRational extended_rational_value_case2a(const PhiTrace& trace, std::size_t p) {
    if (p == 0) throw PreconditionViolated("p must be positive");
    if (trace.stable_prefix.size() < p - 1)
        throw PreconditionViolated("stable prefix has " + std::to_string(trace.stable_prefix.size()) +
                                   " coefficients, need " + std::to_string(p - 1));
    return evaluate_finite(std::span<const BigInt>(trace.stable_prefix.data(), p - 1));
}

Interval refine_enclosure(const CoefficientStream& limit, int digits, std::size_t max_depth) {
    if (auto len = length_of(limit)) max_depth = std::min(max_depth, *len - 1);
    BigInt scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(std::max(digits, 0)));
    const ExtendedRational target(1, scale);
    std::size_t depth = std::min<std::size_t>(16, max_depth);
    Interval iv = enclose_value(limit, depth);
    while (target < iv.width() && depth < max_depth) {
        depth = std::min(depth * 2, max_depth);
        iv = enclose_value(limit, depth);
    }
    return iv;
}

}  // namespace negcf
