#include "negcf/phi.hpp"

#include "negcf/errors.hpp"

#include <algorithm>

namespace negcf {

void AccessBudget::charge(std::size_t n) {
    used_ += n;
    if (used_ > max_accesses_)
        throw BudgetExhausted("coefficient access budget of " + std::to_string(max_accesses_) + " exhausted");
}

const char* to_string(PhiRule r) {
    switch (r) {
        case PhiRule::Zero: return "zero";
        case PhiRule::PlusOne: return "plus-one";
        case PhiRule::MinusOne: return "minus-one";
        case PhiRule::Fixed: return "fixed";
    }
    return "?";
}

namespace detail {

namespace {

std::size_t generator_horizon(const Generator& g, const AccessBudget& budget) {
    return g.horizon_hint ? *g.horizon_hint : budget.horizon();
}

Position scan(const Coefficients& v, std::size_t from) {
    for (std::size_t i = std::max<std::size_t>(from, 1); i < v.size(); ++i)
        if (is_unit_or_zero(v[i])) return i;
    return std::nullopt;
}

// Rewrites v at bad position m. When m is the last coefficient of a finite
// continued fraction the tail value is ∞, which turns the rules into plain
// truncations with the same convergent deletions.
StepInfo rewrite(Coefficients& v, std::size_t m) {
    StepInfo info;
    info.m = m;
    const bool has_next = m + 1 < v.size();
    if (v[m] == 0) {
        info.rule = PhiRule::Zero;
        info.deleted_convergent_positions = {m - 1, m};
        if (has_next) {
            v[m - 1] += v[m + 1];
            v.erase(v.begin() + static_cast<std::ptrdiff_t>(m), v.begin() + static_cast<std::ptrdiff_t>(m + 2));
        } else {
            v.erase(v.begin() + static_cast<std::ptrdiff_t>(m - 1), v.end());
        }
        return info;
    }
    const int delta = v[m] > 0 ? -1 : 1;
    info.rule = v[m] > 0 ? PhiRule::PlusOne : PhiRule::MinusOne;
    info.deleted_convergent_positions = {m - 1};
    v[m - 1] += delta;
    if (has_next) v[m + 1] += delta;
    v.erase(v.begin() + static_cast<std::ptrdiff_t>(m));
    return info;
}

}  // namespace

Position first_bad_from(const CoefficientStream& s, std::size_t scan_from, AccessBudget& budget) {
    scan_from = std::max<std::size_t>(scan_from, 1);
    if (const auto* f = std::get_if<Finite>(&s)) return scan(f->coeffs, scan_from);
    if (const auto* p = std::get_if<EventuallyPeriodic>(&s)) {
        if (auto m = scan(p->prefix, scan_from)) return m;
        const std::size_t start = std::max(scan_from, p->prefix.size());
        const std::size_t len = p->period.size();
        for (std::size_t i = start; i < start + len; ++i)
            if (is_unit_or_zero(p->period[(i - p->prefix.size()) % len])) return i;
        return std::nullopt;
    }
    const auto& g = std::get<Generator>(s);
    if (auto m = scan(g.head, scan_from)) return m;
    const std::size_t horizon = generator_horizon(g, budget);
    for (std::size_t i = std::max(scan_from, g.head.size()); i <= horizon; ++i) {
        budget.charge();
        if (is_unit_or_zero(g.tail_at(i - g.head.size()))) return i;
    }
    return std::nullopt;
}

StepInfo phi_in_place(CoefficientStream& stream, std::size_t scan_from, AccessBudget& budget) {
    const Position m = first_bad_from(stream, scan_from, budget);
    if (!m) return StepInfo{};

    if (auto* f = std::get_if<Finite>(&stream)) return rewrite(f->coeffs, *m);

    if (auto* p = std::get_if<EventuallyPeriodic>(&stream)) {
        while (p->prefix.size() < *m + 2) p->prefix.insert(p->prefix.end(), p->period.begin(), p->period.end());
        StepInfo info = rewrite(p->prefix, *m);
        *p = canonicalize(*p);
        return info;
    }

    auto& g = std::get<Generator>(stream);
    if (g.head.size() < *m + 2) {
        const std::size_t horizon = generator_horizon(g, budget);
        if (*m + 1 > horizon)
            throw BudgetExhausted("rewrite at position " + std::to_string(*m) + " needs a coefficient beyond horizon " +
                                  std::to_string(horizon));
        while (g.head.size() < *m + 2) {
            budget.charge();
            g.head.push_back(g.tail_at(0));
            ++g.offset;
        }
    }
    return rewrite(g.head, *m);
}

void record_state(PhiTrace& trace, const CoefficientStream& s, Position p, const PhiTraceOptions& options) {
    trace.p_seq.push_back(p);
    std::size_t row_len = options.row_cap;
    if (p) row_len = std::min(row_len, *p + 1);
    if (const auto* g = std::get_if<Generator>(&s); g && !p) row_len = std::min(row_len, g->head.size());
    trace.rows.push_back(take(s, row_len));
    if (options.retain_states) {
        PhiState st{s, trace.p_seq.size() - 1, p ? *p - 1 : kAllStable};
        trace.states.push_back(std::move(st));
    }
}

void finish_trace(PhiTrace& trace, const CoefficientStream& final_stream, const PhiTraceOptions& options) {
    const std::size_t last = trace.p_seq.size() - 1;
    const Position final_p = trace.p_seq.back();
    trace.final_state = PhiState{final_stream, last, final_p ? *final_p - 1 : kAllStable};

    // Retroactive stability: a position is stable from step n on when every
    // later observed step rewrites only positions at or beyond it.
    std::size_t running = kAllStable;
    for (std::size_t n = trace.p_seq.size(); n-- > 0;) {
        if (trace.p_seq[n]) running = std::min(running, *trace.p_seq[n] - 1);
        if (options.retain_states) trace.states[n].stable_upto = running;
    }
    trace.final_state.stable_upto = final_p ? *final_p - 1 : kAllStable;

    if (!final_p) {
        trace.fixed_limit = final_stream;
        std::size_t n = options.row_cap;
        if (const auto* f = std::get_if<Finite>(&final_stream)) n = f->coeffs.size();
        if (const auto* p = std::get_if<EventuallyPeriodic>(&final_stream)) n = p->prefix.size() + p->period.size();
        trace.stable_prefix = take(final_stream, n);
    } else {
        std::size_t s = kAllStable;
        for (std::size_t n = last / 2; n <= last; ++n)
            if (trace.p_seq[n]) s = std::min(s, *trace.p_seq[n] - 1);
        trace.stable_prefix = take(final_stream, s);
    }

    Position p_min;
    for (const auto& p : trace.p_seq)
        if (p && (!p_min || *p < *p_min)) p_min = p;
    trace.commit_p(p_min, false);
}

}  // namespace detail

PhiState PhiState::initial(const CoefficientStream& s) {
    AccessBudget budget;
    PhiState st{canonical(s), 0, 0};
    const Position p = detail::first_bad_from(st.stream, 1, budget);
    st.stable_upto = p ? *p - 1 : kAllStable;
    return st;
}

Position first_bad_position(const CoefficientStream& s, std::size_t horizon) {
    AccessBudget budget(kAllStable, horizon);
    if (const auto* g = std::get_if<Generator>(&s); g && g->horizon_hint) {
        Generator bounded = *g;
        bounded.horizon_hint = std::min(*g->horizon_hint, horizon);
        return detail::first_bad_from(bounded, 1, budget);
    }
    return detail::first_bad_from(s, 1, budget);
}

Position first_bad_position(const PhiState& state, std::size_t horizon) {
    return first_bad_position(state.stream, horizon);
}

std::pair<PhiState, StepInfo> phi_step(const PhiState& state, AccessBudget& budget) {
    PhiState next = state;
    StepInfo info = detail::phi_in_place(next.stream, 1, budget);
    if (info.rule == PhiRule::Fixed) {
        next.stable_upto = kAllStable;
        return {std::move(next), std::move(info)};
    }
    next.step = state.step + 1;
    const Position p = detail::first_bad_from(next.stream, *info.m > 1 ? *info.m - 1 : 1, budget);
    next.stable_upto = p ? *p - 1 : kAllStable;
    return {std::move(next), std::move(info)};
}

std::pair<PhiState, StepInfo> phi_step(const PhiState& state) {
    AccessBudget budget;
    return phi_step(state, budget);
}

void PhiTrace::commit_p(Position p, bool committed) {
    p_ref = p;
    p_committed = committed;
    q_seq.clear();
    if (!p) return;
    const std::size_t pos = *p - 1;
    for (const auto& row : rows) {
        if (pos >= row.size()) {
            q_seq.clear();
            return;
        }
        q_seq.push_back(abs(row[pos]));
    }
}

PhiTrace phi_trace(const CoefficientStream& s, std::size_t max_steps, AccessBudget& budget,
                   const PhiTraceOptions& options) {
    PhiTrace trace;
    CoefficientStream cur = canonical(s);
    Position p = detail::first_bad_from(cur, 1, budget);
    detail::record_state(trace, cur, p, options);
    for (std::size_t n = 0; n < max_steps && p; ++n) {
        StepInfo info = detail::phi_in_place(cur, *p, budget);
        const std::size_t m = *info.m;
        trace.steps.push_back(std::move(info));
        p = detail::first_bad_from(cur, m > 1 ? m - 1 : 1, budget);
        detail::record_state(trace, cur, p, options);
    }
    detail::finish_trace(trace, cur, options);
    return trace;
}

PhiTrace phi_trace(const CoefficientStream& s, std::size_t max_steps, const PhiTraceOptions& options) {
    AccessBudget budget;
    return phi_trace(s, max_steps, budget, options);
}

Position index_map_step(std::size_t e, const StepInfo& info) {
    if (info.rule == PhiRule::Fixed || !info.m) return e;
    const std::size_t m = *info.m;
    if (e + 2 <= m) return e;
    if (info.rule == PhiRule::Zero) {
        if (e == m - 1 || e == m) return std::nullopt;
        return e - 2;
    }
    if (e == m - 1) return std::nullopt;
    return e - 1;
}

}  // namespace negcf
