#pragma once

#include "negcf/bigint.hpp"
#include "negcf/coefficient_stream.hpp"

#include <cstddef>
#include <limits>
#include <optional>
#include <utility>
#include <vector>

namespace negcf {

/// Marker for "no bad coefficient" (p = ∞) wherever positions are stored as
/// optionals; std::nullopt plays that role.
using Position = std::optional<std::size_t>;

inline constexpr std::size_t kAllStable = std::numeric_limits<std::size_t>::max();

/// Bounds on work against generator-backed streams. Every generator call made
/// by the engine is charged; scans for the first bad coefficient never look
/// past `horizon` positions.
class AccessBudget {
public:
    AccessBudget() = default;
    AccessBudget(std::size_t max_accesses, std::size_t horizon) : max_accesses_(max_accesses), horizon_(horizon) {}

    /// Throws BudgetExhausted once more than max_accesses calls have been made.
    void charge(std::size_t n = 1);

    std::size_t used() const noexcept { return used_; }
    std::size_t max_accesses() const noexcept { return max_accesses_; }
    std::size_t horizon() const noexcept { return horizon_; }

private:
    std::size_t max_accesses_ = 1'000'000;
    std::size_t horizon_ = 10'000;
    std::size_t used_ = 0;
};

/// Φ^n applied to a continued fraction.
struct PhiState {
    CoefficientStream stream;
    std::size_t step = 0;
    /// Coefficients at positions below this index are not rewritten by any
    /// subsequently observed step (kAllStable for a fixed point).
    std::size_t stable_upto = 0;

    static PhiState initial(const CoefficientStream& s);
};

enum class PhiRule { Zero, PlusOne, MinusOne, Fixed };

const char* to_string(PhiRule r);

struct StepInfo {
    PhiRule rule = PhiRule::Fixed;
    /// Position of the removed coefficient; empty for Fixed.
    Position m;
    /// Convergent indices of the pre-step sequence that disappear: {m-1, m}
    /// for Zero, {m-1} for PlusOne and MinusOne.
    std::vector<std::size_t> deleted_convergent_positions;

    bool operator==(const StepInfo&) const = default;
};

/// Least m >= 1 with b_m in {0, 1, -1}. Exact for Finite and EventuallyPeriodic
/// streams (horizon is ignored); Generator streams are scanned over positions
/// 1..horizon only, so an empty result there means "none within horizon".
Position first_bad_position(const PhiState& state, std::size_t horizon);
Position first_bad_position(const CoefficientStream& s, std::size_t horizon);

/// One application of Φ. EventuallyPeriodic images are re-canonicalized;
/// Generator images grow their explicit head by what the rewrite touched.
std::pair<PhiState, StepInfo> phi_step(const PhiState& state, AccessBudget& budget);
std::pair<PhiState, StepInfo> phi_step(const PhiState& state);

struct PhiTraceOptions {
    bool retain_states = false;
    /// Coefficient rows are recorded up to this many positions per step.
    std::size_t row_cap = 256;
};

/// Record of Φ^0 ... Φ^N applied to one stream.
struct PhiTrace {
    /// p^(n) for n = 0..N; empty entries mean no bad coefficient (p^(n) = ∞,
    /// or for generators none within the horizon).
    std::vector<Position> p_seq;
    /// Rule applied at each step n -> n+1.
    std::vector<StepInfo> steps;
    /// Coefficients at positions 0..p^(n) of each Φ^n (capped at row_cap).
    std::vector<Coefficients> rows;
    /// Reference value for p used to derive q_seq: min of the observed p_seq
    /// unless a caller committed a proven value via commit_p().
    Position p_ref;
    bool p_committed = false;
    /// q^(n) = |b^(n)_{p_ref - 1}| for every recorded step (empty when p_ref is
    /// ∞ or beyond the recorded rows).
    std::vector<BigInt> q_seq;
    /// Leading coefficients that no later state of the trace rewrites.
    Coefficients stable_prefix;
    /// Set when Φ reached a fixed point: the exact limit continued fraction.
    std::optional<CoefficientStream> fixed_limit;
    std::vector<PhiState> states;
    PhiState final_state;

    std::size_t steps_taken() const noexcept { return steps.size(); }
    bool reached_fixed() const noexcept { return fixed_limit.has_value(); }

    /// Re-derives q_seq against p.
    void commit_p(Position p, bool committed);
};

/// Iterates Φ up to max_steps times, stopping early at a fixed point.
/// Throws BudgetExhausted when a generator stream exceeds its budget.
PhiTrace phi_trace(const CoefficientStream& s, std::size_t max_steps, AccessBudget& budget,
                   const PhiTraceOptions& options = {});
PhiTrace phi_trace(const CoefficientStream& s, std::size_t max_steps, const PhiTraceOptions& options = {});

/// Tracks where the convergent at pre-step index e sits after the step.
/// Returns nothing when that convergent is deleted by the step.
Position index_map_step(std::size_t e, const StepInfo& info);

namespace detail {

/// In-place Φ used by traces and the classifier. `scan_from` is a position at
/// or below the first bad coefficient (positions 1..scan_from-1 are known to
/// be good). Returns the step and leaves `stream` rewritten.
StepInfo phi_in_place(CoefficientStream& stream, std::size_t scan_from, AccessBudget& budget);

/// first_bad_position with a starting point and budget charging.
Position first_bad_from(const CoefficientStream& s, std::size_t scan_from, AccessBudget& budget);

/// Appends Φ^n (with its first bad position p) to a trace under construction.
void record_state(PhiTrace& trace, const CoefficientStream& s, Position p, const PhiTraceOptions& options);

/// Fills final_state, stable_prefix, fixed_limit, retroactive stable_upto and
/// the provisional q_seq once a trace loop is over.
void finish_trace(PhiTrace& trace, const CoefficientStream& final_stream, const PhiTraceOptions& options);

}  // namespace detail

}  // namespace negcf
