#pragma once

#include "negcf/coefficient_stream.hpp"
#include "negcf/extended_rational.hpp"
#include "negcf/moebius.hpp"
#include "negcf/phi.hpp"

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace negcf {

enum class Status { ConvergesRational, ConvergesIrrational, ConvergesExtendedRational, Diverges, Unknown };
enum class Mode { Exact, Empirical, FiniteInput };
enum class CertificateKind { FixedPoint, ExactCycle, DriftCycle, ShiftCycle };
enum class TailTendency { TailPlus2, TailMinus2, Neither };

const char* to_string(Status s);
const char* to_string(Mode m);
const char* to_string(CertificateKind k);
const char* to_string(TailTendency t);

/// A finite, replayable witness for an asymptotic property of the Φ orbit of
/// an eventually periodic continued fraction.
///
///  - FixedPoint: the anchor has no coefficient in {0, ±1} past position 0.
///  - ExactCycle: Φ^(n2-n1) maps the anchor back to itself.
///  - DriftCycle: Φ^(n2-n1) maps the anchor to itself except that the
///    coefficient at drift_position moved by drift_delta. Every coefficient
///    descended from it during the cycle stays at that position and, when the
///    position is not 0, has the sign of drift_delta and modulus >= 2, so the
///    cycle repeats forever with the coefficient drifting away from {0, ±1}.
///  - ShiftCycle: with L = emitted_prefix.size() and d = emitted_period.size(),
///    the anchor's first bad position is L + 1, no step of the cycle rewrites a
///    position below L, and the suffix from L + d after the cycle equals the
///    anchor's suffix from L. The orbit then repeats shifted by d forever and
///    the limit continued fraction is emitted_prefix followed by
///    emitted_period repeating.
struct CycleCertificate {
    CertificateKind kind = CertificateKind::FixedPoint;
    std::size_t n1 = 0;
    std::size_t n2 = 0;
    std::optional<BigInt> drift_delta;
    std::optional<std::size_t> drift_position;
    Coefficients emitted_prefix;
    std::optional<Coefficients> emitted_period;
    /// Canonical Φ^n1 state; verify_certificate replays from here.
    CoefficientStream anchor;
    /// liminf of p over the orbit for ExactCycle and DriftCycle.
    std::optional<std::size_t> p_min;

    std::size_t cycle_length() const noexcept { return n2 - n1; }
};

/// Replays the certificate from its anchor and checks every claim it makes.
bool verify_certificate(const CycleCertificate& cert);

/// Scans consecutive canonical Φ states (states[k] = Φ^k of some eventually
/// periodic stream) and returns the first certificate found, if any.
std::optional<CycleCertificate> detect_certificate(std::span<const PhiState> states);

struct StepBudget {
    std::size_t max_steps = 10'000;
    std::size_t max_accesses = 1'000'000;
    std::size_t history_cap = 50'000;
    /// Generator scan horizon when the stream carries no hint.
    std::size_t horizon = 10'000;
    /// Depth of the enclosure attached to irrational verdicts.
    std::size_t enclosure_depth = 64;
};

struct ClassificationReport {
    Status status = Status::Unknown;
    Mode mode = Mode::Exact;
    /// liminf p^(n); empty means ∞. Meaningless for FiniteInput.
    std::optional<std::size_t> p_liminf;
    std::optional<ExtendedRational> exact_value;
    std::optional<Interval> enclosure;
    std::optional<CycleCertificate> certificate;
    /// Limit continued fraction when the orbit has p^(n) -> ∞.
    std::optional<CoefficientStream> limit_cf;
    PhiTrace trace;
    std::size_t steps_used = 0;
    /// Human-readable account of the rule that produced the verdict.
    std::string evidence;
};

/// Decides convergence of the continued fraction.
///
/// Finite input is evaluated directly. Eventually periodic input is
/// classified exactly whenever a certificate turns up within budget.
/// Generator input is classified empirically from the observed orbit.
/// Budget exhaustion yields Status::Unknown rather than an error.
ClassificationReport classify(const CoefficientStream& s, const StepBudget& budget = {});

/// Whether the coefficients are eventually all 2 or all -2. Exact for
/// eventually periodic streams; generators are judged on the second half of
/// their horizon; finite streams have no tail.
TailTendency tail_tendency(const CoefficientStream& s);

/// Exact value of a continued fraction whose coefficients from tail_start on
/// are all 2 (tail value 1) or all -2 (tail value -1): the composite of the
/// earlier coefficients applied to the tail value.
/// Throws PreconditionViolated if the tail is not constant 2 or -2.
ExtendedRational rational_value_from_tail(const CoefficientStream& s, std::size_t tail_start);

/// Value v*_{p-2} of the stable coefficients b*_0..b*_{p-2}; ∞ when p = 1.
/// Throws PreconditionViolated when trace.stable_prefix is shorter than p - 1.
ExtendedRational extended_rational_value_case2a(const PhiTrace& trace, std::size_t p);

/// Enclosure of the limit of a continued fraction with |b_i| >= 2 (i >= 1)
/// tight enough to certify `digits` decimals, deepening as needed up to
/// max_depth.
Interval refine_enclosure(const CoefficientStream& limit, int digits, std::size_t max_depth = 100'000);

}  // namespace negcf
