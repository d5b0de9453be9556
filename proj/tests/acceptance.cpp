// Acceptance suite: one PASS/FAIL line per criterion.

#include "negcf/classifier.hpp"
#include "negcf/cli.hpp"
#include "negcf/expression.hpp"
#include "negcf/farey.hpp"
#include "negcf/moebius.hpp"
#include "negcf/phi.hpp"
#include "support.hpp"

#include <json.hpp>

#include <chrono>
#include <cstdio>
#include <functional>
#include <map>
#include <sstream>

using namespace negcf;
using nlohmann::json;

namespace {

struct Outcome {
    bool pass = true;
    std::string detail;
};

int failures = 0;

void criterion(int id, const char* title, double limit_s, const std::function<Outcome()>& body) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
        o = body();
    } catch (const std::exception& e) {
        o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (limit_s > 0 && secs > limit_s) {
        o.pass = false;
        o.detail += " (over time limit)";
    }
    if (!o.pass) ++failures;
    while (!o.detail.empty() && o.detail.back() == ' ') o.detail.pop_back();
    char limit[32] = "no limit";
    if (limit_s > 0) std::snprintf(limit, sizeof limit, "limit %.0fs", limit_s);
    std::printf("[%s] %2d %s: %s (%.2fs, %s)\n", o.pass ? "PASS" : "FAIL", id, title, o.detail.c_str(), secs, limit);
}

json run_json(const std::vector<std::string>& args, int& code) {
    std::ostringstream out, err;
    code = cli::run(args, out, err);
    return json::parse(out.str());
}

Coefficients remove_positions(const std::vector<ExtendedRational>& v, const std::vector<std::size_t>& del,
                              std::vector<ExtendedRational>& kept) {
    for (std::size_t i = 0; i < v.size(); ++i)
        if (std::find(del.begin(), del.end(), i) == del.end()) kept.push_back(v[i]);
    return {};
}

Outcome example_verdicts() {
    const std::vector<std::tuple<std::string, std::string, std::string>> cases = {
        {"@example1", "converges-rational", "1/1"},
        {"@example2", "converges-irrational", ""},
        {"@example3", "converges-extended-rational", "inf"},
        {"@example4", "diverges", ""},
    };
    Outcome o;
    for (const auto& [expr, status, value] : cases) {
        const auto t0 = std::chrono::steady_clock::now();
        int code = -1;
        const json j = run_json({"analyze", expr, "--json"}, code);
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        bool ok = code == 0 && j["status"] == status && secs < 1.0;
        if (!value.empty()) ok = ok && j["value"].contains("exact") && j["value"]["exact"] == value;
        if (status == "converges-irrational") ok = ok && j["value"].contains("enclosure");
        o.pass = o.pass && ok;
        o.detail += expr + "=" + j["status"].get<std::string>() +
                    (j["value"].is_object() && j["value"].contains("exact") ? "(" + j["value"]["exact"].get<std::string>() + ")" : "") +
                    " ";
    }
    return o;
}

Outcome example3_law() {
    int code = -1;
    const json j = run_json({"phi", "@example3", "-n", "20", "--json"}, code);
    Outcome o;
    std::size_t matched = 0;
    for (std::size_t n = 1; n <= 20; ++n) {
        const BigInt expected((n + 1) * (n + 2) / 2);
        if (BigInt(j["rows"][n]["coefficients"][0].get<std::string>()) == expected) ++matched;
    }
    o.pass = code == 0 && matched == 20;
    o.detail = std::to_string(matched) + "/20 leading coefficients equal (n+1)(n+2)/2";
    return o;
}

Outcome oscillation() {
    int code = -1;
    const json j = run_json({"convergents", "reg:[1;(-1,1)]", "-n", "9", "--json"}, code);
    const std::vector<std::string> expected = {"1/1", "0/1", "inf"};
    Outcome o;
    std::string seen;
    o.pass = code == 0 && j["convergents"].size() == 9;
    for (std::size_t k = 0; k < j["convergents"].size(); ++k) {
        const std::string v = j["convergents"][k]["value"];
        seen += v + " ";
        o.pass = o.pass && v == expected[k % 3];
    }
    o.detail = seen;
    return o;
}

Outcome deletion_equivalence() {
    std::mt19937_64 rng(4);
    std::size_t checked = 0, fixed = 0;
    for (int t = 0; t < 1000; ++t) {
        const Coefficients b = sample::list(rng, 60, -6, 6);
        const CoefficientStream s = Finite{b};
        const auto [next, info] = phi_step(PhiState::initial(s));
        const ConvergentSeq before = convergents(s, 60);
        if (info.rule == PhiRule::Fixed) {
            ++fixed;
            continue;
        }
        const std::size_t len = *length_of(next.stream);
        if (len + info.deleted_convergent_positions.size() != 60)
            return {false, "length mismatch on trial " + std::to_string(t)};
        const ConvergentSeq after = convergents(next.stream, len);
        std::vector<ExtendedRational> kept;
        remove_positions(before.entries, info.deleted_convergent_positions, kept);
        if (kept != after.entries) return {false, "convergent mismatch on trial " + std::to_string(t)};
        ++checked;
    }
    return {true, std::to_string(checked) + " steps checked, " + std::to_string(fixed) + " already fixed"};
}

Outcome denominator_growth() {
    std::mt19937_64 rng(5);
    for (int t = 0; t < 1000; ++t) {
        const std::size_t len = std::uniform_int_distribution<std::size_t>(1, 40)(rng);
        Coefficients b{sample::big(rng, 9)};
        for (std::size_t i = 1; i < len; ++i) b.push_back(sample::big(rng, 9));
        const ExtendedRational v = evaluate_finite(b);
        // b_0..b_m has m + 1 coefficients.
        if (!(BigInt(len - 1) < v.den()))
            return {false, "denominator " + v.den().get_str() + " with " + std::to_string(len) + " coefficients"};
    }
    return {true, "1000 finite fractions, denominator > last index in all"};
}

Outcome enclosure_and_distance() {
    std::mt19937_64 rng(6);
    const std::size_t n = 40;
    std::size_t endpoint_hits = 0;
    for (int t = 0; t < 500; ++t) {
        const Coefficients b = sample::big_list(rng, n + 1, 6);
        const ExtendedRational lo0(BigInt(b[0] - 1), 1), hi0(BigInt(b[0] + 1), 1);
        Interval prev{lo0, hi0};
        bool all_plus = true, all_minus = true;
        for (std::size_t k = 0; k <= n; ++k) {
            if (k >= 1) {
                all_plus = all_plus && b[k] == 2;
                all_minus = all_minus && b[k] == -2;
            }
            const Interval iv = enclose_value(std::span<const BigInt>(b.data(), k + 1));
            if (!(prev.lo <= iv.lo && iv.hi <= prev.hi)) return {false, "not nested on trial " + std::to_string(t)};
            if (!(lo0 <= iv.lo && iv.hi <= hi0)) return {false, "outside [b0-1, b0+1]"};
            if ((iv.lo == lo0) != all_plus || (iv.hi == hi0) != all_minus)
                return {false, "endpoint condition wrong on trial " + std::to_string(t) + " depth " + std::to_string(k)};
            endpoint_hits += (k == n) && (all_plus || all_minus);
            prev = iv;
        }
        const auto v = oracle::convergents(b);
        for (std::size_t k = 1; k <= n; ++k) {
            const ExtendedRational bound(BigInt(1), BigInt(abs(b[k]) - 1));
            if (!(abs_of(v[n] - v[k - 1]) <= bound)) return {false, "distance bound fails on trial " + std::to_string(t)};
        }
    }
    return {true, "500 streams, " + std::to_string(endpoint_hits) + " with a constant +-2 tail"};
}

Outcome tail_test() {
    std::mt19937_64 rng(7);
    std::size_t rational = 0;
    for (int t = 0; t < 500; ++t) {
        const EventuallyPeriodic s = sample::periodic_big(rng, 6, 6, 5);
        const ClassificationReport r = classify(s);
        const EventuallyPeriodic c = canonicalize(s);
        const bool pm2 = c.period.size() == 1 && (c.period[0] == 2 || c.period[0] == -2);
        const Status want = pm2 ? Status::ConvergesRational : Status::ConvergesIrrational;
        if (r.status != want) return {false, "wrong verdict for " + print_cf(s)};
        if (pm2) {
            ++rational;
            if (!r.exact_value || !enclose_value(s, 50).contains(*r.exact_value))
                return {false, "value outside enclosure for " + print_cf(s)};
        } else if (!r.enclosure || r.exact_value) {
            return {false, "irrational verdict without enclosure"};
        }
    }
    return {true, "500 streams, " + std::to_string(rational) + " rational"};
}

struct Corpus {
    std::vector<EventuallyPeriodic> streams;
    std::vector<ClassificationReport> reports;
};

const Corpus& corpus() {
    static const Corpus c = [] {
        Corpus out;
        std::mt19937_64 rng(8);
        for (int t = 0; t < 2000; ++t) {
            out.streams.push_back(sample::periodic(rng, -4, 4, 6, 6));
            out.reports.push_back(classify(out.streams.back()));
        }
        return out;
    }();
    return c;
}

Outcome certificate_soundness() {
    const Corpus& c = corpus();
    std::size_t certs = 0, unknown = 0;
    std::map<std::string, std::size_t> kinds;
    for (std::size_t i = 0; i < c.streams.size(); ++i) {
        const auto& r = c.reports[i];
        if (r.status == Status::Unknown) {
            ++unknown;
            if (r.certificate) return {false, "Unknown verdict carries a certificate"};
            continue;
        }
        if (!r.certificate) return {false, "exact verdict without certificate for " + print_cf(c.streams[i])};
        ++certs;
        ++kinds[to_string(r.certificate->kind)];
        if (!verify_certificate(*r.certificate)) return {false, "replay failed for " + print_cf(c.streams[i])};
    }
    const double rate = 100.0 * static_cast<double>(unknown) / static_cast<double>(c.streams.size());
    std::string detail = std::to_string(certs) + " certificates verified (";
    for (const auto& [k, n] : kinds) detail += (detail.back() == '(' ? "" : " ") + k + ":" + std::to_string(n);
    char buf[64];
    std::snprintf(buf, sizeof buf, "); unknown rate %.2f%% (target < 5%%)", rate);
    return {rate < 5.0, detail + buf};
}

Outcome divergence_diagnostic() {
    const Corpus& c = corpus();
    std::size_t diverging = 0;
    for (std::size_t i = 0; i < c.streams.size(); ++i) {
        if (c.reports[i].status != Status::Diverges) continue;
        ++diverging;
        const RevisitHistogram h = revisit_histogram(path_from_stream(c.streams[i], 500));
        if (h.vertices_with_at_least(10) < 2)
            return {false, "only " + std::to_string(h.vertices_with_at_least(10)) + " frequent vertices for " +
                               print_cf(c.streams[i])};
    }
    return {true, std::to_string(diverging) + " divergent streams, each revisiting >= 2 vertices >= 10 times"};
}

Outcome path_adjacency() {
    std::mt19937_64 rng(10);
    for (int t = 0; t < 1000; ++t) {
        const CoefficientStream s = t % 2 ? CoefficientStream(Finite{sample::list(rng, 50, -8, 8)})
                                          : CoefficientStream(sample::periodic(rng, -8, 8, 6, 6));
        const FareyPath p = path_from_stream(s, 50);
        for (std::size_t i = 0; i + 1 < p.vertices.size(); ++i) {
            const auto& u = p.vertices[i];
            const auto& v = p.vertices[i + 1];
            const BigInt det = u.num() * v.den() - u.den() * v.num();
            if (abs(det) != 1) return {false, "non-adjacent step on trial " + std::to_string(t)};
        }
    }
    return {true, "1000 paths of depth 50"};
}

}  // namespace

int main() {
    criterion(1, "worked example verdicts", 4, example_verdicts);
    criterion(2, "example 3 leading coefficient law", 1, example3_law);
    criterion(3, "regular (1,-1,1,...) convergents cycle 1, 0, inf", 1, oscillation);
    criterion(4, "one-step convergent deletion", 30, deletion_equivalence);
    criterion(5, "denominator exceeds length", 10, denominator_growth);
    criterion(6, "nested enclosures and convergent distance bound", 60, enclosure_and_distance);
    criterion(7, "constant +-2 tail decides rationality", 60, tail_test);
    criterion(8, "certificate replay on random periodic corpus", 0, certificate_soundness);
    criterion(9, "divergent paths revisit two vertices", 0, divergence_diagnostic);
    criterion(10, "Farey path adjacency", 0, path_adjacency);
    std::printf("%d criteria failed\n", failures);
    return failures == 0 ? 0 : 1;
}
