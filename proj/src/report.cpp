#include "negcf/report.hpp"

#include <algorithm>

namespace negcf {

namespace {

nlohmann::json coefficients_json(const Coefficients& xs, std::size_t cap = SIZE_MAX) {
    auto arr = nlohmann::json::array();
    for (std::size_t i = 0; i < xs.size() && i < cap; ++i) arr.push_back(xs[i].get_str());
    return arr;
}

nlohmann::json position_json(const Position& p) {
    if (!p) return "inf";
    return *p;
}

const char* kind_name(const CoefficientStream& s) {
    if (is_finite(s)) return "finite";
    if (is_periodic(s)) return "eventually-periodic";
    return "generator";
}

}  // namespace

nlohmann::json input_json(const CfExpression& expr) {
    return {{"source", expr.source},
            {"canonical", print_cf(expr.stream)},
            {"convention", expr.convention == Convention::Regular ? "regular" : "negative"},
            {"kind", kind_name(expr.stream)}};
}

nlohmann::json certificate_json(const CycleCertificate& cert) {
    nlohmann::json j = {{"kind", to_string(cert.kind)},
                        {"n1", cert.n1},
                        {"n2", cert.n2},
                        {"anchor", print_cf(cert.anchor)},
                        {"verified", verify_certificate(cert)}};
    j["drift_delta"] = cert.drift_delta ? nlohmann::json(cert.drift_delta->get_str()) : nlohmann::json();
    j["drift_position"] = cert.drift_position ? nlohmann::json(*cert.drift_position) : nlohmann::json();
    j["emitted_prefix"] = coefficients_json(cert.emitted_prefix);
    j["emitted_period"] = cert.emitted_period ? coefficients_json(*cert.emitted_period) : nlohmann::json();
    j["p_min"] = cert.p_min ? nlohmann::json(*cert.p_min) : nlohmann::json();
    return j;
}

nlohmann::json report_json(const CfExpression& expr, const ClassificationReport& report, int digits,
                           std::size_t trace_excerpt) {
    nlohmann::json j;
    j["schema_version"] = kSchemaVersion;
    j["command"] = "analyze";
    j["input"] = input_json(expr);
    j["status"] = to_string(report.status);
    j["mode"] = to_string(report.mode);
    j["p_liminf"] = report.mode == Mode::FiniteInput ? nlohmann::json() : position_json(report.p_liminf);
    j["steps_used"] = report.steps_used;
    j["evidence"] = report.evidence;

    if (report.exact_value) {
        j["value"] = {{"exact", report.exact_value->str()}};
    } else if (report.enclosure) {
        const auto dec = to_decimal(*report.enclosure, digits);
        j["value"] = {{"enclosure",
                       {{"lo", report.enclosure->lo.str()},
                        {"hi", report.enclosure->hi.str()},
                        {"decimal", {{"lo", dec.lo}, {"hi", dec.hi}, {"digits", digits}}}}}};
    } else {
        j["value"] = nullptr;
    }
    j["certificate"] = report.certificate ? certificate_json(*report.certificate) : nlohmann::json();
    j["limit_cf"] = report.limit_cf ? nlohmann::json(print_cf(*report.limit_cf)) : nlohmann::json();

    const PhiTrace& t = report.trace;
    nlohmann::json trace;
    auto p_seq = nlohmann::json::array();
    for (std::size_t i = 0; i < t.p_seq.size() && i < trace_excerpt; ++i) p_seq.push_back(position_json(t.p_seq[i]));
    trace["p_seq"] = p_seq;
    trace["q_seq"] = coefficients_json(t.q_seq, trace_excerpt);
    trace["q_committed"] = t.p_committed;
    trace["stable_prefix"] = coefficients_json(t.stable_prefix, trace_excerpt);
    trace["length"] = t.p_seq.size();
    j["trace"] = trace;
    return j;
}

}  // namespace negcf
