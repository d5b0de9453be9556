#include "negcf/cli.hpp"

#include "negcf/classifier.hpp"
#include "negcf/errors.hpp"
#include "negcf/expression.hpp"
#include "negcf/farey.hpp"
#include "negcf/report.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iomanip>

namespace negcf::cli {

namespace {

using nlohmann::json;

constexpr std::size_t kRowWidth = 12;

struct Options {
    std::string expr;
    std::size_t max_steps = 10'000;
    std::size_t access_budget = 1'000'000;
    bool json = false;
    bool text = false;
    std::size_t count = 0;
    std::string svg_file;
    std::string json_file;
    bool labels = false;
    int background_depth = 0;
    int digits = 12;
};

StepBudget budget_of(const Options& o) {
    StepBudget b;
    b.max_steps = o.max_steps;
    b.max_accesses = o.access_budget;
    return b;
}

std::string position_text(const Position& p) { return p ? std::to_string(*p) : "inf"; }

int exit_for(Status s) { return s == Status::Unknown ? kExitUnknown : kExitDefinite; }

void write_file(const std::string& path, const std::string& content) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw Error("cannot open " + path + " for writing");
    f << content;
    if (!f) throw Error("failed writing " + path);
}

int cmd_analyze(const Options& o, std::ostream& out) {
    const CfExpression expr = parse_cf(o.expr);
    const ClassificationReport r = classify(expr.stream, budget_of(o));
    if (o.json) {
        out << report_json(expr, r, o.digits).dump(2) << '\n';
        return exit_for(r.status);
    }
    out << "input:       " << print_cf(expr.stream) << '\n';
    out << "status:      " << to_string(r.status) << '\n';
    out << "mode:        " << to_string(r.mode) << '\n';
    if (r.mode != Mode::FiniteInput) out << "p:           " << position_text(r.p_liminf) << '\n';
    if (r.exact_value) {
        out << "value:       " << r.exact_value->pretty() << '\n';
    } else if (r.enclosure) {
        const auto dec = to_decimal(*r.enclosure, o.digits);
        out << "value:       [" << dec.lo << ", " << dec.hi << "]\n";
    }
    if (r.limit_cf) out << "limit:       " << print_cf(*r.limit_cf) << '\n';
    if (r.certificate) {
        const auto& c = *r.certificate;
        out << "certificate: " << to_string(c.kind) << " n1=" << c.n1 << " n2=" << c.n2
            << (verify_certificate(c) ? " (verified)" : " (NOT verified)") << '\n';
    }
    out << "steps:       " << r.steps_used << '\n';
    out << "evidence:    " << r.evidence << '\n';
    return exit_for(r.status);
}

int cmd_convergents(const Options& o, std::ostream& out) {
    const CfExpression expr = parse_cf(o.expr);
    const ConvergentSeq conv = convergents(expr.stream, o.count);
    if (o.json) {
        json j;
        j["schema_version"] = kSchemaVersion;
        j["command"] = "convergents";
        j["input"] = input_json(expr);
        auto entries = json::array();
        for (std::size_t k = 0; k < conv.size(); ++k)
            entries.push_back({{"index", k},
                               {"value", conv.entries[k].str()},
                               {"c", conv.c[k].get_str()},
                               {"d", conv.d[k].get_str()}});
        j["convergents"] = entries;
        out << j.dump(2) << '\n';
        return kExitDefinite;
    }
    for (std::size_t k = 0; k < conv.size(); ++k) out << k << '\t' << conv.entries[k].pretty() << '\n';
    return kExitDefinite;
}

Coefficients display_row(const CoefficientStream& s, bool& truncated) {
    const auto len = length_of(s);
    truncated = !len || *len > kRowWidth;
    return take(s, kRowWidth);
}

int cmd_phi(const Options& o, std::ostream& out) {
    const CfExpression expr = parse_cf(o.expr);
    PhiTraceOptions topt;
    topt.retain_states = true;
    StepBudget sb = budget_of(o);
    AccessBudget access(sb.max_accesses, sb.horizon);
    PhiTrace trace = phi_trace(expr.stream, o.count, access, topt);
    if (is_periodic(expr.stream)) {
        const ClassificationReport r = classify(expr.stream, sb);
        if (r.status != Status::Unknown) trace.commit_p(r.p_liminf, true);
    }
    const bool show_q = trace.p_committed && !trace.q_seq.empty();

    if (o.json) {
        json j;
        j["schema_version"] = kSchemaVersion;
        j["command"] = "phi";
        j["input"] = input_json(expr);
        j["p_committed"] = trace.p_committed;
        j["p"] = trace.p_committed ? (trace.p_ref ? json(*trace.p_ref) : json("inf")) : json();
        auto rows = json::array();
        for (std::size_t n = 0; n < trace.states.size(); ++n) {
            bool truncated = false;
            auto coeffs = json::array();
            for (const auto& c : display_row(trace.states[n].stream, truncated)) coeffs.push_back(c.get_str());
            json row = {{"n", n}, {"p", trace.p_seq[n] ? json(*trace.p_seq[n]) : json("inf")},
                        {"coefficients", coeffs}, {"truncated", truncated}};
            row["q"] = show_q ? json(trace.q_seq[n].get_str()) : json();
            row["rule"] = n < trace.steps.size() ? json(to_string(trace.steps[n].rule)) : json();
            rows.push_back(row);
        }
        j["rows"] = rows;
        out << j.dump(2) << '\n';
        return kExitDefinite;
    }
    if (trace.p_committed) out << "p = " << position_text(trace.p_ref) << " (committed)\n";
    for (std::size_t n = 0; n < trace.states.size(); ++n) {
        bool truncated = false;
        const Coefficients row = display_row(trace.states[n].stream, truncated);
        out << "n=" << n << " p=" << position_text(trace.p_seq[n]);
        if (show_q) out << " q=" << trace.q_seq[n].get_str();
        out << " [" << join(row) << (truncated ? ",..." : "") << "]";
        if (n < trace.steps.size()) out << ' ' << to_string(trace.steps[n].rule);
        out << '\n';
    }
    return kExitDefinite;
}

Viewport fit_viewport(const FareyPath& path, const Options& o) {
    std::optional<ExtendedRational> lo, hi;
    for (const auto& v : path.vertices) {
        if (v.is_infinite()) continue;
        if (!lo || v < *lo) lo = v;
        if (!hi || *hi < v) hi = v;
    }
    Viewport vp;
    if (lo) {
        BigInt l, h;
        mpz_fdiv_q(l.get_mpz_t(), lo->num().get_mpz_t(), lo->den().get_mpz_t());
        mpz_cdiv_q(h.get_mpz_t(), hi->num().get_mpz_t(), hi->den().get_mpz_t());
        vp.xmin = ExtendedRational(BigInt(l - 1), 1);
        vp.xmax = ExtendedRational(BigInt(h + 1), 1);
        const ExtendedRational span = vp.xmax - vp.xmin;
        vp.height = ExtendedRational(span.num(), span.den() * 2);
    }
    vp.labels = o.labels;
    vp.background_depth = o.background_depth;
    return vp;
}

int cmd_farey(const Options& o, std::ostream& out) {
    const CfExpression expr = parse_cf(o.expr);
    const FareyPath path = path_from_stream(expr.stream, o.count);
    if (!o.svg_file.empty()) write_file(o.svg_file, render_svg(path, fit_viewport(path, o)));
    if (!o.json_file.empty()) write_file(o.json_file, path_to_json(path) + "\n");
    const RevisitHistogram h = revisit_histogram(path);
    out << "path:";
    for (const auto& v : path.vertices) out << ' ' << v.pretty();
    out << '\n' << "visits:";
    for (const auto& [v, c] : h.counts) out << ' ' << v.pretty() << 'x' << c;
    out << '\n' << "most visited:";
    for (const auto& v : h.top) out << ' ' << v.pretty();
    out << '\n';
    return kExitDefinite;
}

int cmd_value(const Options& o, std::ostream& out) {
    const CfExpression expr = parse_cf(o.expr);
    const ClassificationReport r = classify(expr.stream, budget_of(o));
    std::optional<Interval> enclosure = r.enclosure;
    if (r.status == Status::ConvergesIrrational && r.limit_cf)
        enclosure = refine_enclosure(*r.limit_cf, o.digits);
    if (o.json) {
        json j;
        j["schema_version"] = kSchemaVersion;
        j["command"] = "value";
        j["input"] = input_json(expr);
        j["status"] = to_string(r.status);
        j["mode"] = to_string(r.mode);
        if (r.exact_value) {
            j["value"] = {{"exact", r.exact_value->str()}};
        } else if (enclosure) {
            const auto dec = to_decimal(*enclosure, o.digits);
            j["value"] = {{"enclosure",
                           {{"lo", enclosure->lo.str()},
                            {"hi", enclosure->hi.str()},
                            {"decimal", {{"lo", dec.lo}, {"hi", dec.hi}, {"digits", o.digits}}}}}};
        } else {
            j["value"] = nullptr;
        }
        out << j.dump(2) << '\n';
        return exit_for(r.status);
    }
    if (r.exact_value) {
        out << r.exact_value->pretty() << '\n';
    } else if (enclosure) {
        const auto dec = to_decimal(*enclosure, o.digits);
        out << '[' << dec.lo << ", " << dec.hi << "]\n";
    } else {
        out << to_string(r.status) << '\n';
    }
    return exit_for(r.status);
}

void report_error(std::ostream& err, bool as_json, const std::string& kind, const std::string& message,
                  std::optional<std::size_t> position = std::nullopt) {
    if (!as_json) {
        err << "error: " << message << '\n';
        return;
    }
    json j = {{"schema_version", kSchemaVersion}, {"error", {{"kind", kind}, {"message", message}}}};
    j["error"]["position"] = position ? json(*position) : json();
    err << j.dump(2) << '\n';
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Convergence and values of integer continued fractions", "negcf"};
    app.require_subcommand(1);
    Options o;

    auto add_expr = [&o](CLI::App* sub) {
        sub->add_option("expr", o.expr, "continued fraction, e.g. \"[3,0,-3;(3,-3)]\" or @example1")->required();
    };
    auto add_budget = [&o](CLI::App* sub) {
        sub->add_option("--max-steps", o.max_steps, "singularization steps before giving up")
            ->capture_default_str();
        sub->add_option("--access-budget", o.access_budget, "generator coefficient accesses")->capture_default_str();
    };

    auto* analyze = app.add_subcommand("analyze", "classify convergence and report the limit");
    add_expr(analyze);
    add_budget(analyze);
    auto* fmt = analyze->add_flag("--json", o.json, "JSON report");
    analyze->add_flag("--text", o.text, "plain text report (default)")->excludes(fmt);
    analyze->add_option("--digits", o.digits, "decimals in enclosure rendering")->capture_default_str();

    auto* conv = app.add_subcommand("convergents", "list the first N convergents");
    add_expr(conv);
    conv->add_option("-n", o.count, "number of convergents")->required()->check(CLI::PositiveNumber);
    conv->add_flag("--json", o.json, "JSON output");

    auto* phi = app.add_subcommand("phi", "show the singularization orbit");
    add_expr(phi);
    phi->add_option("-n", o.count, "number of steps")->required()->check(CLI::NonNegativeNumber);
    phi->add_option("--access-budget", o.access_budget, "generator coefficient accesses")->capture_default_str();
    phi->add_flag("--json", o.json, "JSON output");

    auto* farey = app.add_subcommand("farey", "convergent path in the Farey graph");
    add_expr(farey);
    farey->add_option("-n", o.count, "number of convergents")->required()->check(CLI::PositiveNumber);
    farey->add_option("--svg", o.svg_file, "write an SVG drawing");
    farey->add_option("--json", o.json_file, "write the path as JSON");
    farey->add_flag("--labels", o.labels, "label vertices");
    farey->add_option("--background-depth", o.background_depth, "Farey tessellation levels behind the path")
        ->check(CLI::Range(0, 8));

    auto* value = app.add_subcommand("value", "exact value or certified decimal enclosure");
    add_expr(value);
    add_budget(value);
    value->add_option("--digits", o.digits, "certified decimals")->capture_default_str()->check(CLI::Range(0, 10000));
    value->add_flag("--json", o.json, "JSON output");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const bool wants_json = std::find(args.begin(), args.end(), "--json") != args.end();
        if (e.get_exit_code() == 0) {
            app.exit(e, out, err);
            return kExitDefinite;
        }
        report_error(err, wants_json, "usage", e.what());
        return kExitUsage;
    }

    try {
        if (analyze->parsed()) return cmd_analyze(o, out);
        if (conv->parsed()) return cmd_convergents(o, out);
        if (phi->parsed()) return cmd_phi(o, out);
        if (farey->parsed()) return cmd_farey(o, out);
        return cmd_value(o, out);
    } catch (const ParseError& e) {
        report_error(err, o.json, "parse", e.what(), e.position());
        return kExitUsage;
    } catch (const BudgetExhausted& e) {
        report_error(err, o.json, "budget", e.what());
        return kExitUnknown;
    } catch (const Error& e) {
        report_error(err, o.json, "usage", e.what());
        return kExitUsage;
    }
}

}  // namespace negcf::cli
