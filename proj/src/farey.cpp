#include "negcf/farey.hpp"

#include "negcf/errors.hpp"
#include "negcf/moebius.hpp"

#include <json.hpp>

#include <algorithm>
#include <sstream>
#include <unordered_map>

namespace negcf {

bool is_adjacent(const ExtendedRational& u, const ExtendedRational& v) {
    if (u == v) throw PreconditionViolated("adjacency of a vertex with itself is undefined");
    const BigInt det = u.num() * v.den() - u.den() * v.num();
    return mpz_cmpabs_ui(det.get_mpz_t(), 1) == 0;
}

FareyPath path_from_stream(const CoefficientStream& s, std::size_t n) {
    if (n == 0) throw PreconditionViolated("path depth must be at least 1");
    FareyPath path;
    path.vertices.reserve(n + 1);
    path.vertices.push_back(ExtendedRational::infinity());
    ConvergentSeq conv = convergents(s, n);
    for (auto& v : conv.entries) path.vertices.push_back(std::move(v));
    return path;
}

std::size_t RevisitHistogram::count_of(const ExtendedRational& v) const {
    for (const auto& [vertex, count] : counts)
        if (vertex == v) return count;
    return 0;
}

std::size_t RevisitHistogram::vertices_with_at_least(std::size_t threshold) const {
    return static_cast<std::size_t>(
        std::count_if(counts.begin(), counts.end(), [threshold](const auto& e) { return e.second >= threshold; }));
}

RevisitHistogram revisit_histogram(const FareyPath& path) {
    RevisitHistogram h;
    std::unordered_map<ExtendedRational, std::size_t, ExtendedRationalHash> slot;
    for (const auto& v : path.vertices) {
        auto [it, inserted] = slot.emplace(v, h.counts.size());
        if (inserted) h.counts.emplace_back(v, 0);
        ++h.counts[it->second].second;
    }
    std::vector<std::size_t> order(h.counts.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return h.counts[a].second > h.counts[b].second; });
    for (std::size_t i = 0; i < order.size() && i < 2; ++i) h.top.push_back(h.counts[order[i]].first);
    return h;
}

GeodesicArc geodesic(const ExtendedRational& u, const ExtendedRational& v) {
    if (u == v) throw PreconditionViolated("geodesic endpoints coincide");
    if (u.is_infinite()) return VerticalRay{v};
    if (v.is_infinite()) return VerticalRay{u};
    const ExtendedRational sum = u + v;
    const ExtendedRational diff = abs_of(u - v);
    return Semicircle{ExtendedRational(sum.num(), sum.den() * 2), ExtendedRational(diff.num(), diff.den() * 2)};
}

namespace {

ExtendedRational times(const ExtendedRational& a, const ExtendedRational& b) {
    return ExtendedRational(a.num() * b.num(), a.den() * b.den());
}

ExtendedRational divided(const ExtendedRational& a, const ExtendedRational& b) {
    return ExtendedRational(a.num() * b.den(), a.den() * b.num());
}

// Fixed-point rendering with two decimals, ties rounded to even.
std::string fixed2(const ExtendedRational& x) {
    const BigInt scaled_num = x.num() * 100;
    BigInt q, r;
    mpz_fdiv_qr(q.get_mpz_t(), r.get_mpz_t(), scaled_num.get_mpz_t(), x.den().get_mpz_t());
    const int half = cmp(BigInt(r * 2), x.den());
    if (half > 0 || (half == 0 && mpz_odd_p(q.get_mpz_t()))) ++q;
    const bool negative = q < 0;
    const BigInt mag = abs(q);
    BigInt whole, frac;
    mpz_fdiv_qr_ui(whole.get_mpz_t(), frac.get_mpz_t(), mag.get_mpz_t(), 100);
    std::string out = negative ? "-" : "";
    out += whole.get_str();
    out += '.';
    const std::string f = frac.get_str();
    if (f.size() < 2) out += '0';
    out += f;
    return out;
}

class PixelMap {
public:
    explicit PixelMap(const Viewport& vp)
        : vp_(vp),
          sx_(divided(ExtendedRational(vp.width_px), vp.xmax - vp.xmin)),
          sy_(divided(ExtendedRational(vp.height_px), vp.height)) {}

    ExtendedRational x(const ExtendedRational& u) const { return times(u - vp_.xmin, sx_); }
    ExtendedRational y(const ExtendedRational& h) const { return ExtendedRational(vp_.height_px) - times(h, sy_); }
    ExtendedRational dx(const ExtendedRational& len) const { return times(len, sx_); }
    ExtendedRational dy(const ExtendedRational& len) const { return times(len, sy_); }

private:
    const Viewport& vp_;
    ExtendedRational sx_;
    ExtendedRational sy_;
};

void emit_arc(std::ostream& out, const GeodesicArc& arc, const PixelMap& px, const char* cls) {
    if (const auto* ray = std::get_if<VerticalRay>(&arc)) {
        const std::string x = fixed2(px.x(ray->x));
        out << "  <line class=\"" << cls << "\" x1=\"" << x << "\" y1=\"" << fixed2(px.y(0)) << "\" x2=\"" << x
            << "\" y2=\"0.00\"/>\n";
        return;
    }
    const auto& c = std::get<Semicircle>(arc);
    out << "  <path class=\"" << cls << "\" d=\"M " << fixed2(px.x(c.center - c.radius)) << ' ' << fixed2(px.y(0))
        << " A " << fixed2(px.dx(c.radius)) << ' ' << fixed2(px.dy(c.radius)) << " 0 0 1 "
        << fixed2(px.x(c.center + c.radius)) << ' ' << fixed2(px.y(0)) << "\"/>\n";
}

std::string label_of(const ExtendedRational& v) { return v.is_infinite() ? "∞" : v.pretty(); }

// Farey edges between consecutive integers in view, refined by mediants.
void emit_background(std::ostream& out, const Viewport& vp, const PixelMap& px) {
    BigInt lo, hi;
    mpz_fdiv_q(lo.get_mpz_t(), vp.xmin.num().get_mpz_t(), vp.xmin.den().get_mpz_t());
    mpz_cdiv_q(hi.get_mpz_t(), vp.xmax.num().get_mpz_t(), vp.xmax.den().get_mpz_t());
    struct Edge {
        ExtendedRational u, v;
        int level;
    };
    std::vector<Edge> stack;
    for (BigInt k = hi - 1; k >= lo; --k) {
        emit_arc(out, VerticalRay{ExtendedRational(k, 1)}, px, "farey-bg");
        stack.push_back({ExtendedRational(k, 1), ExtendedRational(BigInt(k + 1), 1), 1});
    }
    emit_arc(out, VerticalRay{ExtendedRational(hi, 1)}, px, "farey-bg");
    while (!stack.empty()) {
        Edge e = std::move(stack.back());
        stack.pop_back();
        emit_arc(out, geodesic(e.u, e.v), px, "farey-bg");
        if (e.level >= vp.background_depth) continue;
        ExtendedRational mid(e.u.num() + e.v.num(), e.u.den() + e.v.den());
        stack.push_back({mid, e.v, e.level + 1});
        stack.push_back({e.u, mid, e.level + 1});
    }
}

}  // namespace

std::string render_svg(const FareyPath& path, const Viewport& vp) {
    if (vp.xmin.is_infinite() || vp.xmax.is_infinite() || !(vp.xmin < vp.xmax))
        throw PreconditionViolated("viewport needs xmin < xmax");
    if (vp.height.is_infinite() || !(ExtendedRational(0) < vp.height) || vp.width_px <= 0 || vp.height_px <= 0)
        throw PreconditionViolated("viewport has no area");

    const PixelMap px(vp);
    std::ostringstream out;
    out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
        << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << vp.width_px << "\" height=\""
        << vp.height_px << "\" viewBox=\"0 0 " << vp.width_px << ' ' << vp.height_px << "\">\n"
        << "  <style>.edge{fill:none;stroke:#b22222;stroke-width:1.5}"
           ".farey-bg{fill:none;stroke:#c8c8c8;stroke-width:0.5}"
           "text{font:11px sans-serif;fill:#222}</style>\n"
        << "  <line class=\"axis\" x1=\"0\" y1=\"" << vp.height_px << "\" x2=\"" << vp.width_px << "\" y2=\""
        << vp.height_px << "\" stroke=\"#000\"/>\n";
    if (vp.background_depth > 0) emit_background(out, vp, px);
    for (std::size_t i = 0; i + 1 < path.vertices.size(); ++i)
        emit_arc(out, geodesic(path.vertices[i], path.vertices[i + 1]), px, "edge");
    if (vp.labels) {
        std::vector<ExtendedRational> seen;
        for (const auto& v : path.vertices) {
            if (std::find(seen.begin(), seen.end(), v) != seen.end()) continue;
            seen.push_back(v);
            if (v.is_infinite()) {
                out << "  <text x=\"" << fixed2(ExtendedRational(vp.width_px, 2)) << "\" y=\"12.00\">"
                    << label_of(v) << "</text>\n";
            } else {
                out << "  <text x=\"" << fixed2(px.x(v)) << "\" y=\"" << fixed2(ExtendedRational(vp.height_px) - 4)
                    << "\">" << label_of(v) << "</text>\n";
            }
        }
    }
    out << "</svg>\n";
    return out.str();
}

std::string path_to_json(const FareyPath& path) {
    nlohmann::json doc;
    doc["vertices"] = nlohmann::json::array();
    for (const auto& v : path.vertices) doc["vertices"].push_back({{"num", v.num().get_str()}, {"den", v.den().get_str()}});
    return doc.dump(2);
}

FareyPath path_from_json(const std::string& text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(std::string("malformed path document: ") + e.what(), e.byte);
    }
    if (!doc.is_object() || !doc.contains("vertices") || !doc["vertices"].is_array())
        throw ParseError("path document needs a \"vertices\" array", 0);
    FareyPath path;
    std::size_t index = 0;
    for (const auto& v : doc["vertices"]) {
        if (!v.is_object() || !v.contains("num") || !v.contains("den") || !v["num"].is_string() ||
            !v["den"].is_string())
            throw ParseError("vertex needs string fields num and den", index);
        BigInt num, den;
        if (num.set_str(v["num"].get<std::string>(), 10) != 0 || den.set_str(v["den"].get<std::string>(), 10) != 0)
            throw ParseError("vertex fields must be decimal integers", index);
        path.vertices.emplace_back(num, den);
        ++index;
    }
    return path;
}

}  // namespace negcf
