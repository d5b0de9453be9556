#include "negcf/errors.hpp"
#include "negcf/farey.hpp"
#include "support.hpp"

#include <doctest.h>

#include <regex>
#include <set>

using namespace negcf;

namespace {

Coefficients co(std::initializer_list<long> xs) {
    Coefficients out;
    for (long x : xs) out.emplace_back(x);
    return out;
}

ExtendedRational q(long n, long d) { return ExtendedRational(BigInt(n), BigInt(d)); }

const ExtendedRational inf = ExtendedRational::infinity();

std::size_t count_of(const std::string& text, const std::string& needle) {
    std::size_t n = 0;
    for (auto pos = text.find(needle); pos != std::string::npos; pos = text.find(needle, pos + 1)) ++n;
    return n;
}

std::vector<std::string> edge_elements(const std::string& svg) {
    std::vector<std::string> out;
    const std::regex edge(R"(<(path|line) class="edge"[^>]*>)");
    for (auto it = std::sregex_iterator(svg.begin(), svg.end(), edge); it != std::sregex_iterator(); ++it)
        out.push_back(it->str());
    return out;
}

}  // namespace

TEST_CASE("adjacency") {
    CHECK(is_adjacent(ExtendedRational(0), inf));
    CHECK(is_adjacent(q(1, 2), q(1, 3)));
    CHECK(!is_adjacent(ExtendedRational(1), q(1, 3)));
    CHECK(is_adjacent(ExtendedRational(5), inf));
    CHECK(!is_adjacent(q(1, 2), inf));
    CHECK_THROWS_AS(is_adjacent(q(1, 2), q(2, 4)), PreconditionViolated);
}

TEST_CASE("paths from streams") {
    const FareyPath osc = path_from_stream(EventuallyPeriodic{co({1}), co({1})}, 6);
    CHECK(osc.vertices == std::vector<ExtendedRational>{inf, 1, 0, inf, 1, 0, inf});
    const FareyPath two = path_from_stream(EventuallyPeriodic{co({2}), co({2})}, 3);
    CHECK(two.vertices == std::vector<ExtendedRational>{inf, 2, q(3, 2), q(4, 3)});
    CHECK(path_from_stream(Finite{co({5})}, 1).vertices == std::vector<ExtendedRational>{inf, 5});
    CHECK_THROWS_AS(path_from_stream(Finite{co({5})}, 2), StreamExhausted);
}

TEST_CASE("revisit counts") {
    const FareyPath osc{{inf, 1, 0, inf, 1, 0, inf}};
    const RevisitHistogram h = revisit_histogram(osc);
    CHECK(h.count_of(inf) == 3);
    CHECK(h.count_of(1) == 2);
    CHECK(h.count_of(0) == 2);
    CHECK(h.top == std::vector<ExtendedRational>{inf, 1});
    CHECK(h.vertices_with_at_least(2) == 3);

    const RevisitHistogram nine = revisit_histogram(path_from_stream(EventuallyPeriodic{co({9}), co({4})}, 50));
    CHECK(nine.counts.size() == 51);
    for (const auto& [v, c] : nine.counts) CHECK(c == 1);

    const RevisitHistogram five = revisit_histogram(FareyPath{{inf, 5}});
    CHECK(five.count_of(inf) == 1);
    CHECK(five.count_of(5) == 1);
    CHECK(revisit_histogram(FareyPath{}).top.empty());
}

TEST_CASE("geodesics") {
    CHECK(geodesic(0, 1) == GeodesicArc(Semicircle{q(1, 2), q(1, 2)}));
    CHECK(geodesic(2, inf) == GeodesicArc(VerticalRay{2}));
    CHECK(geodesic(inf, 2) == GeodesicArc(VerticalRay{2}));
    CHECK(geodesic(-1, 2) == GeodesicArc(Semicircle{q(1, 2), q(3, 2)}));
    CHECK(geodesic(2, -1) == GeodesicArc(Semicircle{q(1, 2), q(3, 2)}));
    CHECK_THROWS_AS(geodesic(3, 3), PreconditionViolated);
}

TEST_CASE("svg rendering") {
    Viewport vp;
    vp.xmin = -1;
    vp.xmax = 3;
    vp.height = 2;
    vp.width_px = 400;
    vp.height_px = 200;

    const std::string tri = render_svg(FareyPath{{inf, 1, 0}}, vp);
    const auto edges = edge_elements(tri);
    REQUIRE(edges.size() == 2);
    CHECK(edges[0] == R"(<line class="edge" x1="200.00" y1="200.00" x2="200.00" y2="0.00"/>)");
    CHECK(edges[1] == R"(<path class="edge" d="M 100.00 200.00 A 50.00 50.00 0 0 1 200.00 200.00"/>)");
    CHECK(count_of(tri, "<text") == 0);

    const std::string osc = render_svg(path_from_stream(EventuallyPeriodic{co({1}), co({1})}, 6), vp);
    const auto six = edge_elements(osc);
    CHECK(six.size() == 6);
    CHECK(std::set<std::string>(six.begin(), six.end()).size() == 3);

    vp.labels = false;
    const std::string empty = render_svg(FareyPath{}, vp);
    CHECK(edge_elements(empty).empty());
    CHECK(count_of(empty, "<text") == 0);

    vp.labels = true;
    const std::string labelled = render_svg(FareyPath{{inf, 1, 0, q(1, 2)}}, vp);
    CHECK(count_of(labelled, "<text") == 4);
    CHECK(labelled.find(">∞</text>") != std::string::npos);
    CHECK(labelled.find(">1/2</text>") != std::string::npos);
    CHECK(labelled.find(R"(<text x="200.00" y="12.00">∞</text>)") != std::string::npos);

    CHECK(render_svg(FareyPath{{inf, 1, 0}}, vp) == render_svg(FareyPath{{inf, 1, 0}}, vp));

    vp.background_depth = 2;
    const std::string bg = render_svg(FareyPath{{inf, 1, 0}}, vp);
    CHECK(count_of(bg, "farey-bg\"") > 0);
    CHECK(edge_elements(bg).size() == 2);

    Viewport bad = vp;
    bad.xmax = bad.xmin;
    CHECK_THROWS_AS(render_svg(FareyPath{}, bad), PreconditionViolated);
    bad = vp;
    bad.height = 0;
    CHECK_THROWS_AS(render_svg(FareyPath{}, bad), PreconditionViolated);
}

TEST_CASE("pixel rounding is half to even") {
    Viewport vp;
    vp.xmin = 0;
    vp.xmax = 1;
    vp.height = 1;
    vp.width_px = 1;
    vp.height_px = 1;
    // x = 1/8 maps to 0.125 -> 0.12, x = 3/8 maps to 0.375 -> 0.38.
    const std::string svg = render_svg(FareyPath{{inf, q(1, 8), q(3, 8)}}, vp);
    CHECK(svg.find(R"(x1="0.12")") != std::string::npos);
    CHECK(svg.find("A 0.12 0.12 0 0 1 0.38 1.00") != std::string::npos);
}

TEST_CASE("rendered arcs end on their vertices") {
    std::mt19937_64 rng(51);
    Viewport vp;
    vp.xmin = -10;
    vp.xmax = 10;
    vp.height = 10;
    vp.width_px = 1000;
    vp.height_px = 500;
    for (int t = 0; t < 50; ++t) {
        const FareyPath p = path_from_stream(Finite{sample::list(rng, 12, -4, 4)}, 12);
        const auto edges = edge_elements(render_svg(p, vp));
        REQUIRE(edges.size() == p.edge_count());
        for (std::size_t i = 0; i < edges.size(); ++i) {
            const auto& u = p.vertices[i];
            const auto& v = p.vertices[i + 1];
            auto px = [](const ExtendedRational& x) {
                return (mpq_class(x.num(), x.den()).get_d() + 10.0) * 50.0;
            };
            std::smatch m;
            if (u.is_infinite() || v.is_infinite()) {
                REQUIRE(std::regex_search(edges[i], m, std::regex(R"re(x1="([-0-9.]+)")re")));
                REQUIRE(std::abs(std::stod(m[1]) - px(u.is_infinite() ? v : u)) <= 1.0);
            } else {
                REQUIRE(std::regex_search(edges[i], m, std::regex(R"re(M ([-0-9.]+) [-0-9.]+ A .* ([-0-9.]+) [-0-9.]+")re")));
                const double lo = std::min(px(u), px(v)), hi = std::max(px(u), px(v));
                REQUIRE(std::abs(std::stod(m[1]) - lo) <= 1.0);
                REQUIRE(std::abs(std::stod(m[2]) - hi) <= 1.0);
            }
        }
    }
}

TEST_CASE("paths are walks in the Farey graph") {
    std::mt19937_64 rng(52);
    for (int t = 0; t < 1000; ++t) {
        const FareyPath p = path_from_stream(sample::periodic(rng, -7, 7, 6, 6), 50);
        for (std::size_t i = 0; i + 1 < p.vertices.size(); ++i) REQUIRE(is_adjacent(p.vertices[i], p.vertices[i + 1]));
    }
}

TEST_CASE("json round trip") {
    const FareyPath p{{inf, 1, 0, q(-3, 7)}};
    const std::string text = path_to_json(p);
    CHECK(text.find(R"("num": "-3")") != std::string::npos);
    CHECK(text.find(R"("den": "0")") != std::string::npos);
    CHECK(path_from_json(text) == p);
    CHECK_THROWS_AS(path_from_json("{"), ParseError);
    CHECK_THROWS_AS(path_from_json(R"({"vertices": [{"num": 1, "den": "2"}]})"), ParseError);
    CHECK_THROWS_AS(path_from_json(R"({"vertices": [{"num": "x", "den": "2"}]})"), ParseError);
    CHECK_THROWS_AS(path_from_json(R"([1, 2])"), ParseError);
}
