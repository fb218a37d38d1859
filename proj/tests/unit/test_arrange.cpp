#include <gtest/gtest.h>

#include <cmath>
#include <algorithm>
#include <random>

#include "curvearr/arrange.hpp"
#include "graph_of.hpp"
#include "oracle.hpp"

using namespace curvearr;

namespace {

Dyadic D(const char* s) { return *Dyadic::from_decimal(s); }

// Tree, isolator and arranger kept alive together so the stages can be inspected.
struct Pipeline {
    CurveSystem sys;
    SubdivTree tree;
    Isolator iso;
    std::unique_ptr<Arranger> arr;
    Arrangement result;
    Pipeline(const std::string& f, const std::string& g, const Box2& roi, double eps)
        : sys(CurveSystem::from_text(f, g)), tree(Frame(roi)), iso(sys, tree, IsolateOptions{eps, 40}) {
        arr = std::make_unique<Arranger>(sys, tree, iso, iso.run());
        result = arr->run();
    }
};

oracle::Poly2 poly(int deg, std::initializer_list<std::tuple<int, int, double>> terms) {
    oracle::Poly2 p(deg);
    for (const auto& [i, j, c] : terms) {
        p.at(i, j) = c;
    }
    return p;
}

struct Expect {
    int roots, s_comp, s_closed, t_comp, t_closed;
};

// Topology of the output against marching squares, plus planarity, degrees and alternation.
void check_against_oracle(const Arrangement& a, const oracle::Poly2& f, const oracle::Poly2& g, const oracle::Rect& roi,
                          double eps) {
    const auto gr = testsupport::graph_of(a);
    const auto st = oracle::graph_stats(gr);
    const auto tf = oracle::march(f, roi, 2048);
    const auto tg = oracle::march(g, roi, 2048);
    EXPECT_EQ(st.root_vertices, static_cast<int>(oracle::common_roots(f, g, roi).size()));
    EXPECT_EQ(st.s_components, tf.components);
    EXPECT_EQ(st.s_closed, tf.closed);
    EXPECT_EQ(st.t_components, tg.components);
    EXPECT_EQ(st.t_closed, tg.closed);
    EXPECT_TRUE(st.degrees_ok);
    EXPECT_TRUE(st.alternation_ok);
    EXPECT_EQ(oracle::crossing_pairs(gr), 0);
    if (std::isfinite(eps)) {
        EXPECT_LE(oracle::hausdorff(gr, 'S', f, tf), eps);
        EXPECT_LE(oracle::hausdorff(gr, 'T', g, tg), eps);
    }
}

// Zero of h on the segment p0 -> p1 by bisection; NaN when the end signs agree.
double crossing(const oracle::Poly2& h, oracle::Pt p0, oracle::Pt p1) {
    double lo = 0, hi = 1;
    auto at = [&](double t) { return h.eval(p0.x + t * (p1.x - p0.x), p0.y + t * (p1.y - p0.y)); };
    const bool s0 = at(0) >= 0;
    if ((at(1) >= 0) == s0) {
        return NAN;
    }
    for (int i = 0; i < 80; ++i) {
        const double m = 0.5 * (lo + hi);
        ((at(m) >= 0) == s0 ? lo : hi) = m;
    }
    return 0.5 * (lo + hi);
}

// Every segment carrying both curves has an order, and it agrees with the true crossings.
int check_orders(const Pipeline& p, const oracle::Poly2& f, const oracle::Poly2& g) {
    const Frame& fr = p.tree.frame();
    int doubly = 0;
    for (const auto& s : p.arr->segments()) {
        if (!s.doubly()) {
            continue;
        }
        ++doubly;
        EXPECT_NE(s.order, Order::Unknown);
        const oracle::Pt a{fr.x(s.key.x0).to_double(), fr.y(s.key.y0).to_double()};
        const oracle::Pt b{fr.x(s.key.x1).to_double(), fr.y(s.key.y1).to_double()};
        const double tf = crossing(f, a, b), tg = crossing(g, a, b);
        if (std::isnan(tf) || std::isnan(tg)) {
            continue;  // a curve crosses the segment an even number of times besides
        }
        EXPECT_EQ(s.order, tg < tf ? Order::GFirst : Order::FFirst);
    }
    return doubly;
}

}  // namespace

TEST(VertexPlacement, Examples) {
    EXPECT_DOUBLE_EQ(vertex_parameter(-1, 3), 0.25);
    EXPECT_DOUBLE_EQ(vertex_parameter(-1, 1), 0.5);
    EXPECT_DOUBLE_EQ(vertex_parameter(-1, 100), 0.25);
    EXPECT_DOUBLE_EQ(vertex_parameter(100, -1), 0.75);
    Arranger::Segment s;
    s.s0 = {1, -1};
    s.s1 = {1, -1};
    EXPECT_FALSE(s.has(Curve::F));
    EXPECT_FALSE(s.doubly());
    s.s1 = {-1, 1};
    EXPECT_TRUE(s.doubly());
    EXPECT_EQ(s.order, Order::Unknown);
}

TEST(OrderOnEdge, CaseTable) {
    MKCertificate c;
    // Component f - g (a = b = 1 in the a f - b g form) positive on the bottom side.
    c.y = {{{1, 1}, {1, -1}}};
    c.sign_bottom = 1;
    EXPECT_EQ(order_on_edge(c, Dir::South, 1, 1), Order::GFirst);
    EXPECT_EQ(order_on_edge(c, Dir::South, -1, -1), Order::FFirst);
    // ab < 0 swaps the roles: f + g positive.
    c.y = {{{1, 1}, {1, 1}}};
    EXPECT_EQ(order_on_edge(c, Dir::South, 1, -1), Order::GFirst);
    EXPECT_EQ(order_on_edge(c, Dir::South, -1, 1), Order::FFirst);
    c.sign_bottom = -1;
    EXPECT_EQ(order_on_edge(c, Dir::South, 1, -1), Order::FFirst);
    c.sign_bottom = 0;
    EXPECT_THROW(order_on_edge(c, Dir::South, 1, -1), InternalError);
    c.sign_bottom = 1;
    // Vanishing coefficient is a contradiction when both curves cross the side.
    c.y = {{{1, 1}, {1, 0}}};
    EXPECT_THROW(order_on_edge(c, Dir::South, 1, 1), InternalError);
}

TEST(OrderOnEdge, LinearSystemMatchesGeometry) {
    // Root (0.6, 0.4) off centre: both lines cross the bottom side and the...
    const CurveSystem sys = CurveSystem::from_text("x + y - 1", "x - y - 1/5");
    const auto f = poly(1, {{1, 0, 1.0}, {0, 1, 1.0}, {0, 0, -1.0}});
    const auto g = poly(1, {{1, 0, 1.0}, {0, 1, -1.0}, {0, 0, -0.2}});
    const Box2 b(D("0.5"), D("0.3125"), D("0.75"), D("0.5625"));
    const auto cert = mk_test(sys, b);
    ASSERT_TRUE(cert.has_value());
    const double x0 = 0.5, y0 = 0.3125, x1 = 0.75, y1 = 0.5625;
    struct SideCase {
        Dir d;
        oracle::Pt a, b;
    };
    int both = 0;
    for (const SideCase& sc : {SideCase{Dir::South, {x0, y0}, {x1, y0}}, SideCase{Dir::East, {x1, y0}, {x1, y1}},
                               SideCase{Dir::North, {x0, y1}, {x1, y1}}, SideCase{Dir::West, {x0, y0}, {x0, y1}}}) {
        const double tf = crossing(f, sc.a, sc.b), tg = crossing(g, sc.a, sc.b);
        if (std::isnan(tf) || std::isnan(tg)) {
            continue;
        }
        ++both;
        const int sf = f.eval(sc.a.x, sc.a.y) >= 0 ? 1 : -1, sg = g.eval(sc.a.x, sc.a.y) >= 0 ? 1 : -1;
        EXPECT_EQ(order_on_edge(*cert, sc.d, sf, sg), tg < tf ? Order::GFirst : Order::FFirst) << to_string(sc.d);
    }
    EXPECT_EQ(both, 1);
}

TEST(Pattern, Classification) {
    // f changes sign across x, g across y: f*g differs between corners.
    EXPECT_EQ(classify_pattern({-1, 1, 1, -1}, {-1, -1, 1, 1}, 0).group, 3);
    EXPECT_EQ(classify_pattern({-1, 1, 1, -1}, {-1, -1, 1, 1}, 0).variant, 'a');
    EXPECT_EQ(classify_pattern({1, -1, 1, 1}, {1, -1, 1, 1}, 2).group, 2);
    EXPECT_EQ(classify_pattern({1, -1, 1, 1}, {1, -1, 1, 1}, 2).variant, 'c');
    EXPECT_EQ(classify_pattern({1, 1, -1, 1}, {1, -1, -1, 1}, 1).variant, 'b');
}

TEST(RootBox, AxesGroupIIIa) {
    Pipeline p("y", "x", Box2(-1, -1, 1, 1), 0.05);
    ASSERT_EQ(p.arr->patterns().size(), 1U);
    EXPECT_EQ(p.arr->patterns()[0].group, 3);
    EXPECT_EQ(p.arr->patterns()[0].variant, 'a');
    const auto st = oracle::graph_stats(testsupport::graph_of(p.result));
    EXPECT_EQ(st.root_vertices, 1);
    EXPECT_TRUE(st.degrees_ok);
    EXPECT_TRUE(st.alternation_ok);
    EXPECT_EQ(st.s_components, 1);
    EXPECT_EQ(st.t_components, 1);
    // Both curves run along grid lines; their vertices still stay within tolerance.
    for (const auto& e : p.result.pslg.edges) {
        for (int w : {e.u, e.v}) {
            const auto& q = p.result.pslg.vertices[static_cast<std::size_t>(w)];
            EXPECT_LE(std::abs((e.label == EdgeLabel::S ? q.y : q.x).to_double()), 0.05);
        }
    }
}

TEST(RootBox, CircleParabolaGroupIII) {
    Pipeline p("y - x^2", "x^2 + y^2 - 1", Box2(-2, -2, 2, 2), 0.05);
    const auto f = poly(2, {{0, 1, 1.0}, {2, 0, -1.0}});
    const auto g = poly(2, {{2, 0, 1.0}, {0, 2, 1.0}, {0, 0, -1.0}});
    ASSERT_EQ(p.result.roots.size(), 2U);
    for (const RootReport& r : p.result.roots) {
        // Corner signs straight from the polynomials.
        const Box2& b = r.box2;
        const double xs[] = {b.x0.to_double(), b.x1.to_double(), b.x1.to_double(), b.x0.to_double()};
        const double ys[] = {b.y0.to_double(), b.y0.to_double(), b.y1.to_double(), b.y1.to_double()};
        bool same = true;
        const double ref = f.eval(xs[0], ys[0]) * g.eval(xs[0], ys[0]);
        for (int i = 1; i < 4; ++i) {
            same = same && (f.eval(xs[i], ys[i]) * g.eval(xs[i], ys[i]) > 0) == (ref > 0);
        }
        EXPECT_EQ(r.pattern.group, same ? 2 : 3);
        EXPECT_EQ(r.pattern.group, 3);
    }
    check_orders(p, f, g);
    check_against_oracle(p.result, f, g, {-2, -2, 2, 2}, 0.05);
}

TEST(RootBox, NearlyParallelGroupII) {
    // f = x + y, g = x + y + (x - y)/10 cross at the origin at a small angle.
    Pipeline p("x + y", "x + y + (x - y)/10", Box2(D("-0.75"), D("-0.75"), D("0.75"), D("0.75")), 0.05);
    const auto f = poly(1, {{1, 0, 1.0}, {0, 1, 1.0}});
    const auto g = poly(1, {{1, 0, 1.1}, {0, 1, 0.9}});
    ASSERT_EQ(p.result.roots.size(), 1U);
    EXPECT_EQ(p.result.roots[0].pattern.group, 2);
    EXPECT_GT(check_orders(p, f, g), 0);
    check_against_oracle(p.result, f, g, {-0.75, -0.75, 0.75, 0.75}, 0.05);
}

TEST(PV, FourVerticesInOneBox) {
    // With no tolerance the boxes stay large enough for the parabola to cross one side twice.
    const std::string fs = "x + 15/64 + 25/4*(y - 11/16)^2", gs = "x*y + 3/32";
    Pipeline p(fs, gs, Box2(-1, -1, 1, 1), INFINITY);
    int four = 0;
    for (const auto& c : p.arr->cells()) {
        four += c.pairs[0].size() >= 2 || c.pairs[1].size() >= 2;
    }
    EXPECT_GE(four, 1);
    const auto f = poly(2, {{1, 0, 1.0}, {0, 0, 15.0 / 64 + 25.0 / 4 * (11.0 / 16) * (11.0 / 16)},
                            {0, 1, -25.0 / 4 * 2 * 11.0 / 16}, {0, 2, 25.0 / 4}});
    const auto g = poly(2, {{1, 1, 1.0}, {0, 0, 3.0 / 32}});
    check_against_oracle(p.result, f, g, {-1, -1, 1, 1}, INFINITY);
}

TEST(Ambiguous, NearParallelCorridor) {
    // g lies just above f everywhere; they never meet.
    Pipeline p("y - 3/10", "y - 3/10 - (1 + x^2)/1000", Box2(-1, -1, 1, 1), 0.05);
    const auto f = poly(2, {{0, 1, 1.0}, {0, 0, -0.3}});
    const auto g = poly(2, {{0, 1, 1.0}, {0, 0, -0.3 - 0.001}, {2, 0, -0.001}});
    check_orders(p, f, g);
    check_against_oracle(p.result, f, g, {-1, -1, 1, 1}, 0.05);
}

TEST(Ambiguous, IntersectingCirclesResolved) {
    Pipeline p("x^2 + y^2 - 1/4", "(x - 1/4)^2 + y^2 - 1/4", Box2(-1, -1, 1, 1), 0.05);
    const auto f = poly(2, {{2, 0, 1.0}, {0, 2, 1.0}, {0, 0, -0.25}});
    const auto g = poly(2, {{2, 0, 1.0}, {1, 0, -0.5}, {0, 2, 1.0}, {0, 0, 1.0 / 16 - 0.25}});
    bool ambiguous = false;
    for (const auto& c : p.arr->cells()) {
        ambiguous = ambiguous || (c.root < 0 && !c.doubly.empty());
    }
    EXPECT_TRUE(ambiguous);
    EXPECT_GT(check_orders(p, f, g), 0);
    check_against_oracle(p.result, f, g, {-1, -1, 1, 1}, 0.05);
}

TEST(Ambiguous, SamplingAgreesWithResolvedOrders) {
    Pipeline p("x^2 + y^2 - 1/4", "(x - 1/4)^2 + y^2 - 1/4", Box2(-1, -1, 1, 1), 0.05);
    const auto f = poly(2, {{2, 0, 1.0}, {0, 2, 1.0}, {0, 0, -0.25}});
    const auto g = poly(2, {{2, 0, 1.0}, {1, 0, -0.5}, {0, 2, 1.0}, {0, 0, 1.0 / 16 - 0.25}});
    const Frame& fr = p.tree.frame();
    int sampled = 0;
    for (const auto& s : p.arr->segments()) {
        if (!s.doubly()) {
            continue;
        }
        const Order o = p.arr->bisect(s);
        ASSERT_NE(o, Order::Unknown);
        EXPECT_EQ(o, s.order);
        const oracle::Pt a{fr.x(s.key.x0).to_double(), fr.y(s.key.y0).to_double()};
        const oracle::Pt b{fr.x(s.key.x1).to_double(), fr.y(s.key.y1).to_double()};
        EXPECT_EQ(o, crossing(g, a, b) < crossing(f, a, b) ? Order::GFirst : Order::FFirst);
        ++sampled;
    }
    EXPECT_GT(sampled, 0);
    // Two nearby crossings on a single horizontal segment, g's first.
    Arranger::Segment s = p.arr->segments()[0];
    const std::int64_t S = kLatticeSide;
    s.key = {S / 2 - S / 64, S / 2 + S / 8, S / 2 + S / 64, S / 2 + S / 8};  // y = 1/4, x in [-1/32, 1/32]
    Pipeline q("x - 1/1000", "x + 1/1000", Box2(-1, -1, 1, 1), 0.05);
    s.s0 = {-1, -1};
    s.s1 = {1, 1};
    EXPECT_EQ(q.arr->bisect(s), Order::GFirst);
}

TEST(Build, EmptyArrangement) {
    const Arrangement a = build_arrangement(CurveSystem::from_text("x - 2", "y - 2"), Box2(-1, -1, 1, 1), {});
    EXPECT_TRUE(a.pslg.vertices.empty());
    EXPECT_TRUE(a.pslg.edges.empty());
    EXPECT_TRUE(a.roots.empty());
}

TEST(Build, CanonicalOrdering) {
    const Arrangement a =
        build_arrangement(CurveSystem::from_text("y - x^2", "x^2 + y^2 - 1"), Box2(-2, -2, 2, 2), {IsolateOptions{0.05, 40}});
    const auto& v = a.pslg.vertices;
    for (std::size_t i = 1; i < v.size(); ++i) {
        EXPECT_TRUE(v[i - 1].y < v[i].y || (v[i - 1].y == v[i].y && v[i - 1].x < v[i].x));
    }
    const auto& e = a.pslg.edges;
    for (std::size_t i = 0; i < e.size(); ++i) {
        EXPECT_LT(e[i].u, e[i].v);
        if (i > 0) {
            EXPECT_LE(std::tie(e[i - 1].u, e[i - 1].v), std::tie(e[i].u, e[i].v));
        }
    }
}

TEST(Build, RandomPairsLocalPatterns) {
    // Every non-root cell pairs each curve's vertices by chords that do not interleave
    // with the other curve's chords under the resolved orders.
    std::mt19937_64 rng(9090);
    const oracle::Rect roi{-1, -1, 1, 1};
    int accepted = 0;
    while (accepted < 30) {
        const auto f = oracle::random_cubic(rng), g = oracle::random_cubic(rng);
        const auto roots = oracle::common_roots(f, g, roi);
        std::string why;
        if (!oracle::simple_pair(f, g, roi, roots, &why)) {
            continue;
        }
        ++accepted;
        Pipeline p(f.text(), g.text(), Box2(-1, -1, 1, 1), 0.05);
        for (const PatternCase& pc : p.arr->patterns()) {
            EXPECT_TRUE(pc.group == 2 || pc.group == 3);
        }
        for (const auto& c : p.arr->cells()) {
            unsigned assignment = 0;
            for (std::size_t k = 0; k < c.doubly.size(); ++k) {
                const auto& s = p.arr->segments()[static_cast<std::size_t>(c.doubly[k])];
                ASSERT_NE(s.order, Order::Unknown);
                if (s.order == Order::GFirst) {
                    assignment |= 1U << k;
                }
            }
            if (c.root >= 0) {
                continue;
            }
            const auto seq = p.arr->boundary_sequence(c, assignment);
            auto index = [&](const Arranger::VRef& r) {
                return static_cast<int>(std::find(seq.begin(), seq.end(), r) - seq.begin());
            };
            for (const auto& [a1, a2] : c.pairs[0]) {
                for (const auto& [b1, b2] : c.pairs[1]) {
                    int i1 = index(a1), i2 = index(a2), j1 = index(b1), j2 = index(b2);
                    if (i1 > i2) {
                        std::swap(i1, i2);
                    }
                    const bool in1 = i1 < j1 && j1 < i2, in2 = i1 < j2 && j2 < i2;
                    EXPECT_EQ(in1, in2) << f.text() << " | " << g.text();
                }
            }
        }
        check_orders(p, f, g);
    }
}
