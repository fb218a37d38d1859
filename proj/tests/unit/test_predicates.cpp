#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "curvearr/predicates.hpp"
#include "oracle.hpp"

using namespace curvearr;

namespace {

Dyadic D(const char* s) { return *Dyadic::from_decimal(s); }

Dyadic snap(double v, int bits) { return Dyadic(mpz_class(std::llround(std::ldexp(v, bits)) * 1.0), -bits); }

Box2 centered(const Dyadic& cx, const Dyadic& cy, const Dyadic& half) {
    return Box2(cx - half, cy - half, cx + half, cy + half);
}

bool inside(const Box2& b, const oracle::Pt& p) {
    return b.x0.to_double() < p.x && p.x < b.x1.to_double() && b.y0.to_double() < p.y && p.y < b.y1.to_double();
}

// Dyadic square of width 2^-e containing p at a random relative position.
Box2 box_around(const oracle::Pt& p, int e, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(0.05, 0.95);
    const double w = std::ldexp(1.0, -e);
    const Dyadic x0 = snap(p.x - u(rng) * w, 30), y0 = snap(p.y - u(rng) * w, 30);
    const Dyadic wd(mpz_class(1), -e);
    return Box2(x0, y0, x0 + wd, y0 + wd);
}

CurveSystem sys_of(const oracle::Poly2& f, const oracle::Poly2& g) { return CurveSystem::from_text(f.text(), g.text()); }

const CurveSystem& circle_parabola() {
    static const CurveSystem s = CurveSystem::from_text("y - x^2", "x^2 + y^2 - 1");
    return s;
}

// The right-hand intersection of the circle and the parabola.
oracle::Pt right_root() {
    const double y = oracle::golden_y();
    return {std::sqrt(y), y};
}

}  // namespace

TEST(C0, Examples) {
    const CurveSystem s = CurveSystem::from_text("x^2 + y^2 - 1", "1");
    EXPECT_TRUE(c0(s, Curve::F, Box2(2, 2, 3, 3)));
    EXPECT_FALSE(c0(s, Curve::F, Box2(0, 0, 1, 1)));
    EXPECT_TRUE(c0(s, Curve::G, Box2(-100, -100, 100, 100)));
}

TEST(C1, Examples) {
    const CurveSystem s = CurveSystem::from_text("y - x^2", "x - 2*y");
    // [-2,2]*[-2,2] + [1,1] = [-3,5] with the self-product square.
    EXPECT_FALSE(c1(s, Curve::F, Box2(-1, -1, 1, 1)));
    // [-1/2,1/2]*[-1/2,1/2] + 1 = [3/4, 5/4].
    EXPECT_TRUE(c1(s, Curve::F, Box2(D("-0.25"), 0, D("0.25"), D("0.5"))));
    EXPECT_TRUE(c1(s, Curve::G, Box2(-1000, -1000, 1000, 1000)));
    // With h_x = 1 but h_y straddling 0 the self-product square can go negative.
    const CurveSystem t = CurveSystem::from_text("x + y^2", "1");
    EXPECT_FALSE(c1(t, Curve::F, Box2(-1, -1, 1, 1)));
    EXPECT_TRUE(c1(t, Curve::F, Box2(-1, D("0.125"), 1, 1)));
}

TEST(C1, LooseSquareDiffersFromTight) {
    const CurveSystem s = CurveSystem::from_text("y - x^2", "1");
    const Box2 witness(-1, -1, 1, 1);
    EXPECT_FALSE(c1(s, Curve::F, witness));
    EXPECT_TRUE(c1_tight(s, Curve::F, witness));
}

TEST(Classify, Examples) {
    EXPECT_EQ(class_of({true, false, true, false}), BoxClass::Excluded);
    EXPECT_EQ(class_of({false, true, true, false}), BoxClass::FCandidate);
    EXPECT_EQ(class_of({true, false, false, true}), BoxClass::GCandidate);
    EXPECT_EQ(class_of({false, true, false, true}), BoxClass::FGCandidate);
    EXPECT_EQ(class_of({false, false, true, true}), BoxClass::Unresolved);
    EXPECT_EQ(class_of({false, true, false, false}), BoxClass::Unresolved);
    const CurveSystem& s = circle_parabola();
    EXPECT_EQ(classify(s, Box2(2, 2, 3, 3)), BoxClass::Excluded);
    const oracle::Pt r = right_root();
    const Box2 b = centered(snap(r.x, 20), snap(r.y, 20), D("0.0625"));
    EXPECT_EQ(classify(s, b), BoxClass::FGCandidate);
    // On the parabola near (0, 0), far from the circle.
    EXPECT_EQ(classify(s, centered(0, 0, D("0.0625"))), BoxClass::FCandidate);
    // On the circle near (0, -1), far from the parabola.
    EXPECT_EQ(classify(s, centered(0, -1, D("0.0625"))), BoxClass::GCandidate);
}

TEST(JC, Examples) {
    // (-2[.5,1])(2[.25,.75]) - 2[.5,1] = [-3,-.5] - [1,2] = [-5,-1.5].
    EXPECT_TRUE(jc(circle_parabola(), Box2(D("0.5"), D("0.25"), 1, D("0.75"))));
    EXPECT_TRUE(jc(CurveSystem::from_text("x + y", "x - y"), Box2(-100, -100, 100, 100)));
    EXPECT_FALSE(jc(CurveSystem::from_text("x^2 + y", "x^2 + y"), Box2(1, 1, 2, 2)));
}

TEST(Miranda, Examples) {
    EXPECT_TRUE(miranda(CurveSystem::from_text("x", "y"), Box2(-1, -1, 1, 1)));
    EXPECT_FALSE(miranda(CurveSystem::from_text("x + y", "x - y"), Box2(-1, -1, 1, 1)));
    EXPECT_FALSE(miranda(CurveSystem::from_text("x", "y"), Box2(1, 1, 2, 2)));
}

TEST(MK, PreconditionedLinearSystem) {
    const CurveSystem s = CurveSystem::from_text("x + y", "x - y");
    const auto cert = mk_test(s, Box2(-1, -1, 1, 1));
    ASSERT_TRUE(cert.has_value());
    EXPECT_DOUBLE_EQ(cert->y[0][0], 0.5);
    EXPECT_DOUBLE_EQ(cert->y[0][1], 0.5);
    EXPECT_DOUBLE_EQ(cert->y[1][0], 0.5);
    EXPECT_DOUBLE_EQ(cert->y[1][1], -0.5);
    EXPECT_EQ(cert->sign_left, -1);
    EXPECT_EQ(cert->sign_right, 1);
    EXPECT_EQ(cert->sign_bottom, -1);
    EXPECT_EQ(cert->sign_top, 1);
}

TEST(MK, CircleParabolaNearRoot) {
    oracle::Poly2 f(2), g(2);
    f.at(0, 1) = 1;
    f.at(2, 0) = -1;
    g.at(2, 0) = g.at(0, 2) = 1;
    g.at(0, 0) = -1;
    oracle::Pt p{0.8, 0.6};
    ASSERT_TRUE(oracle::newton2(f, g, p));
    EXPECT_NEAR(p.x, right_root().x, 1e-10);
    EXPECT_NEAR(p.y, right_root().y, 1e-10);
    const Box2 b = centered(snap(p.x, 20), snap(p.y, 20), D("0.0625"));
    const auto cert = mk_test(circle_parabola(), b);
    ASSERT_TRUE(cert.has_value());
    EXPECT_FALSE(cert->singular);
}

TEST(MK, NoRealRoot) {
    const CurveSystem s = CurveSystem::from_text("x^2 + y^2 + 1", "x - y");
    for (const Box2& b : {Box2(-1, -1, 1, 1), Box2(0, 0, D("0.125"), D("0.125")), Box2(-8, -8, 8, 8)}) {
        EXPECT_FALSE(mk_test(s, b).has_value());
    }
}

TEST(MK, SingularPreconditioner) {
    const CurveSystem s = CurveSystem::from_text("x^2 - y", "x^2 + y");
    EXPECT_FALSE(preconditioner(s, Box2(-1, -1, 1, 1)).has_value());
    EXPECT_FALSE(mk_test(s, Box2(-1, -1, 1, 1)).has_value());
}

TEST(C0, OneSidedOnDenseSamples) {
    std::mt19937_64 rng(31);
    std::uniform_int_distribution<int> k(-64, 63);
    std::uniform_int_distribution<int> w(1, 4);
    int certified = 0;
    for (int i = 0; i < 400; ++i) {
        const oracle::Poly2 f = oracle::random_cubic(rng);
        const CurveSystem s = CurveSystem::from_text(f.text(), "1");
        const Dyadic x0(mpz_class(k(rng)), -5), y0(mpz_class(k(rng)), -5);
        const Dyadic wd(mpz_class(1), -w(rng));
        const Box2 b(x0, y0, x0 + wd, y0 + wd);
        if (!c0(s, Curve::F, b)) {
            continue;
        }
        ++certified;
        const double bx = x0.to_double(), by = y0.to_double(), bw = wd.to_double();
        const bool pos = f.eval(bx, by) > 0;
        for (int a = 0; a < 100; ++a) {
            for (int c = 0; c < 100; ++c) {
                ASSERT_EQ(f.eval(bx + bw * a / 99, by + bw * c / 99) > 0, pos) << f.text();
            }
        }
    }
    EXPECT_GT(certified, 100);
}

TEST(MK, SuccessImpliesNewtonRootInside) {
    std::mt19937_64 rng(41);
    std::uniform_int_distribution<int> w(1, 8);
    std::uniform_real_distribution<double> jitter(-0.3, 0.3);
    const oracle::Rect roi{-1, -1, 1, 1};
    int certified = 0, tried = 0;
    while (certified < 300 && tried < 20000) {
        const auto f = oracle::random_cubic(rng), g = oracle::random_cubic(rng);
        const auto roots = oracle::common_roots(f, g, roi, 24);
        if (roots.empty()) {
            continue;
        }
        const auto s = sys_of(f, g);
        for (const auto& r : roots) {
            // Boxes around the root and boxes nearby that may miss it.
            for (const oracle::Pt& p : {r, oracle::Pt{r.x + jitter(rng), r.y + jitter(rng)}}) {
                ++tried;
                const Box2 b = box_around(p, w(rng), rng);
                if (!mk_test(s, b)) {
                    continue;
                }
                ++certified;
                oracle::Pt q{b.center_x().to_double(), b.center_y().to_double()};
                ASSERT_TRUE(oracle::newton2(f, g, q)) << f.text() << " | " << g.text();
                ASSERT_TRUE(inside(b, q)) << f.text() << " | " << g.text();
            }
        }
    }
    EXPECT_GE(certified, 300);
}

TEST(JC, NeverHoldsOnBoxWithTwoRoots) {
    std::mt19937_64 rng(51);
    const oracle::Rect roi{-2, -2, 2, 2};
    int pairs = 0;
    for (int i = 0; i < 1000; ++i) {
        const auto f = oracle::random_cubic(rng), g = oracle::random_cubic(rng);
        const auto roots = oracle::common_roots(f, g, roi, 40);
        if (roots.size() < 2) {
            continue;
        }
        const auto s = sys_of(f, g);
        for (std::size_t a = 0; a < roots.size(); ++a) {
            for (std::size_t c = a + 1; c < roots.size(); ++c) {
                const Dyadic pad(mpz_class(1), -10);
                const Box2 b(snap(std::min(roots[a].x, roots[c].x), 10) - pad,
                             snap(std::min(roots[a].y, roots[c].y), 10) - pad,
                             snap(std::max(roots[a].x, roots[c].x), 10) + pad,
                             snap(std::max(roots[a].y, roots[c].y), 10) + pad);
                ++pairs;
                EXPECT_FALSE(jc(s, b)) << f.text() << " | " << g.text();
            }
        }
    }
    EXPECT_GT(pairs, 100);
}

TEST(MK, InvariantUnderScaling) {
    std::mt19937_64 rng(61);
    std::uniform_int_distribution<int> w(1, 8);
    const oracle::Rect roi{-1, -1, 1, 1};
    int success = 0, total = 0;
    while (total < 1000) {
        const auto f = oracle::random_cubic(rng), g = oracle::random_cubic(rng);
        const auto roots = oracle::common_roots(f, g, roi, 24);
        if (roots.empty()) {
            continue;
        }
        const Box2 b = box_around(roots[0], w(rng), rng);
        const bool base = mk_test(sys_of(f, g), b).has_value();
        for (const char* sc : {"-1", "4", "1/8", "-3", "7/5"}) {
            const auto scaled = CurveSystem::from_text(std::string(sc) + "*(" + f.text() + ")",
                                                       std::string(sc) + "*(" + g.text() + ")");
            ASSERT_EQ(mk_test(scaled, b).has_value(), base) << sc << " " << f.text() << " | " << g.text();
        }
        success += base;
        ++total;
    }
    EXPECT_GT(success, 300);
    EXPECT_LT(success, 1000);
}

TEST(MK, ShrinkingBoxesEventuallySucceed) {
    std::mt19937_64 rng(71);
    const oracle::Rect roi{-1, -1, 1, 1};
    int tested = 0;
    for (int i = 0; i < 400 && tested < 100; ++i) {
        const auto f = oracle::random_cubic(rng), g = oracle::random_cubic(rng);
        const auto roots = oracle::common_roots(f, g, roi, 24);
        std::string why;
        if (roots.empty() || !oracle::simple_pair(f, g, roi, roots, &why)) {
            continue;
        }
        const auto s = sys_of(f, g);
        for (const auto& r : roots) {
            ++tested;
            const Dyadic cx = snap(r.x, 40), cy = snap(r.y, 40);
            bool ok = false;
            for (int e = 1; e <= 20 && !ok; ++e) {
                ok = mk_test(s, centered(cx, cy, Dyadic(mpz_class(1), -e))).has_value();
            }
            EXPECT_TRUE(ok) << f.text() << " | " << g.text();
        }
    }
    EXPECT_GT(tested, 50);
}
