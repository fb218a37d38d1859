#include <gtest/gtest.h>
#include <mpfr.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include "curvearr/big_interval.hpp"
#include "curvearr/box.hpp"
#include "curvearr/expr.hpp"

using namespace curvearr;

namespace {

Dyadic D(const char* s) { return *Dyadic::from_decimal(s); }

bool holds(const Interval& iv, const mpq_class& v) { return mpq_class(iv.lo) <= v && v <= mpq_class(iv.hi); }

// True value of a unary libm function bracketed at 200 bits.
bool holds_mpfr(const Interval& iv, double x, int (*fn)(mpfr_ptr, mpfr_srcptr, mpfr_rnd_t)) {
    mpfr_t a, lo, hi;
    mpfr_inits2(200, a, lo, hi, static_cast<mpfr_ptr>(nullptr));
    mpfr_set_d(a, x, MPFR_RNDN);
    fn(lo, a, MPFR_RNDD);
    fn(hi, a, MPFR_RNDU);
    const bool ok = mpfr_cmp_d(lo, iv.lo) >= 0 && mpfr_cmp_d(hi, iv.hi) <= 0;
    mpfr_clears(a, lo, hi, static_cast<mpfr_ptr>(nullptr));
    return ok;
}

}  // namespace

TEST(Dyadic, CanonicalForm) {
    const Dyadic a(mpz_class(12), 0);
    EXPECT_EQ(a.mantissa(), 3);
    EXPECT_EQ(a.exponent(), 2);
    const Dyadic z(mpz_class(0), 7);
    EXPECT_EQ(z.exponent(), 0);
    EXPECT_TRUE(z.is_zero());
    EXPECT_EQ(Dyadic(3).half().half().to_decimal(), "0.75");
    EXPECT_EQ((D("0.375") + D("-1.5")).to_decimal(), "-1.125");
    EXPECT_EQ((D("0.5") * D("0.25")).to_decimal(), "0.125");
}

TEST(Dyadic, DecimalParsing) {
    EXPECT_EQ(D("-1.25"), Dyadic(mpz_class(-5), -2));
    EXPECT_EQ(D("25e-2"), Dyadic(1).half().half());
    EXPECT_FALSE(Dyadic::from_decimal("0.1").has_value());
    EXPECT_THROW(Dyadic::from_decimal("abc"), std::invalid_argument);
    EXPECT_EQ(D("-0.375").to_decimal(), "-0.375");
}

TEST(Interval, Examples) {
    EXPECT_EQ(iv_add({1, 2}, {3, 4}), Interval(4, 6));
    EXPECT_EQ(iv_mul({-1, 2}, {3, 4}), Interval(-4, 8));
    EXPECT_EQ(iv_mul({0, 0}, {-7.5, 3}), Interval(0, 0));
    EXPECT_EQ(iv_sub({1, 2}, {3, 4}), Interval(-3, -1));
    EXPECT_EQ(iv_neg({1, 2}), Interval(-2, -1));
}

TEST(Interval, SquareIsSelfProduct) {
    EXPECT_EQ(iv_square(Interval(-1, 2)), Interval(-2, 4));
    EXPECT_EQ(iv_square_tight(Interval(-1, 2)), Interval(0, 4));
    EXPECT_EQ(iv_square(Interval(1, 3)), Interval(1, 9));
    EXPECT_EQ(iv_square(Interval(-2, -1)), Interval(1, 4));
}

TEST(Interval, SquareLowerEndpointIsMinusAB) {
    std::mt19937_64 rng(11);
    std::uniform_int_distribution<int> k(1, 1000);
    for (int i = 0; i < 1000; ++i) {
        const double a = k(rng) / 64.0, b = k(rng) / 64.0;
        const Interval s = iv_square(Interval(-a, b));
        EXPECT_EQ(s.lo, -a * b);
        EXPECT_LT(s.lo, iv_square_tight(Interval(-a, b)).lo);
    }
}

TEST(Interval, Magnitude) {
    EXPECT_EQ(iv_mag({-3, 1}), 3);
    EXPECT_EQ(iv_mag({2, 5}), 5);
    EXPECT_EQ(iv_mag({0, 0}), 0);
}

TEST(Interval, InexactResultsAreWidened) {
    const Interval third = iv_div(1, 3);
    EXPECT_LT(third.lo, third.hi);
    EXPECT_FALSE(third.exact);
    EXPECT_TRUE(holds(third, mpq_class(1, 3)));
    const Interval tiny = iv_add(1, 1e-30);
    EXPECT_TRUE(holds(tiny, mpq_class(1) + mpq_class(1e-30)));
    EXPECT_THROW(iv_div(1, {-1, 1}), DomainError);
}

TEST(Interval, SoundnessOnRandomPoints) {
    std::mt19937_64 rng(2024);
    std::uniform_real_distribution<double> u(-8, 8);
    std::uniform_real_distribution<double> t(0, 1);
    auto make = [&]() {
        double a = u(rng), b = u(rng);
        if (a > b) {
            std::swap(a, b);
        }
        return Interval(a, b);
    };
    auto pick = [&](const Interval& iv) { return std::clamp(iv.lo + t(rng) * (iv.hi - iv.lo), iv.lo, iv.hi); };
    for (int i = 0; i < 100000; ++i) {
        const Interval a = make(), b = make();
        const double x = pick(a), y = pick(b);
        const mpq_class qx(x), qy(y);
        ASSERT_TRUE(holds(iv_add(a, b), qx + qy));
        ASSERT_TRUE(holds(iv_sub(a, b), qx - qy));
        ASSERT_TRUE(holds(iv_mul(a, b), qx * qy));
        ASSERT_TRUE(holds(iv_neg(a), -qx));
        ASSERT_TRUE(holds(iv_square(a), qx * qx));
        ASSERT_TRUE(holds(iv_pow(a, 3), qx * qx * qx));
        if (!b.contains_zero()) {
            ASSERT_TRUE(holds(iv_div(a, b), qx / qy));
        }
        ASSERT_TRUE(holds_mpfr(iv_exp(Interval(x)), x, mpfr_exp));
        ASSERT_TRUE(holds_mpfr(iv_sin(a), x, mpfr_sin));
        ASSERT_TRUE(holds_mpfr(iv_cos(a), x, mpfr_cos));
    }
}

TEST(Interval, DirectedRoundingPrimitives) {
    using namespace rounding;
    EXPECT_LT(add_down(1, 1e-30), add_up(1, 1e-30));
    EXPECT_EQ(add_down(1, 2), 3);
    EXPECT_EQ(add_up(1, 2), 3);
    EXPECT_TRUE(mpq_class(mul_down(0.1, 0.1)) <= mpq_class(0.1) * mpq_class(0.1));
    EXPECT_TRUE(mpq_class(mul_up(0.1, 0.1)) >= mpq_class(0.1) * mpq_class(0.1));
    EXPECT_TRUE(mpq_class(div_down(1, 3)) < mpq_class(1, 3));
    EXPECT_TRUE(mpq_class(div_up(1, 3)) > mpq_class(1, 3));
}

TEST(BigInterval, EnclosesAndSigns) {
    const BigInterval third = BigInterval(mpq_class(1, 3), 128);
    EXPECT_EQ(third.certain_sign(), 1);
    EXPECT_LE(third.lo_down(), 1.0 / 3);
    EXPECT_GE(third.hi_up(), 1.0 / 3);
    const BigInterval z = third * BigInterval(mpq_class(3), 128) - BigInterval(mpq_class(1), 128);
    EXPECT_TRUE(z.contains_zero());
    EXPECT_EQ(iv_square(BigInterval(mpq_class(-1), 64) - BigInterval(mpq_class(0), 64)).certain_sign(), 1);
    const BigInterval s = iv_sin(BigInterval(mpq_class(1), 256));
    EXPECT_LE(s.lo_down(), std::sin(1.0));
    EXPECT_GE(s.hi_up(), std::sin(1.0));
}

TEST(Box, ScaleExamples) {
    const Box2 unit(D("-0.5"), D("-0.5"), D("0.5"), D("0.5"));
    EXPECT_EQ(box_scale(unit, 2), Box2(-1, -1, 1, 1));
    const Box2 b(0, 0, 1, 1, 0, Alignment::Aligned);
    EXPECT_EQ(box_scale(b, 8), Box2(D("-3.5"), D("-3.5"), D("4.5"), D("4.5")));
    EXPECT_EQ(box_scale(b, 2).alignment, Alignment::HalfAligned);
    EXPECT_EQ(box_scale(b, mpq_class(1, 2)).alignment, Alignment::HalfAligned);
    EXPECT_EQ(box_scale(b, 6), Box2(D("-2.5"), D("-2.5"), D("3.5"), D("3.5")));
    EXPECT_THROW(box_scale(b, mpq_class(1, 3)), DomainError);
}

TEST(Box, FaceExamples) {
    const Box2 b(0, 0, 1, 1);
    EXPECT_EQ(box_face(b, Axis::X, Side::Plus), Box2(1, 0, 1, 1));
    EXPECT_EQ(box_face(b, Axis::Y, Side::Minus), Box2(0, 0, 1, 0));
    const Box2 f = box_face(Box2(0, 0, 2, 2), Axis::X, Side::Plus);
    EXPECT_EQ(f.center_x(), Dyadic(2));
    EXPECT_EQ(f.center_y(), Dyadic(1));
}

TEST(Box, SplitExamples) {
    const Box2 b(0, 0, 2, 2, 0, Alignment::Aligned);
    const auto q = box_split(b);
    EXPECT_EQ(q[0], Box2(0, 0, 1, 1));
    EXPECT_EQ(q[1], Box2(1, 0, 2, 1));
    EXPECT_EQ(q[2], Box2(0, 1, 1, 2));
    EXPECT_EQ(q[3], Box2(1, 1, 2, 2));
    for (const Box2& c : q) {
        EXPECT_EQ(c.width(), Dyadic(1));
        EXPECT_EQ(c.depth, 1);
        EXPECT_EQ(c.alignment, Alignment::Aligned);
    }
}

TEST(Box, DoubleSplitTilesExactly) {
    const Box2 b(D("-1.5"), D("0.25"), D("0.5"), D("2.25"));
    std::vector<Box2> leaves;
    for (const Box2& c : box_split(b)) {
        for (const Box2& g : box_split(c)) {
            leaves.push_back(g);
        }
    }
    ASSERT_EQ(leaves.size(), 16U);
    Dyadic area(0);
    for (std::size_t i = 0; i < leaves.size(); ++i) {
        EXPECT_TRUE(b.contains(leaves[i]));
        EXPECT_EQ(leaves[i].width_x(), (b.width_x()).half().half());
        area += leaves[i].width_x() * leaves[i].width_y();
        for (std::size_t j = i + 1; j < leaves.size(); ++j) {
            EXPECT_FALSE(leaves[i].interiors_meet(leaves[j]));
        }
    }
    EXPECT_EQ(area, b.width_x() * b.width_y());
}

TEST(Box, NestedBoxesConvergeMonotonically) {
    const Expr e = parse("x^2*y - 3*x + sin(y)");
    const Dyadic px = D("0.3125"), py = D("-0.40625");
    double last = std::numeric_limits<double>::infinity();
    Interval iv;
    for (int k = 0; k <= 40; ++k) {
        const Dyadic h = Dyadic(mpz_class(1), -k);
        iv = eval_box(e, Box2(px - h, py - h, px + h, py + h));
        EXPECT_LE(iv.width(), last);
        last = iv.width();
    }
    const double v = 0.3125 * 0.3125 * -0.40625 - 3 * 0.3125 + std::sin(-0.40625);
    EXPECT_NEAR(iv.mid(), v, 1e-9);
    EXPECT_LT(iv.width(), 1e-9);
    EXPECT_TRUE(iv.contains(v));
}
