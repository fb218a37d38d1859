#include "curvearr/curve_system.hpp"

#include <algorithm>

namespace curvearr {

CurveSystem::CurveSystem(Expr f, Expr g)
    : exprs_{f, g, differentiate(f, Var::X), differentiate(f, Var::Y), differentiate(g, Var::X),
             differentiate(g, Var::Y)} {}

CurveSystem CurveSystem::from_text(const std::string& f, const std::string& g) { return {parse(f), parse(g)}; }

Interval CurveSystem::box(Fn fn, const Box2& b) const {
    const Expr& e = expr(fn);
    Interval r = eval_box(e, b);
    if (r.contains_zero() && b.depth > escalation_depth) {
        const Interval big = eval_box_big(e, b, escalation_bits);
        r = Interval(std::max(r.lo, big.lo), std::min(r.hi, big.hi), false);
    }
    return r;
}

Interval CurveSystem::point(Fn fn, const Dyadic& x, const Dyadic& y) const { return eval_point(expr(fn), x, y); }

int CurveSystem::sign(Fn fn, const Dyadic& x, const Dyadic& y) const {
    const SignResult r = eval_sign_detail(expr(fn), x, y, max_sign_bits);
    if (r.uncertain) {
        ++uncertain_;
    }
    return r.sign;
}

}  // namespace curvearr
