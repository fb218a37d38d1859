#pragma once

#include <array>
#include <string>

#include "curvearr/box.hpp"
#include "curvearr/expr.hpp"

namespace curvearr {

/// The six functions the algorithm evaluates.
enum class Fn { F = 0, G, FX, FY, GX, GY };

/// Which of the two curves.
enum class Curve { F = 0, G = 1 };

/// f, g and their symbolic partials, with evaluation policy (precision escalation).
class CurveSystem {
public:
    CurveSystem(Expr f, Expr g);
    static CurveSystem from_text(const std::string& f, const std::string& g);

    const Expr& expr(Fn fn) const { return exprs_[static_cast<int>(fn)]; }
    const Expr& f() const { return expr(Fn::F); }
    const Expr& g() const { return expr(Fn::G); }

    /// Inclusion over a box. When the double enclosure contains 0 and the box is deeper than
    /// escalation_depth, the MPFR enclosure is intersected in.
    Interval box(Fn fn, const Box2& b) const;
    Interval point(Fn fn, const Dyadic& x, const Dyadic& y) const;
    /// Sign with 0 mapped to +1; counts uncertain results.
    int sign(Fn fn, const Dyadic& x, const Dyadic& y) const;

    int escalation_depth = 24;
    long escalation_bits = 128;
    long max_sign_bits = 256;

    /// Number of sign queries that hit the precision bound and assumed +1.
    int uncertain_signs() const { return uncertain_; }

private:
    std::array<Expr, 6> exprs_;
    mutable int uncertain_ = 0;
};

inline Fn value_fn(Curve c) { return c == Curve::F ? Fn::F : Fn::G; }
inline Fn dx_fn(Curve c) { return c == Curve::F ? Fn::FX : Fn::GX; }
inline Fn dy_fn(Curve c) { return c == Curve::F ? Fn::FY : Fn::GY; }

}  // namespace curvearr
