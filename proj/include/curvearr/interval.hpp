#pragma once

#include <gmpxx.h>

#include <algorithm>
#include <cmath>
#include <iosfwd>

#include "curvearr/dyadic.hpp"

namespace curvearr {

/// Closed interval [lo, hi] of doubles with outward rounding.
///
/// Every operation returns a superset of the exact real image. Endpoints are moved one ulp
/// outward only when the floating point result was inexact (detected with error-free
/// transformations); `exact` stays true while no rounding happened, so a degenerate exact
/// interval carries the true value.
struct Interval {
    double lo = 0.0;
    double hi = 0.0;
    bool exact = true;

    Interval() = default;
    Interval(double v) : lo(v), hi(v) {}  // NOLINT(google-explicit-constructor)
    Interval(double l, double h, bool is_exact = true) : lo(l), hi(h), exact(is_exact) {}

    static Interval enclose(const Dyadic& v);
    static Interval enclose(const mpq_class& v);
    static Interval hull(const Dyadic& a, const Dyadic& b);

    bool contains(double v) const { return lo <= v && v <= hi; }
    bool contains_zero() const { return lo <= 0.0 && 0.0 <= hi; }
    bool is_point() const { return lo == hi; }
    bool positive() const { return lo > 0.0; }
    bool negative() const { return hi < 0.0; }
    /// Sign when it is certain, 0 otherwise.
    int certain_sign() const { return lo > 0.0 ? 1 : (hi < 0.0 ? -1 : 0); }
    double width() const { return hi - lo; }
    double mid() const { return lo + 0.5 * (hi - lo); }
    bool subset_of(const Interval& o) const { return o.lo <= lo && hi <= o.hi; }

    friend bool operator==(const Interval& a, const Interval& b) { return a.lo == b.lo && a.hi == b.hi; }
};

Interval iv_add(const Interval& a, const Interval& b);
Interval iv_sub(const Interval& a, const Interval& b);
Interval iv_mul(const Interval& a, const Interval& b);
Interval iv_div(const Interval& a, const Interval& b);  // throws DomainError if 0 in b
Interval iv_neg(const Interval& a);

/// Self product {x*y : x, y in a}. Deliberately not the tight {x^2 : x in a}; the gradient
/// predicate depends on the looser lower endpoint.
Interval iv_square(const Interval& a);
/// {x^2 : x in a}; only used for comparisons against the loose square.
Interval iv_square_tight(const Interval& a);
/// Integer power built from iv_square / iv_mul; negative exponents divide.
Interval iv_pow(const Interval& a, int n);

Interval iv_exp(const Interval& a);
Interval iv_sin(const Interval& a);
Interval iv_cos(const Interval& a);

/// max(|lo|, |hi|)
double iv_mag(const Interval& a);
/// min |x| over a (0 if a contains 0).
double iv_mig(const Interval& a);
Interval iv_hull(const Interval& a, const Interval& b);

inline Interval operator+(const Interval& a, const Interval& b) { return iv_add(a, b); }
inline Interval operator-(const Interval& a, const Interval& b) { return iv_sub(a, b); }
inline Interval operator*(const Interval& a, const Interval& b) { return iv_mul(a, b); }
inline Interval operator/(const Interval& a, const Interval& b) { return iv_div(a, b); }
inline Interval operator-(const Interval& a) { return iv_neg(a); }

std::ostream& operator<<(std::ostream& os, const Interval& a);

/// Downward / upward rounded primitives, exposed for callers that build bounds by hand.
namespace rounding {
double add_down(double a, double b);
double add_up(double a, double b);
double mul_down(double a, double b);
double mul_up(double a, double b);
double div_down(double a, double b);
double div_up(double a, double b);
}  // namespace rounding

}  // namespace curvearr
