#include "curvearr/interval.hpp"

#include <array>
#include <limits>
#include <numbers>
#include <ostream>

#include "curvearr/errors.hpp"

namespace curvearr {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double down(double v) { return std::nextafter(v, -kInf); }
double up(double v) { return std::nextafter(v, kInf); }

// Rounded value plus the sign of the rounding error (exact - rounded).
struct Rounded {
    double value;
    int err_sign;
};

Rounded two_sum(double a, double b) {
    const double s = a + b;
    if (!std::isfinite(s)) {
        return {s, 0};
    }
    const double bb = s - a;
    const double err = (a - (s - bb)) + (b - bb);
    return {s, err > 0 ? 1 : (err < 0 ? -1 : 0)};
}

Rounded two_prod(double a, double b) {
    const double p = a * b;
    if (!std::isfinite(p)) {
        return {p, 0};
    }
    const double err = std::fma(a, b, -p);
    return {p, err > 0 ? 1 : (err < 0 ? -1 : 0)};
}

Rounded two_div(double a, double b) {
    const double q = a / b;
    if (!std::isfinite(q)) {
        return {q, 0};
    }
    // a = q*b + r exactly; true quotient = q + r/b.
    const double r = std::fma(-q, b, a);
    const int rs = r > 0 ? 1 : (r < 0 ? -1 : 0);
    return {q, b > 0 ? rs : -rs};
}

double lower_of(Rounded r) { return r.err_sign < 0 ? down(r.value) : r.value; }
double upper_of(Rounded r) { return r.err_sign > 0 ? up(r.value) : r.value; }

// std::exp/sin/cos are not correctly rounded; two ulps either side covers glibc's error.
Interval widen_libm(double v) { return {down(down(v)), up(up(v)), false}; }

}  // namespace

namespace rounding {
double add_down(double a, double b) { return lower_of(two_sum(a, b)); }
double add_up(double a, double b) { return upper_of(two_sum(a, b)); }
double mul_down(double a, double b) { return lower_of(two_prod(a, b)); }
double mul_up(double a, double b) { return upper_of(two_prod(a, b)); }
double div_down(double a, double b) { return lower_of(two_div(a, b)); }
double div_up(double a, double b) { return upper_of(two_div(a, b)); }
}  // namespace rounding

Interval Interval::enclose(const Dyadic& v) {
    const double lo = v.to_double_down();
    const double hi = v.to_double_up();
    return {lo, hi, lo == hi};
}

Interval Interval::enclose(const mpq_class& v) {
    const double d = v.get_d();  // truncated toward zero
    if (mpq_class(d) == v) {
        return {d, d, true};
    }
    return d < 0 || (d == 0 && v < 0) ? Interval(down(d), d, false) : Interval(d, up(d), false);
}

Interval Interval::hull(const Dyadic& a, const Dyadic& b) {
    const Dyadic& lo = a < b ? a : b;
    const Dyadic& hi = a < b ? b : a;
    const double l = lo.to_double_down();
    const double h = hi.to_double_up();
    return {l, h, l == lo.to_double_up() && h == hi.to_double_down()};
}

Interval iv_add(const Interval& a, const Interval& b) {
    const Rounded l = two_sum(a.lo, b.lo);
    const Rounded h = two_sum(a.hi, b.hi);
    return {lower_of(l), upper_of(h), a.exact && b.exact && l.err_sign == 0 && h.err_sign == 0};
}

Interval iv_sub(const Interval& a, const Interval& b) { return iv_add(a, iv_neg(b)); }

Interval iv_neg(const Interval& a) { return {-a.hi, -a.lo, a.exact}; }

Interval iv_mul(const Interval& a, const Interval& b) {
    if ((a.lo == 0.0 && a.hi == 0.0) || (b.lo == 0.0 && b.hi == 0.0)) {
        return {0.0, 0.0, a.exact && b.exact};
    }
    const std::array<Rounded, 4> p{two_prod(a.lo, b.lo), two_prod(a.lo, b.hi), two_prod(a.hi, b.lo),
                                   two_prod(a.hi, b.hi)};
    double lo = kInf;
    double hi = -kInf;
    bool exact = a.exact && b.exact;
    for (const Rounded& r : p) {
        lo = std::min(lo, lower_of(r));
        hi = std::max(hi, upper_of(r));
        exact = exact && r.err_sign == 0;
    }
    return {lo, hi, exact};
}

Interval iv_div(const Interval& a, const Interval& b) {
    if (b.contains_zero()) {
        throw DomainError("division by an interval containing zero");
    }
    const std::array<Rounded, 4> q{two_div(a.lo, b.lo), two_div(a.lo, b.hi), two_div(a.hi, b.lo),
                                   two_div(a.hi, b.hi)};
    double lo = kInf;
    double hi = -kInf;
    bool exact = a.exact && b.exact;
    for (const Rounded& r : q) {
        lo = std::min(lo, lower_of(r));
        hi = std::max(hi, upper_of(r));
        exact = exact && r.err_sign == 0;
    }
    return {lo, hi, exact};
}

Interval iv_square(const Interval& a) { return iv_mul(a, a); }

Interval iv_square_tight(const Interval& a) {
    if (a.lo >= 0.0) {
        return iv_mul(a, a);
    }
    if (a.hi <= 0.0) {
        return iv_mul(iv_neg(a), iv_neg(a));
    }
    const double m = std::max(-a.lo, a.hi);
    const Rounded r = two_prod(m, m);
    return {0.0, upper_of(r), a.exact && r.err_sign == 0};
}

Interval iv_pow(const Interval& a, int n) {
    if (n < 0) {
        return iv_div(Interval(1.0), iv_pow(a, -n));
    }
    if (n == 0) {
        return Interval(1.0);
    }
    if (n == 1) {
        return a;
    }
    if (n % 2 == 0) {
        return iv_square(iv_pow(a, n / 2));
    }
    return iv_mul(iv_pow(a, n - 1), a);
}

Interval iv_exp(const Interval& a) {
    const Interval lo = widen_libm(std::exp(a.lo));
    const Interval hi = widen_libm(std::exp(a.hi));
    return {std::max(0.0, lo.lo), hi.hi, false};
}

namespace {

// True if some phase + 2k*pi may lie in [lo, hi]; errs on the side of true.
bool may_contain_phase(double lo, double hi, double phase) {
    constexpr double two_pi = 2.0 * std::numbers::pi;
    const double tl = (lo - phase) / two_pi;
    const double th = (hi - phase) / two_pi;
    const double slack = 1e-9 * (1.0 + std::max(std::fabs(tl), std::fabs(th)));
    return std::floor(th + slack) >= std::ceil(tl - slack);
}

Interval periodic_range(const Interval& a, double max_phase, double (*fn)(double)) {
    if (!(a.hi - a.lo < 6.0)) {  // also catches infinities
        return {-1.0, 1.0, false};
    }
    const Interval flo = widen_libm(fn(a.lo));
    const Interval fhi = widen_libm(fn(a.hi));
    double lo = std::min(flo.lo, fhi.lo);
    double hi = std::max(flo.hi, fhi.hi);
    if (may_contain_phase(a.lo, a.hi, max_phase)) {
        hi = 1.0;
    }
    if (may_contain_phase(a.lo, a.hi, max_phase + std::numbers::pi)) {
        lo = -1.0;
    }
    return {std::max(-1.0, lo), std::min(1.0, hi), false};
}

}  // namespace

Interval iv_sin(const Interval& a) {
    if (a.exact && a.lo == 0.0 && a.hi == 0.0) {
        return Interval(0.0);
    }
    return periodic_range(a, std::numbers::pi / 2, [](double x) { return std::sin(x); });
}

Interval iv_cos(const Interval& a) {
    if (a.exact && a.lo == 0.0 && a.hi == 0.0) {
        return Interval(1.0);
    }
    return periodic_range(a, 0.0, [](double x) { return std::cos(x); });
}

double iv_mag(const Interval& a) { return std::max(std::fabs(a.lo), std::fabs(a.hi)); }

double iv_mig(const Interval& a) {
    if (a.contains_zero()) {
        return 0.0;
    }
    return std::min(std::fabs(a.lo), std::fabs(a.hi));
}

Interval iv_hull(const Interval& a, const Interval& b) {
    return {std::min(a.lo, b.lo), std::max(a.hi, b.hi), false};
}

std::ostream& operator<<(std::ostream& os, const Interval& a) {
    return os << "[" << a.lo << ", " << a.hi << "]";
}

}  // namespace curvearr
