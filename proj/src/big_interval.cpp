#include "curvearr/big_interval.hpp"

#include <algorithm>
#include <ostream>
#include <utility>

#include "curvearr/errors.hpp"

namespace curvearr {

BigInterval::BigInterval(mpfr_prec_t prec) : prec_(prec) {
    mpfr_init2(lo_, prec_);
    mpfr_init2(hi_, prec_);
    mpfr_set_zero(lo_, 1);
    mpfr_set_zero(hi_, 1);
}

BigInterval::BigInterval(const mpq_class& v, mpfr_prec_t prec) : prec_(prec) {
    mpfr_init2(lo_, prec_);
    mpfr_init2(hi_, prec_);
    mpfr_set_q(lo_, v.get_mpq_t(), MPFR_RNDD);
    mpfr_set_q(hi_, v.get_mpq_t(), MPFR_RNDU);
}

BigInterval::BigInterval(const Dyadic& v, mpfr_prec_t prec) : BigInterval(v.to_rational(), prec) {}

BigInterval::BigInterval(const BigInterval& other) : prec_(other.prec_) {
    mpfr_init2(lo_, prec_);
    mpfr_init2(hi_, prec_);
    mpfr_set(lo_, other.lo_, MPFR_RNDD);
    mpfr_set(hi_, other.hi_, MPFR_RNDU);
}

BigInterval::BigInterval(BigInterval&& other) noexcept : BigInterval(other.prec_) {
    mpfr_swap(lo_, other.lo_);
    mpfr_swap(hi_, other.hi_);
}

BigInterval& BigInterval::operator=(const BigInterval& other) {
    if (this != &other) {
        prec_ = other.prec_;
        mpfr_set_prec(lo_, prec_);
        mpfr_set_prec(hi_, prec_);
        mpfr_set(lo_, other.lo_, MPFR_RNDD);
        mpfr_set(hi_, other.hi_, MPFR_RNDU);
    }
    return *this;
}

BigInterval& BigInterval::operator=(BigInterval&& other) noexcept {
    std::swap(prec_, other.prec_);
    mpfr_swap(lo_, other.lo_);
    mpfr_swap(hi_, other.hi_);
    return *this;
}

BigInterval::~BigInterval() {
    mpfr_clear(lo_);
    mpfr_clear(hi_);
}

BigInterval BigInterval::hull(const BigInterval& a, const BigInterval& b) {
    BigInterval r(std::max(a.prec_, b.prec_));
    mpfr_min(r.lo_, a.lo_, b.lo_, MPFR_RNDD);
    mpfr_max(r.hi_, a.hi_, b.hi_, MPFR_RNDU);
    return r;
}

bool BigInterval::contains_zero() const { return mpfr_sgn(lo_) <= 0 && mpfr_sgn(hi_) >= 0; }

int BigInterval::certain_sign() const {
    if (mpfr_sgn(lo_) > 0) {
        return 1;
    }
    if (mpfr_sgn(hi_) < 0) {
        return -1;
    }
    return 0;
}

double BigInterval::lo_down() const { return mpfr_get_d(lo_, MPFR_RNDD); }
double BigInterval::hi_up() const { return mpfr_get_d(hi_, MPFR_RNDU); }

BigInterval operator+(const BigInterval& a, const BigInterval& b) {
    BigInterval r(std::max(a.prec_, b.prec_));
    mpfr_add(r.lo_, a.lo_, b.lo_, MPFR_RNDD);
    mpfr_add(r.hi_, a.hi_, b.hi_, MPFR_RNDU);
    return r;
}

BigInterval operator-(const BigInterval& a) {
    BigInterval r(a.prec_);
    mpfr_neg(r.lo_, a.hi_, MPFR_RNDD);
    mpfr_neg(r.hi_, a.lo_, MPFR_RNDU);
    return r;
}

BigInterval operator-(const BigInterval& a, const BigInterval& b) {
    BigInterval r(std::max(a.prec_, b.prec_));
    mpfr_sub(r.lo_, a.lo_, b.hi_, MPFR_RNDD);
    mpfr_sub(r.hi_, a.hi_, b.lo_, MPFR_RNDU);
    return r;
}

namespace {

using BinaryOp = int (*)(mpfr_ptr, mpfr_srcptr, mpfr_srcptr, mpfr_rnd_t);

// Hull of op over the four endpoint pairs.
void endpoint_hull(mpfr_t lo, mpfr_t hi, mpfr_prec_t prec, mpfr_srcptr alo, mpfr_srcptr ahi, mpfr_srcptr blo,
                   mpfr_srcptr bhi, BinaryOp op) {
    mpfr_t t;
    mpfr_init2(t, prec);
    const std::pair<mpfr_srcptr, mpfr_srcptr> pairs[4] = {{alo, blo}, {alo, bhi}, {ahi, blo}, {ahi, bhi}};
    op(lo, alo, blo, MPFR_RNDD);
    op(hi, alo, blo, MPFR_RNDU);
    for (int i = 1; i < 4; ++i) {
        op(t, pairs[i].first, pairs[i].second, MPFR_RNDD);
        mpfr_min(lo, lo, t, MPFR_RNDD);
        op(t, pairs[i].first, pairs[i].second, MPFR_RNDU);
        mpfr_max(hi, hi, t, MPFR_RNDU);
    }
    mpfr_clear(t);
}

}  // namespace

BigInterval operator*(const BigInterval& a, const BigInterval& b) {
    BigInterval r(std::max(a.prec_, b.prec_));
    endpoint_hull(r.lo_, r.hi_, r.prec_, a.lo_, a.hi_, b.lo_, b.hi_, mpfr_mul);
    return r;
}

BigInterval operator/(const BigInterval& a, const BigInterval& b) {
    if (b.contains_zero()) {
        throw DomainError("division by an interval containing zero");
    }
    BigInterval r(std::max(a.prec_, b.prec_));
    endpoint_hull(r.lo_, r.hi_, r.prec_, a.lo_, a.hi_, b.lo_, b.hi_, mpfr_div);
    return r;
}

BigInterval iv_pow(const BigInterval& a, int n) {
    if (n < 0) {
        return BigInterval(mpq_class(1), a.precision()) / iv_pow(a, -n);
    }
    if (n == 0) {
        return BigInterval(mpq_class(1), a.precision());
    }
    if (n == 1) {
        return a;
    }
    if (n % 2 == 0) {
        return iv_square(iv_pow(a, n / 2));
    }
    return iv_pow(a, n - 1) * a;
}

BigInterval big_exp(const BigInterval& a) {
    BigInterval r(a.prec_);
    mpfr_exp(r.lo_, a.lo_, MPFR_RNDD);
    mpfr_exp(r.hi_, a.hi_, MPFR_RNDU);
    return r;
}

BigInterval BigInterval::pi(mpfr_prec_t prec) {
    BigInterval r(prec);
    mpfr_const_pi(r.lo_, MPFR_RNDD);
    mpfr_const_pi(r.hi_, MPFR_RNDU);
    return r;
}

namespace {

// True if the interval may contain an integer.
bool may_contain_integer(mpfr_srcptr lo, mpfr_srcptr hi) {
    mpfr_t fl;
    mpfr_t ce;
    mpfr_init2(fl, mpfr_get_prec(hi));
    mpfr_init2(ce, mpfr_get_prec(lo));
    mpfr_floor(fl, hi);
    mpfr_ceil(ce, lo);
    const bool r = mpfr_cmp(fl, ce) >= 0;
    mpfr_clear(fl);
    mpfr_clear(ce);
    return r;
}

}  // namespace

BigInterval BigInterval::sin_shifted(const BigInterval& a, bool cosine) {
    const mpfr_prec_t prec = a.prec_;
    BigInterval r(prec);
    mpfr_t w;
    mpfr_init2(w, prec);
    mpfr_sub(w, a.hi_, a.lo_, MPFR_RNDU);
    const bool wide = mpfr_cmp_ui(w, 6) >= 0 || !mpfr_number_p(w);
    mpfr_clear(w);
    if (wide) {
        mpfr_set_si(r.lo_, -1, MPFR_RNDD);
        mpfr_set_si(r.hi_, 1, MPFR_RNDU);
        return r;
    }
    auto fn = cosine ? mpfr_cos : mpfr_sin;
    mpfr_t t;
    mpfr_init2(t, prec);
    fn(r.lo_, a.lo_, MPFR_RNDD);
    fn(t, a.hi_, MPFR_RNDD);
    mpfr_min(r.lo_, r.lo_, t, MPFR_RNDD);
    fn(r.hi_, a.lo_, MPFR_RNDU);
    fn(t, a.hi_, MPFR_RNDU);
    mpfr_max(r.hi_, r.hi_, t, MPFR_RNDU);
    mpfr_clear(t);

    // Maxima at phase + 2k*pi, minima at phase + pi + 2k*pi.
    const BigInterval p = pi(prec);
    const BigInterval two(mpq_class(2), prec);
    const BigInterval half(mpq_class(1, 2), prec);
    const BigInterval max_phase = cosine ? BigInterval(prec) : p * half;
    const BigInterval tmax = (a - max_phase) / (two * p);
    const BigInterval tmin = (a - max_phase - p) / (two * p);
    if (may_contain_integer(tmax.lo_, tmax.hi_)) {
        mpfr_set_si(r.hi_, 1, MPFR_RNDU);
    }
    if (may_contain_integer(tmin.lo_, tmin.hi_)) {
        mpfr_set_si(r.lo_, -1, MPFR_RNDD);
    }
    return r;
}

BigInterval big_sin(const BigInterval& a) { return BigInterval::sin_shifted(a, false); }
BigInterval big_cos(const BigInterval& a) { return BigInterval::sin_shifted(a, true); }

std::ostream& operator<<(std::ostream& os, const BigInterval& a) {
    return os << "[" << a.lo_down() << ", " << a.hi_up() << "]";
}

}  // namespace curvearr
