#pragma once

#include <gmpxx.h>
#include <mpfr.h>

#include <iosfwd>

#include "curvearr/dyadic.hpp"

namespace curvearr {

/// Interval with MPFR endpoints at a fixed precision, rounded outward with directed
/// rounding. Used when double intervals are too wide to decide a sign.
class BigInterval {
public:
    explicit BigInterval(mpfr_prec_t prec = 128);
    BigInterval(const mpq_class& v, mpfr_prec_t prec);
    BigInterval(const Dyadic& v, mpfr_prec_t prec);
    BigInterval(const BigInterval& other);
    BigInterval(BigInterval&& other) noexcept;
    BigInterval& operator=(const BigInterval& other);
    BigInterval& operator=(BigInterval&& other) noexcept;
    ~BigInterval();

    /// Smallest interval containing both.
    static BigInterval hull(const BigInterval& a, const BigInterval& b);

    mpfr_prec_t precision() const { return prec_; }
    bool contains_zero() const;
    /// Sign when certain, 0 otherwise.
    int certain_sign() const;
    double lo_down() const;
    double hi_up() const;

    friend BigInterval operator+(const BigInterval& a, const BigInterval& b);
    friend BigInterval operator-(const BigInterval& a, const BigInterval& b);
    friend BigInterval operator*(const BigInterval& a, const BigInterval& b);
    friend BigInterval operator/(const BigInterval& a, const BigInterval& b);
    friend BigInterval operator-(const BigInterval& a);

    friend BigInterval big_exp(const BigInterval& a);
    friend BigInterval big_sin(const BigInterval& a);
    friend BigInterval big_cos(const BigInterval& a);

    friend std::ostream& operator<<(std::ostream& os, const BigInterval& a);

private:
    static BigInterval pi(mpfr_prec_t prec);
    // sin(a + shift) where shift is 0 or pi/2.
    static BigInterval sin_shifted(const BigInterval& a, bool cosine);

    mpfr_prec_t prec_;
    mpfr_t lo_;
    mpfr_t hi_;
};

inline BigInterval iv_square(const BigInterval& a) { return a * a; }
BigInterval iv_pow(const BigInterval& a, int n);
inline BigInterval iv_exp(const BigInterval& a) { return big_exp(a); }
inline BigInterval iv_sin(const BigInterval& a) { return big_sin(a); }
inline BigInterval iv_cos(const BigInterval& a) { return big_cos(a); }

}  // namespace curvearr
