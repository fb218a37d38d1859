#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace curvearr {

/// Exact binary rational mantissa * 2^exponent.
///
/// Kept canonical: the mantissa is odd, or zero with exponent 0. Sums, differences,
/// products and power-of-two scalings are exact.
class Dyadic {
public:
    Dyadic() = default;
    Dyadic(long value);  // NOLINT(google-explicit-constructor)
    Dyadic(mpz_class mantissa, long exponent);

    static Dyadic from_double(double value);
    /// Exact parse of a decimal literal ("-1.25", "3e-2"); empty if the value is not dyadic.
    static std::optional<Dyadic> from_decimal(std::string_view text);

    const mpz_class& mantissa() const { return mantissa_; }
    long exponent() const { return exponent_; }
    int sign() const { return sgn(mantissa_); }
    bool is_zero() const { return mantissa_ == 0; }

    Dyadic operator-() const { return Dyadic(-mantissa_, exponent_); }
    Dyadic& operator+=(const Dyadic& other);
    Dyadic& operator-=(const Dyadic& other);
    Dyadic& operator*=(const Dyadic& other);

    friend Dyadic operator+(Dyadic a, const Dyadic& b) { return a += b; }
    friend Dyadic operator-(Dyadic a, const Dyadic& b) { return a -= b; }
    friend Dyadic operator*(Dyadic a, const Dyadic& b) { return a *= b; }

    /// this * 2^k.
    Dyadic scaled(long k) const;
    Dyadic half() const { return scaled(-1); }

    friend bool operator==(const Dyadic& a, const Dyadic& b) {
        return a.exponent_ == b.exponent_ && a.mantissa_ == b.mantissa_;
    }
    friend std::strong_ordering operator<=>(const Dyadic& a, const Dyadic& b);

    mpq_class to_rational() const;
    /// Approximate double value (truncated).
    double to_double() const;
    /// Largest double <= value and smallest double >= value.
    double to_double_down() const;
    double to_double_up() const;

    /// Exact finite decimal expansion, e.g. "-0.375", "12".
    std::string to_decimal() const;

private:
    void canonicalize();

    mpz_class mantissa_{0};
    long exponent_ = 0;
};

Dyadic min(const Dyadic& a, const Dyadic& b);
Dyadic max(const Dyadic& a, const Dyadic& b);

/// Exact parse of a decimal literal as a rational ("0.1" -> 1/10). Throws std::invalid_argument.
mpq_class parse_decimal_rational(std::string_view text);

}  // namespace curvearr
