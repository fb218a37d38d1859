#include "curvearr/dyadic.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace curvearr {

Dyadic::Dyadic(long value) : mantissa_(value), exponent_(0) { canonicalize(); }

Dyadic::Dyadic(mpz_class mantissa, long exponent) : mantissa_(std::move(mantissa)), exponent_(exponent) {
    canonicalize();
}

void Dyadic::canonicalize() {
    if (mantissa_ == 0) {
        exponent_ = 0;
        return;
    }
    const auto tz = static_cast<long>(mpz_scan1(mantissa_.get_mpz_t(), 0));
    if (tz > 0) {
        mpz_fdiv_q_2exp(mantissa_.get_mpz_t(), mantissa_.get_mpz_t(), static_cast<mp_bitcnt_t>(tz));
        exponent_ += tz;
    }
}

Dyadic Dyadic::from_double(double value) {
    if (!std::isfinite(value)) {
        throw std::invalid_argument("Dyadic::from_double: non-finite value");
    }
    if (value == 0.0) {
        return {};
    }
    int exp2 = 0;
    const double frac = std::frexp(value, &exp2);
    const double scaled = std::ldexp(frac, 53);
    mpz_class m;
    mpz_set_d(m.get_mpz_t(), scaled);
    return Dyadic(std::move(m), static_cast<long>(exp2) - 53);
}

mpq_class parse_decimal_rational(std::string_view text) {
    std::size_t i = 0;
    bool negative = false;
    if (i < text.size() && (text[i] == '+' || text[i] == '-')) {
        negative = text[i] == '-';
        ++i;
    }
    std::string digits;
    long frac_digits = 0;
    bool seen_point = false;
    bool any_digit = false;
    for (; i < text.size(); ++i) {
        const char c = text[i];
        if (c >= '0' && c <= '9') {
            digits.push_back(c);
            any_digit = true;
            if (seen_point) {
                ++frac_digits;
            }
        } else if (c == '.' && !seen_point) {
            seen_point = true;
        } else {
            break;
        }
    }
    if (!any_digit) {
        throw std::invalid_argument("not a decimal number: '" + std::string(text) + "'");
    }
    long exp10 = 0;
    if (i < text.size() && (text[i] == 'e' || text[i] == 'E')) {
        ++i;
        bool eneg = false;
        if (i < text.size() && (text[i] == '+' || text[i] == '-')) {
            eneg = text[i] == '-';
            ++i;
        }
        if (i >= text.size()) {
            throw std::invalid_argument("bad exponent in '" + std::string(text) + "'");
        }
        long e = 0;
        for (; i < text.size(); ++i) {
            if (text[i] < '0' || text[i] > '9' || e > 100000) {
                throw std::invalid_argument("bad exponent in '" + std::string(text) + "'");
            }
            e = e * 10 + (text[i] - '0');
        }
        exp10 = eneg ? -e : e;
    }
    if (i != text.size()) {
        throw std::invalid_argument("trailing characters in '" + std::string(text) + "'");
    }
    mpz_class num(digits, 10);
    const long scale = exp10 - frac_digits;
    mpz_class pow10;
    mpz_ui_pow_ui(pow10.get_mpz_t(), 10, static_cast<unsigned long>(std::labs(scale)));
    mpq_class q;
    if (scale >= 0) {
        q = mpq_class(num * pow10);
    } else {
        q = mpq_class(num, pow10);
    }
    q.canonicalize();
    return negative ? mpq_class(-q) : q;
}

std::optional<Dyadic> Dyadic::from_decimal(std::string_view text) {
    mpq_class q = parse_decimal_rational(text);
    const mpz_class& den = q.get_den();
    const auto tz = mpz_scan1(den.get_mpz_t(), 0);
    mpz_class odd;
    mpz_fdiv_q_2exp(odd.get_mpz_t(), den.get_mpz_t(), tz);
    if (odd != 1) {
        return std::nullopt;
    }
    return Dyadic(q.get_num(), -static_cast<long>(tz));
}

Dyadic& Dyadic::operator+=(const Dyadic& other) {
    if (other.is_zero()) {
        return *this;
    }
    if (is_zero()) {
        return *this = other;
    }
    if (exponent_ <= other.exponent_) {
        mpz_class shifted;
        mpz_mul_2exp(shifted.get_mpz_t(), other.mantissa_.get_mpz_t(),
                     static_cast<mp_bitcnt_t>(other.exponent_ - exponent_));
        mantissa_ += shifted;
    } else {
        mpz_mul_2exp(mantissa_.get_mpz_t(), mantissa_.get_mpz_t(),
                     static_cast<mp_bitcnt_t>(exponent_ - other.exponent_));
        mantissa_ += other.mantissa_;
        exponent_ = other.exponent_;
    }
    canonicalize();
    return *this;
}

Dyadic& Dyadic::operator-=(const Dyadic& other) { return *this += -other; }

Dyadic& Dyadic::operator*=(const Dyadic& other) {
    mantissa_ *= other.mantissa_;
    exponent_ += other.exponent_;
    canonicalize();
    return *this;
}

Dyadic Dyadic::scaled(long k) const {
    if (is_zero()) {
        return {};
    }
    Dyadic r = *this;
    r.exponent_ += k;
    return r;
}

std::strong_ordering operator<=>(const Dyadic& a, const Dyadic& b) {
    const int c = (a - b).sign();
    if (c < 0) {
        return std::strong_ordering::less;
    }
    if (c > 0) {
        return std::strong_ordering::greater;
    }
    return std::strong_ordering::equal;
}

Dyadic min(const Dyadic& a, const Dyadic& b) { return b < a ? b : a; }
Dyadic max(const Dyadic& a, const Dyadic& b) { return a < b ? b : a; }

mpq_class Dyadic::to_rational() const {
    mpq_class q(mantissa_);
    if (exponent_ >= 0) {
        mpq_mul_2exp(q.get_mpq_t(), q.get_mpq_t(), static_cast<mp_bitcnt_t>(exponent_));
    } else {
        mpq_div_2exp(q.get_mpq_t(), q.get_mpq_t(), static_cast<mp_bitcnt_t>(-exponent_));
    }
    return q;
}

namespace {

// Truncation of the mantissa toward zero, and whether it was exact.
std::pair<double, bool> truncated(const mpz_class& m, long e) {
    const double d = mpz_get_d(m.get_mpz_t());
    mpz_class back;
    mpz_set_d(back.get_mpz_t(), d);
    return {std::ldexp(d, static_cast<int>(e)), back == m};
}

}  // namespace

double Dyadic::to_double() const { return to_rational().get_d(); }

double Dyadic::to_double_down() const {
    auto [d, exact] = truncated(mantissa_, exponent_);
    if (exact || d < 0) {
        return exact ? d : std::nextafter(d, -std::numeric_limits<double>::infinity());
    }
    return d;
}

double Dyadic::to_double_up() const {
    auto [d, exact] = truncated(mantissa_, exponent_);
    if (exact || d > 0) {
        return exact ? d : std::nextafter(d, std::numeric_limits<double>::infinity());
    }
    return d;
}

std::string Dyadic::to_decimal() const {
    if (exponent_ >= 0) {
        mpz_class v;
        mpz_mul_2exp(v.get_mpz_t(), mantissa_.get_mpz_t(), static_cast<mp_bitcnt_t>(exponent_));
        return v.get_str();
    }
    // m / 2^k == m * 5^k / 10^k
    const auto k = static_cast<unsigned long>(-exponent_);
    mpz_class p5;
    mpz_ui_pow_ui(p5.get_mpz_t(), 5, k);
    mpz_class v = abs(mantissa_) * p5;
    std::string digits = v.get_str();
    if (digits.size() <= k) {
        digits.insert(0, k + 1 - digits.size(), '0');
    }
    std::string out = digits.substr(0, digits.size() - k) + "." + digits.substr(digits.size() - k);
    return mantissa_ < 0 ? "-" + out : out;
}

}  // namespace curvearr
