#include "curvearr/box.hpp"

#include <cmath>
#include <optional>
#include <ostream>

namespace curvearr {

const char* to_string(Alignment a) {
    switch (a) {
        case Alignment::Aligned:
            return "aligned";
        case Alignment::HalfAligned:
            return "half-aligned";
        case Alignment::Free:
            break;
    }
    return "free";
}

Box2::Box2(Dyadic ax0, Dyadic ay0, Dyadic ax1, Dyadic ay1, int d, Alignment al)
    : x0(std::move(ax0)), y0(std::move(ay0)), x1(std::move(ax1)), y1(std::move(ay1)), depth(d), alignment(al) {}

Dyadic Box2::width() const { return max(width_x(), width_y()); }

namespace {

std::optional<Dyadic> rational_to_dyadic(const mpq_class& q) {
    const mpz_class& den = q.get_den();
    const auto tz = mpz_scan1(den.get_mpz_t(), 0);
    mpz_class odd;
    mpz_fdiv_q_2exp(odd.get_mpz_t(), den.get_mpz_t(), tz);
    if (odd != 1) {
        return std::nullopt;
    }
    return Dyadic(q.get_num(), -static_cast<long>(tz));
}

}  // namespace

Box2 box_scale(const Box2& b, const mpq_class& lambda) {
    if (lambda <= 0) {
        throw DomainError("box_scale: scale factor must be positive");
    }
    const auto hx = rational_to_dyadic(lambda * b.width_x().to_rational() / 2);
    const auto hy = rational_to_dyadic(lambda * b.width_y().to_rational() / 2);
    if (!hx || !hy) {
        throw DomainError("box_scale: scaled box has non-dyadic corners");
    }
    const Dyadic cx = b.center_x();
    const Dyadic cy = b.center_y();
    Alignment al = Alignment::Free;
    if (lambda == 1) {
        al = b.alignment;
    } else if (b.alignment == Alignment::Aligned && (lambda == 2 || lambda == mpq_class(1, 2))) {
        al = Alignment::HalfAligned;
    }
    return {cx - *hx, cy - *hy, cx + *hx, cy + *hy, b.depth, al};
}

Box2 box_face(const Box2& b, Axis axis, Side side) {
    Box2 f = b;
    if (axis == Axis::X) {
        f.x0 = f.x1 = side == Side::Plus ? b.x1 : b.x0;
    } else {
        f.y0 = f.y1 = side == Side::Plus ? b.y1 : b.y0;
    }
    f.alignment = Alignment::Free;
    return f;
}

std::array<Box2, 4> box_split(const Box2& b) {
    const Dyadic cx = b.center_x();
    const Dyadic cy = b.center_y();
    const int d = b.depth + 1;
    // Quadrants of an aligned box are tree nodes; quadrants of a half-aligned box are again
    // unions of half-width aligned boxes.
    const Alignment al = b.alignment;
    return {Box2(b.x0, b.y0, cx, cy, d, al), Box2(cx, b.y0, b.x1, cy, d, al), Box2(b.x0, cy, cx, b.y1, d, al),
            Box2(cx, cy, b.x1, b.y1, d, al)};
}

Box2 box_hull(const Box2& a, const Box2& b) {
    return {min(a.x0, b.x0), min(a.y0, b.y0), max(a.x1, b.x1), max(a.y1, b.y1), std::min(a.depth, b.depth),
            Alignment::Free};
}

double box_diagonal(const Box2& b) {
    const double wx = b.width_x().to_double_up();
    const double wy = b.width_y().to_double_up();
    const double d = std::sqrt(rounding::add_up(rounding::mul_up(wx, wx), rounding::mul_up(wy, wy)));
    return std::nextafter(d, INFINITY);
}

std::ostream& operator<<(std::ostream& os, const Box2& b) {
    return os << "[" << b.x0.to_decimal() << "," << b.x1.to_decimal() << "]x[" << b.y0.to_decimal() << ","
              << b.y1.to_decimal() << "]";
}

}  // namespace curvearr
