#include "curvearr/predicates.hpp"

#include <cmath>

namespace curvearr {

const char* to_string(BoxClass c) {
    switch (c) {
        case BoxClass::Unresolved:
            return "unresolved";
        case BoxClass::Excluded:
            return "excluded";
        case BoxClass::FCandidate:
            return "f";
        case BoxClass::GCandidate:
            return "g";
        case BoxClass::FGCandidate:
            return "fg";
    }
    return "?";
}

bool c0(const CurveSystem& sys, Curve h, const Box2& b) {
    try {
        return !sys.box(value_fn(h), b).contains_zero();
    } catch (const DomainError&) {
        return false;
    }
}

namespace {

bool gradient_test(const CurveSystem& sys, Curve h, const Box2& b, Interval (*square)(const Interval&)) {
    try {
        const Interval s = square(sys.box(dx_fn(h), b)) + square(sys.box(dy_fn(h), b));
        return !s.contains_zero();
    } catch (const DomainError&) {
        return false;
    }
}

}  // namespace

bool c1(const CurveSystem& sys, Curve h, const Box2& b) { return gradient_test(sys, h, b, iv_square); }

bool c1_tight(const CurveSystem& sys, Curve h, const Box2& b) {
    return gradient_test(sys, h, b, iv_square_tight);
}

BoxFlags box_flags(const CurveSystem& sys, const Box2& b) {
    BoxFlags fl;
    fl.f0 = c0(sys, Curve::F, b);
    fl.f1 = !fl.f0 && c1(sys, Curve::F, b);
    fl.g0 = c0(sys, Curve::G, b);
    fl.g1 = !fl.g0 && c1(sys, Curve::G, b);
    return fl;
}

BoxClass class_of(const BoxFlags& fl) {
    if (!((fl.f0 || fl.f1) && (fl.g0 || fl.g1))) {
        return BoxClass::Unresolved;
    }
    if (fl.f0 && fl.g0) {
        return BoxClass::Excluded;
    }
    if (fl.g0) {
        return BoxClass::FCandidate;
    }
    if (fl.f0) {
        return BoxClass::GCandidate;
    }
    return BoxClass::FGCandidate;
}

BoxClass classify(const CurveSystem& sys, const Box2& b) { return class_of(box_flags(sys, b)); }

bool jc(const CurveSystem& sys, const Box2& b) {
    try {
        const Interval det = sys.box(Fn::FX, b) * sys.box(Fn::GY, b) - sys.box(Fn::FY, b) * sys.box(Fn::GX, b);
        return !det.contains_zero();
    } catch (const DomainError&) {
        return false;
    }
}

namespace {

Interval combine(const std::array<double, 2>& row, const Interval& f, const Interval& g) {
    return Interval(row[0]) * f + Interval(row[1]) * g;
}

// Definite sign of component `row` on one face, following the effective test:
// sign at the face center, and |value| > mag(cross partial on face) * w_other.
int face_sign(const CurveSystem& sys, const Box2& face, const Dyadic& cx, const Dyadic& cy,
              const std::array<double, 2>& row, Fn f_cross, Fn g_cross, const Dyadic& w_other) {
    const Interval v = combine(row, sys.point(Fn::F, cx, cy), sys.point(Fn::G, cx, cy));
    const int s = v.certain_sign();
    if (s == 0) {
        return 0;
    }
    const Interval cross = combine(row, sys.box(f_cross, face), sys.box(g_cross, face));
    const double bound = rounding::mul_up(iv_mag(cross), w_other.to_double_up());
    return iv_mig(v) > bound ? s : 0;
}

}  // namespace

std::optional<MKCertificate> miranda(const CurveSystem& sys, const Box2& b, const Mat2& rows) {
    MKCertificate cert;
    cert.box = b;
    cert.cx = b.center_x();
    cert.cy = b.center_y();
    cert.y = rows;
    try {
        const Box2 left = box_face(b, Axis::X, Side::Minus);
        const Box2 right = box_face(b, Axis::X, Side::Plus);
        const Box2 bottom = box_face(b, Axis::Y, Side::Minus);
        const Box2 top = box_face(b, Axis::Y, Side::Plus);
        // Component 0 on the x-faces; its cross partial is d/dy.
        cert.sign_left = face_sign(sys, left, b.x0, cert.cy, rows[0], Fn::FY, Fn::GY, b.width_y());
        if (cert.sign_left == 0) {
            return std::nullopt;
        }
        cert.sign_right = face_sign(sys, right, b.x1, cert.cy, rows[0], Fn::FY, Fn::GY, b.width_y());
        if (cert.sign_right != -cert.sign_left) {
            return std::nullopt;
        }
        cert.sign_bottom = face_sign(sys, bottom, cert.cx, b.y0, rows[1], Fn::FX, Fn::GX, b.width_x());
        if (cert.sign_bottom == 0) {
            return std::nullopt;
        }
        cert.sign_top = face_sign(sys, top, cert.cx, b.y1, rows[1], Fn::FX, Fn::GX, b.width_x());
        if (cert.sign_top != -cert.sign_bottom) {
            return std::nullopt;
        }
    } catch (const DomainError&) {
        return std::nullopt;
    }
    return cert;
}

bool miranda(const CurveSystem& sys, const Box2& b) {
    const Mat2 identity{{{1.0, 0.0}, {0.0, 1.0}}};
    return miranda(sys, b, identity).has_value();
}

std::optional<Mat2> preconditioner(const CurveSystem& sys, const Box2& b) {
    const Dyadic cx = b.center_x();
    const Dyadic cy = b.center_y();
    double j[2][2];
    try {
        j[0][0] = sys.point(Fn::FX, cx, cy).mid();
        j[0][1] = sys.point(Fn::FY, cx, cy).mid();
        j[1][0] = sys.point(Fn::GX, cx, cy).mid();
        j[1][1] = sys.point(Fn::GY, cx, cy).mid();
    } catch (const DomainError&) {
        return std::nullopt;
    }
    const double det = j[0][0] * j[1][1] - j[0][1] * j[1][0];
    if (!std::isfinite(det) || det == 0.0) {
        return std::nullopt;
    }
    Mat2 y{{{j[1][1] / det, -j[0][1] / det}, {-j[1][0] / det, j[0][0] / det}}};
    double residual = 0.0;
    for (int r = 0; r < 2; ++r) {
        for (int c = 0; c < 2; ++c) {
            const double v = y[r][0] * j[0][c] + y[r][1] * j[1][c] - (r == c ? 1.0 : 0.0);
            residual = std::max(residual, std::fabs(v));
        }
    }
    if (!(residual < 1e-8)) {
        // Exact inverse of the rounded Jacobian, then rounded to doubles.
        const mpq_class a(j[0][0]), bq(j[0][1]), c(j[1][0]), d(j[1][1]);
        const mpq_class dq = a * d - bq * c;
        if (dq == 0) {
            return std::nullopt;
        }
        y = Mat2{{{mpq_class(d / dq).get_d(), mpq_class(-bq / dq).get_d()},
                  {mpq_class(-c / dq).get_d(), mpq_class(a / dq).get_d()}}};
    }
    for (const auto& row : y) {
        for (double v : row) {
            if (!std::isfinite(v)) {
                return std::nullopt;
            }
        }
    }
    return y;
}

std::optional<MKCertificate> mk_test(const CurveSystem& sys, const Box2& b) {
    const auto y = preconditioner(sys, b);
    if (!y) {
        return std::nullopt;
    }
    return miranda(sys, b, *y);
}

}  // namespace curvearr
