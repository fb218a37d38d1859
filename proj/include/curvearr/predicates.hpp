#pragma once

#include <array>
#include <optional>
#include <string>

#include "curvearr/box.hpp"
#include "curvearr/curve_system.hpp"

namespace curvearr {

enum class BoxClass { Unresolved, Excluded, FCandidate, GCandidate, FGCandidate };

const char* to_string(BoxClass c);

/// The four one-sided box predicates. Each flag is a certificate when true.
struct BoxFlags {
    bool f0 = false;  // C0 for f
    bool f1 = false;  // C1 for f
    bool g0 = false;
    bool g1 = false;

    /// Flags that hold on a box also hold on every sub-box.
    BoxFlags operator|(const BoxFlags& o) const { return {f0 || o.f0, f1 || o.f1, g0 || o.g0, g1 || o.g1}; }
    friend bool operator==(const BoxFlags&, const BoxFlags&) = default;
};

/// 0 not in the inclusion of h on b.
bool c0(const CurveSystem& sys, Curve h, const Box2& b);
/// 0 not in sq(h_x(b)) + sq(h_y(b)), with the self-product square.
bool c1(const CurveSystem& sys, Curve h, const Box2& b);
/// Same predicate with the tight square; for comparison only.
bool c1_tight(const CurveSystem& sys, Curve h, const Box2& b);

BoxFlags box_flags(const CurveSystem& sys, const Box2& b);
BoxClass class_of(const BoxFlags& fl);
BoxClass classify(const CurveSystem& sys, const Box2& b);

/// 0 not in fx*gy - fy*gx over b. Domain errors count as failure.
bool jc(const CurveSystem& sys, const Box2& b);

/// Rows of a 2x2 matrix applied to (f, g).
using Mat2 = std::array<std::array<double, 2>, 2>;

/// Successful effective Miranda test on the system (row0.(f,g), row1.(f,g)).
/// Component 0 has a definite sign on the x-faces (left/right), component 1 on the y-faces.
struct MKCertificate {
    Box2 box;
    Dyadic cx;
    Dyadic cy;
    Mat2 y{};
    int sign_left = 0;    // sign of component 0 on the face x = x0
    int sign_right = 0;   // ... on x = x1
    int sign_bottom = 0;  // sign of component 1 on y = y0
    int sign_top = 0;     // ... on y = y1
    bool singular = false;

    /// Row used on a face: 0 for left/right, 1 for bottom/top.
    const std::array<double, 2>& row_for(Axis face_axis) const { return y[face_axis == Axis::X ? 0 : 1]; }
};

/// Effective Miranda test for the given linear combination of (f, g).
std::optional<MKCertificate> miranda(const CurveSystem& sys, const Box2& b, const Mat2& rows);
/// Plain Miranda test (identity combination).
bool miranda(const CurveSystem& sys, const Box2& b);

/// Preconditioner Y ~ J_F(cen b)^{-1}; nullopt if the Jacobian at the center is singular.
std::optional<Mat2> preconditioner(const CurveSystem& sys, const Box2& b);

/// Miranda test on J_F(m)^{-1} F, m = cen(b).
std::optional<MKCertificate> mk_test(const CurveSystem& sys, const Box2& b);

}  // namespace curvearr
