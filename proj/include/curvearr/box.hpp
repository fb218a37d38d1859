#pragma once

#include <gmpxx.h>

#include <array>
#include <iosfwd>
#include <string>

#include "curvearr/dyadic.hpp"
#include "curvearr/errors.hpp"
#include "curvearr/interval.hpp"

namespace curvearr {

enum class Alignment { Aligned, HalfAligned, Free };
enum class Axis { X = 0, Y = 1 };
enum class Side { Minus = 0, Plus = 1 };

const char* to_string(Alignment a);

/// Axis-parallel closed box [x0,x1] x [y0,y1] with exact dyadic corners.
/// A degenerate box (x0 == x1 or y0 == y1) represents a face.
struct Box2 {
    Dyadic x0;
    Dyadic y0;
    Dyadic x1;
    Dyadic y1;
    int depth = 0;
    Alignment alignment = Alignment::Free;

    Box2() = default;
    Box2(Dyadic ax0, Dyadic ay0, Dyadic ax1, Dyadic ay1, int d = 0, Alignment al = Alignment::Free);

    Dyadic width_x() const { return x1 - x0; }
    Dyadic width_y() const { return y1 - y0; }
    /// w(B): the larger side length.
    Dyadic width() const;
    Dyadic center_x() const { return (x0 + x1).half(); }
    Dyadic center_y() const { return (y0 + y1).half(); }

    Interval ix() const { return Interval::hull(x0, x1); }
    Interval iy() const { return Interval::hull(y0, y1); }

    bool contains(const Dyadic& x, const Dyadic& y) const { return x0 <= x && x <= x1 && y0 <= y && y <= y1; }
    bool contains(const Box2& o) const { return x0 <= o.x0 && o.x1 <= x1 && y0 <= o.y0 && o.y1 <= y1; }
    /// Open interiors meet.
    bool interiors_meet(const Box2& o) const { return x0 < o.x1 && o.x0 < x1 && y0 < o.y1 && o.y0 < y1; }
    /// Closed boxes meet.
    bool meets(const Box2& o) const { return x0 <= o.x1 && o.x0 <= x1 && y0 <= o.y1 && o.y0 <= y1; }

    RectText rect_text() const { return {x0.to_decimal(), y0.to_decimal(), x1.to_decimal(), y1.to_decimal()}; }

    friend bool operator==(const Box2& a, const Box2& b) {
        return a.x0 == b.x0 && a.y0 == b.y0 && a.x1 == b.x1 && a.y1 == b.y1;
    }
};

/// lambda*B about the same center. The alignment of a scaled aligned box is half-aligned
/// for lambda in {2, 1/2} and free otherwise. Throws DomainError if a corner is not dyadic.
Box2 box_scale(const Box2& b, const mpq_class& lambda);
/// Face B_i^- or B_i^+ as a degenerate box.
Box2 box_face(const Box2& b, Axis axis, Side side);
/// Quadrants in the order SW, SE, NW, NE.
std::array<Box2, 4> box_split(const Box2& b);
/// Smallest box containing both.
Box2 box_hull(const Box2& a, const Box2& b);
/// Diagonal length as an upper-rounded double.
double box_diagonal(const Box2& b);

std::ostream& operator<<(std::ostream& os, const Box2& b);

}  // namespace curvearr
