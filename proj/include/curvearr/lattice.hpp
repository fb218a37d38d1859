#pragma once

#include <cstdint>
#include <tuple>

#include "curvearr/box.hpp"

namespace curvearr {

/// Square in integer lattice coordinates. The region of interest is [0, 2^kLatticeBits]^2.
struct LRect {
    std::int64_t x0 = 0;
    std::int64_t y0 = 0;
    std::int64_t x1 = 0;
    std::int64_t y1 = 0;

    std::int64_t side() const { return x1 - x0; }
    std::int64_t cx2() const { return x0 + x1; }  // twice the center
    std::int64_t cy2() const { return y0 + y1; }

    bool contains(const LRect& o) const { return x0 <= o.x0 && o.x1 <= x1 && y0 <= o.y0 && o.y1 <= y1; }
    bool interiors_meet(const LRect& o) const { return x0 < o.x1 && o.x0 < x1 && y0 < o.y1 && o.y0 < y1; }
    /// Closed squares meet.
    bool meets(const LRect& o) const { return x0 <= o.x1 && o.x0 <= x1 && y0 <= o.y1 && o.y0 <= y1; }
    /// Contains the point given in doubled coordinates.
    bool contains2(std::int64_t px2, std::int64_t py2) const {
        return 2 * x0 <= px2 && px2 <= 2 * x1 && 2 * y0 <= py2 && py2 <= 2 * y1;
    }

    friend bool operator==(const LRect&, const LRect&) = default;
    friend bool operator<(const LRect& a, const LRect& b) {
        return std::tie(a.y0, a.x0, a.y1, a.x1) < std::tie(b.y0, b.x0, b.y1, b.x1);
    }
};

constexpr int kLatticeBits = 58;
constexpr std::int64_t kLatticeSide = std::int64_t{1} << kLatticeBits;

/// Depth of a lattice square with the given side (side must be a power of two).
int depth_of_side(std::int64_t side);
/// lambda * r about the same center, for lambda in {1/2, 2, 3, 4, 6, 8} (num/den).
LRect scale(const LRect& r, int num, int den = 1);

/// Maps lattice coordinates to exact real coordinates of the region of interest.
class Frame {
public:
    Frame() = default;
    explicit Frame(const Box2& roi);

    const Box2& roi() const { return roi_; }
    Dyadic x(std::int64_t k) const;
    Dyadic y(std::int64_t k) const;
    /// Coordinates given doubled (k/2).
    Dyadic x2(std::int64_t k2) const;
    Dyadic y2(std::int64_t k2) const;
    /// Coordinates of a dyadic lattice position.
    Dyadic xd(const Dyadic& k) const { return roi_.x0 + ux_ * k; }
    Dyadic yd(const Dyadic& k) const { return roi_.y0 + uy_ * k; }
    Box2 box(const LRect& r) const;
    /// Root box of the lattice.
    static LRect root() { return {0, 0, kLatticeSide, kLatticeSide}; }

private:
    Box2 roi_;
    Dyadic ux_;  // real width of one lattice unit in x
    Dyadic uy_;
};

}  // namespace curvearr
