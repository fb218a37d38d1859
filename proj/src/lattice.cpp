#include "curvearr/lattice.hpp"

#include <bit>

namespace curvearr {

int depth_of_side(std::int64_t side) {
    if (side <= 0 || !std::has_single_bit(static_cast<std::uint64_t>(side))) {
        throw InternalError("lattice side is not a power of two");
    }
    return kLatticeBits - std::countr_zero(static_cast<std::uint64_t>(side));
}

LRect scale(const LRect& r, int num, int den) {
    const std::int64_t side = r.side() * num;
    if (side % den != 0) {
        throw InternalError("lattice scale leaves the lattice");
    }
    const std::int64_t ns = side / den;
    const std::int64_t dx = r.cx2() - ns;
    const std::int64_t dy = r.cy2() - ns;
    if (dx % 2 != 0 || dy % 2 != 0) {
        throw InternalError("lattice scale leaves the lattice");
    }
    return {dx / 2, dy / 2, dx / 2 + ns, dy / 2 + ns};
}

Frame::Frame(const Box2& roi)
    : roi_(roi), ux_(roi.width_x().scaled(-kLatticeBits)), uy_(roi.width_y().scaled(-kLatticeBits)) {}

Dyadic Frame::x(std::int64_t k) const { return roi_.x0 + ux_ * Dyadic(static_cast<long>(k)); }
Dyadic Frame::y(std::int64_t k) const { return roi_.y0 + uy_ * Dyadic(static_cast<long>(k)); }
Dyadic Frame::x2(std::int64_t k2) const { return roi_.x0 + ux_.half() * Dyadic(static_cast<long>(k2)); }
Dyadic Frame::y2(std::int64_t k2) const { return roi_.y0 + uy_.half() * Dyadic(static_cast<long>(k2)); }

namespace {

std::int64_t mod(std::int64_t a, std::int64_t m) { return ((a % m) + m) % m; }

}  // namespace

Box2 Frame::box(const LRect& r) const {
    const std::int64_t s = r.side();
    Alignment al = Alignment::Free;
    if (mod(r.x0, s) == 0 && mod(r.y0, s) == 0) {
        al = Alignment::Aligned;
    } else if (s >= 2 && mod(r.x0, s / 2) == 0 && mod(r.y0, s / 2) == 0) {
        al = Alignment::HalfAligned;
    }
    int depth = 0;
    if (s > 0 && std::has_single_bit(static_cast<std::uint64_t>(s))) {
        depth = std::max(0, depth_of_side(s));
    }
    return {x(r.x0), y(r.y0), x(r.x1), y(r.y1), depth, al};
}

}  // namespace curvearr
