#include "curvearr/arrange.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <deque>
#include <numeric>
#include <tuple>

namespace curvearr {

const char* to_string(VertexKind k) {
    switch (k) {
        case VertexKind::F:
            return "f";
        case VertexKind::G:
            return "g";
        case VertexKind::Root:
            return "root";
        case VertexKind::Bend:
            return "bend";
    }
    return "?";
}

const char* to_string(EdgeLabel l) { return l == EdgeLabel::S ? "S" : "T"; }

void Pslg::canonicalize() {
    std::vector<int> idx(vertices.size());
    std::iota(idx.begin(), idx.end(), 0);
    std::stable_sort(idx.begin(), idx.end(), [&](int a, int b) {
        const PVertex& p = vertices[static_cast<std::size_t>(a)];
        const PVertex& q = vertices[static_cast<std::size_t>(b)];
        if (p.y != q.y) {
            return p.y < q.y;
        }
        return p.x < q.x;
    });
    std::vector<int> rank(vertices.size());
    std::vector<PVertex> sorted;
    sorted.reserve(vertices.size());
    for (std::size_t i = 0; i < idx.size(); ++i) {
        rank[static_cast<std::size_t>(idx[i])] = static_cast<int>(i);
        sorted.push_back(vertices[static_cast<std::size_t>(idx[i])]);
    }
    vertices = std::move(sorted);
    for (PEdge& e : edges) {
        const int u = rank[static_cast<std::size_t>(e.u)];
        const int v = rank[static_cast<std::size_t>(e.v)];
        e.u = std::min(u, v);
        e.v = std::max(u, v);
    }
    std::sort(edges.begin(), edges.end(), [](const PEdge& a, const PEdge& b) {
        return std::tie(a.u, a.v, a.label) < std::tie(b.u, b.v, b.label);
    });
}

namespace {

int sgn(double v) { return v > 0 ? 1 : -1; }

bool increasing(Dir d) { return d == Dir::South || d == Dir::East; }

bool horizontal(Dir d) { return d == Dir::South || d == Dir::North; }

Dir opposite(Dir d) { return static_cast<Dir>((static_cast<int>(d) + 2) % 4); }

int log2_exact(std::int64_t v) { return std::countr_zero(static_cast<std::uint64_t>(v)); }

}  // namespace

Order order_on_edge(const MKCertificate& cert, Dir side, int s_f0, int s_g0) {
    int sigma = 0;
    switch (side) {
        case Dir::West:
            sigma = cert.sign_left;
            break;
        case Dir::East:
            sigma = cert.sign_right;
            break;
        case Dir::South:
            sigma = cert.sign_bottom;
            break;
        case Dir::North:
            sigma = cert.sign_top;
            break;
    }
    const auto& row = cert.row_for(horizontal(side) ? Axis::Y : Axis::X);
    if (row[0] == 0.0 || row[1] == 0.0) {
        throw InternalError("root box side carries both curves but the certificate row has a zero coefficient");
    }
    if (sigma == 0) {
        throw InternalError("certificate has no definite sign on a root box side");
    }
    // a*f + b*g keeps the sign sigma on the side: f has sign sigma*sgn(a) where g vanishes,
    // and g has sign sigma*sgn(b) where f vanishes.
    const bool g_first = sigma * sgn(row[0]) == s_f0;
    const bool g_first_b = sigma * sgn(row[1]) == -s_g0;
    if (g_first != g_first_b) {
        throw InternalError("certificate rows disagree on the order of the curves on a root box side");
    }
    return g_first ? Order::GFirst : Order::FFirst;
}

double vertex_parameter(double v0, double v1) {
    double t = v0 / (v0 - v1);
    if (!std::isfinite(t)) {
        t = 0.5;
    }
    return std::clamp(t, 0.25, 0.75);
}

PatternCase classify_pattern(const std::array<int, 4>& f_corners, const std::array<int, 4>& g_corners,
                             int shared_segments) {
    PatternCase p;
    bool same = true;
    for (std::size_t i = 1; i < 4; ++i) {
        same = same && f_corners[i] * g_corners[i] == f_corners[0] * g_corners[0];
    }
    p.group = same ? 2 : 3;
    p.variant = static_cast<char>('a' + std::clamp(shared_segments, 0, 2));
    return p;
}

Arranger::Arranger(const CurveSystem& sys, SubdivTree& tree, Isolator& iso, std::vector<RootRecord> roots)
    : sys_(sys), tree_(tree), iso_(iso), roots_(std::move(roots)) {
    tree_.on_std_root = [this](int id) {
        // C1 for both curves holds on all of 8B.
        TreeNode& n = tree_.node_mut(id);
        n.flags = BoxFlags{false, true, false, true};
        iso_.classify_node(id);
    };
}

StageEvent Arranger::event(const std::string& stage) const {
    StageEvent e;
    e.stage = stage;
    e.q0 = iso_.leaves_of(BoxClass::Excluded).size();
    e.qf = iso_.leaves_of(BoxClass::FCandidate).size();
    e.qg = iso_.leaves_of(BoxClass::GCandidate).size();
    e.qfg = iso_.leaves_of(BoxClass::FGCandidate).size();
    e.qroot = roots_.size();
    return e;
}

void Arranger::stage5_prune() {
    for (const RootRecord& rr : roots_) {
        tree_.prune_region(tree_.add_region(rr.b));
    }
    if (on_event) {
        on_event(event("V"));
    }
}

void Arranger::stage6_external_conform() {
    for (int r = 0; r < static_cast<int>(tree_.regions().size()); ++r) {
        tree_.add_conceptual(r);
    }
    tree_.balance(tree_.active_cells());
    tree_.finish_external_conform();
    if (on_event) {
        on_event(event("VI"));
    }
}

void Arranger::stage7_internal_conform() {
    for (int r = 0; r < static_cast<int>(tree_.regions().size()); ++r) {
        tree_.install_std(r);
    }
    tree_.balance(tree_.active_cells());
    if (tree_.max_depth_gap() > 1) {
        throw InternalError("subdivision is not balanced after conforming");
    }
    if (on_event) {
        on_event(event("VII"));
    }
}

int Arranger::sign_at(std::int64_t ax, std::int64_t ay, Curve c) const {
    const auto key = std::make_pair(ax, ay);
    auto it = corner_signs_.find(key);
    if (it == corner_signs_.end()) {
        const Dyadic x = tree_.frame().x(ax);
        const Dyadic y = tree_.frame().y(ay);
        it = corner_signs_.emplace(key, std::array<int, 2>{sys_.sign(Fn::F, x, y), sys_.sign(Fn::G, x, y)}).first;
    }
    return it->second[static_cast<std::size_t>(c)];
}

int Arranger::sign_at(const Dyadic& lx, const Dyadic& ly, Curve c) const {
    return sys_.sign(value_fn(c), tree_.frame().xd(lx), tree_.frame().yd(ly));
}

int Arranger::segment_index(const SideSegment& s) {
    const SegKey key{s.ax0, s.ay0, s.ax1, s.ay1};
    if (const auto it = seg_index_.find(key); it != seg_index_.end()) {
        return it->second;
    }
    Segment seg;
    seg.key = key;
    for (Curve c : {Curve::F, Curve::G}) {
        seg.s0[static_cast<std::size_t>(c)] = sign_at(s.ax0, s.ay0, c);
        seg.s1[static_cast<std::size_t>(c)] = sign_at(s.ax1, s.ay1, c);
    }
    seg.boundary = s.neighbor < 0;
    segs_.push_back(seg);
    seg_cells_.emplace_back();
    const int idx = static_cast<int>(segs_.size()) - 1;
    seg_index_.emplace(key, idx);
    return idx;
}

std::pair<Dyadic, Dyadic> Arranger::lattice_point(const Segment& s, const Dyadic& t) const {
    const Dyadic x0(static_cast<long>(s.key.x0));
    const Dyadic y0(static_cast<long>(s.key.y0));
    return {x0 + (Dyadic(static_cast<long>(s.key.x1)) - x0) * t, y0 + (Dyadic(static_cast<long>(s.key.y1)) - y0) * t};
}

double Arranger::interp(const Segment& s, Curve h) const {
    const Fn fn = value_fn(h);
    const Frame& fr = tree_.frame();
    const double v0 = sys_.point(fn, fr.x(s.key.x0), fr.y(s.key.y0)).mid();
    const double v1 = sys_.point(fn, fr.x(s.key.x1), fr.y(s.key.y1)).mid();
    return vertex_parameter(v0, v1);
}

std::vector<Arranger::VRef> Arranger::boundary_sequence(const Cell& c, unsigned assignment) const {
    std::vector<VRef> out;
    for (std::size_t i = 0; i < c.segs.size(); ++i) {
        const int si = c.segs[i];
        const Segment& s = segs_[static_cast<std::size_t>(si)];
        std::vector<VRef> local;
        if (s.doubly()) {
            const auto k = static_cast<unsigned>(std::find(c.doubly.begin(), c.doubly.end(), si) - c.doubly.begin());
            const bool g_first = ((assignment >> k) & 1U) != 0;
            local = g_first ? std::vector<VRef>{{si, Curve::G}, {si, Curve::F}}
                            : std::vector<VRef>{{si, Curve::F}, {si, Curve::G}};
        } else if (s.has(Curve::F)) {
            local = {{si, Curve::F}};
        } else if (s.has(Curve::G)) {
            local = {{si, Curve::G}};
        }
        if (!increasing(c.dirs[i])) {
            std::reverse(local.begin(), local.end());
        }
        out.insert(out.end(), local.begin(), local.end());
    }
    return out;
}

std::vector<std::pair<Arranger::VRef, Arranger::VRef>> Arranger::pv_pairs(const Cell& c, Curve h) const {
    struct V {
        VRef ref;
        Dir dir;
        std::int64_t lo, hi;  // range of the segment along the sweep axis
        double est;           // interpolated position along the sweep axis
    };
    std::vector<VRef> all;
    std::vector<Dir> dirs;
    for (std::size_t i = 0; i < c.segs.size(); ++i) {
        if (segs_[static_cast<std::size_t>(c.segs[i])].has(h)) {
            all.emplace_back(c.segs[i], h);
            dirs.push_back(c.dirs[i]);
        }
    }
    if (all.empty()) {
        return {};
    }
    if (all.size() % 2 != 0) {
        throw InternalError("odd number of crossings on the boundary of a box");
    }
    if (all.size() == 2) {
        return {{all[0], all[1]}};
    }
    const Box2 b = tree_.box(c.node);
    const Interval ix = sys_.box(dx_fn(h), b);
    const Interval iy = sys_.box(dy_fn(h), b);
    // The curve is a graph over the sweep axis: h is monotone across it with sign s.
    bool sweep_y = false;
    int s = 0;
    if (!ix.contains_zero()) {
        sweep_y = true;
        s = ix.lo > 0 ? 1 : -1;
    } else if (!iy.contains_zero()) {
        s = iy.lo > 0 ? 1 : -1;
    } else {
        throw InternalError("box with several crossings has no monotone direction");
    }
    const LRect& r = tree_.node(c.node).r;
    const Dir low_side = sweep_y ? Dir::West : Dir::South;
    const Dir high_side = sweep_y ? Dir::East : Dir::North;
    const Dir start_side = sweep_y ? Dir::South : Dir::West;
    std::vector<V> low, high, start, end;
    for (std::size_t i = 0; i < all.size(); ++i) {
        const Segment& seg = segs_[static_cast<std::size_t>(all[i].first)];
        V v{all[i], dirs[i], 0, 0, 0.0};
        v.lo = sweep_y ? seg.key.y0 : seg.key.x0;
        v.hi = sweep_y ? seg.key.y1 : seg.key.x1;
        v.est = static_cast<double>(v.lo) + interp(seg, h) * static_cast<double>(v.hi - v.lo);
        if (v.dir == low_side) {
            low.push_back(v);
        } else if (v.dir == high_side) {
            high.push_back(v);
        } else if (v.dir == start_side) {
            start.push_back(v);
        } else {
            end.push_back(v);
        }
    }
    if (start.size() > 1 || end.size() > 1) {
        throw InternalError("monotone curve crosses a box side twice");
    }
    auto by_lo = [](const V& a, const V& b) { return a.lo < b.lo; };
    std::sort(low.begin(), low.end(), by_lo);
    std::sort(high.begin(), high.end(), by_lo);
    // Signs of h on the low and high sides just above the sweep position. The state
    // (low = s, high = -s) contradicts monotonicity.
    int low_sign = sign_at(r.x0, r.y0, h);
    int high_sign = sweep_y ? sign_at(r.x1, r.y0, h) : sign_at(r.x0, r.y1, h);
    auto valid = [s](int lo_sign, int hi_sign) { return !(lo_sign == s && hi_sign == -s); };
    std::vector<V> order(start.begin(), start.end());
    std::size_t i = 0;
    std::size_t j = 0;
    while (i < low.size() || j < high.size()) {
        bool take_low = false;
        if (j == high.size()) {
            take_low = true;
        } else if (i == low.size()) {
            take_low = false;
        } else if (low[i].hi <= high[j].lo) {
            take_low = true;
        } else if (high[j].hi <= low[i].lo) {
            take_low = false;
        } else {
            const bool ok_low = valid(-low_sign, high_sign);
            const bool ok_high = valid(low_sign, -high_sign);
            if (ok_low && ok_high) {
                take_low = low[i].est <= high[j].est;
            } else if (ok_low || ok_high) {
                take_low = ok_low;
            } else {
                throw InternalError("crossing signs contradict the monotone direction");
            }
        }
        if (take_low) {
            low_sign = -low_sign;
            order.push_back(low[i++]);
        } else {
            high_sign = -high_sign;
            order.push_back(high[j++]);
        }
    }
    order.insert(order.end(), end.begin(), end.end());
    std::vector<std::pair<VRef, VRef>> out;
    for (std::size_t k = 0; k + 1 < order.size(); k += 2) {
        out.emplace_back(order[k].ref, order[k + 1].ref);
    }
    return out;
}

void Arranger::root_cell(Cell& c) {
    const RootRecord& rr = roots_[static_cast<std::size_t>(c.root)];
    int nf = 0;
    int ng = 0;
    for (int si : c.segs) {
        nf += segs_[static_cast<std::size_t>(si)].has(Curve::F) ? 1 : 0;
        ng += segs_[static_cast<std::size_t>(si)].has(Curve::G) ? 1 : 0;
    }
    if (nf != 2 || ng != 2) {
        throw InternalError("root box boundary must carry exactly two crossings of each curve");
    }
    unsigned assignment = 0;
    for (std::size_t i = 0; i < c.segs.size(); ++i) {
        Segment& s = segs_[static_cast<std::size_t>(c.segs[i])];
        if (!s.doubly()) {
            continue;
        }
        const Order o = order_on_edge(rr.cert, c.dirs[i], s.s0[0], s.s0[1]);
        if (s.order != Order::Unknown && s.order != o) {
            throw InternalError("two root boxes disagree on a shared segment");
        }
        s.order = o;
        const auto k = static_cast<unsigned>(std::find(c.doubly.begin(), c.doubly.end(), c.segs[i]) - c.doubly.begin());
        if (o == Order::GFirst) {
            assignment |= 1U << k;
        }
    }
    const auto seq = boundary_sequence(c, assignment);
    for (std::size_t i = 0; i < seq.size(); ++i) {
        if (seq[i].second == seq[(i + 1) % seq.size()].second) {
            throw InternalError("root box crossings do not alternate between the curves");
        }
    }
    const LRect& r = tree_.node(c.node).r;
    const std::array<std::pair<std::int64_t, std::int64_t>, 4> corners{
        {{r.x0, r.y0}, {r.x1, r.y0}, {r.x1, r.y1}, {r.x0, r.y1}}};
    std::array<int, 4> fc{};
    std::array<int, 4> gc{};
    for (std::size_t i = 0; i < 4; ++i) {
        fc[i] = sign_at(corners[i].first, corners[i].second, Curve::F);
        gc[i] = sign_at(corners[i].first, corners[i].second, Curve::G);
    }
    patterns_[static_cast<std::size_t>(c.root)] = classify_pattern(fc, gc, static_cast<int>(c.doubly.size()));
}

namespace {

bool interleave(const std::vector<int>& pos, int a, int b, int c, int d) {
    int lo = pos[static_cast<std::size_t>(a)];
    int hi = pos[static_cast<std::size_t>(b)];
    if (lo > hi) {
        std::swap(lo, hi);
    }
    auto inside = [&](int v) {
        const int p = pos[static_cast<std::size_t>(v)];
        return lo < p && p < hi;
    };
    return inside(c) != inside(d);
}

}  // namespace

void Arranger::stage8_pv_construction() {
    patterns_.assign(roots_.size(), PatternCase{});
    std::vector<int> region_root(tree_.regions().size(), -1);
    for (int id : tree_.active_cells()) {
        Cell c;
        c.node = id;
        for (const SideSegment& s : tree_.segments(id)) {
            c.segs.push_back(segment_index(s));
            c.dirs.push_back(s.side);
        }
        const TreeNode& n = tree_.node(id);
        if (n.pinned) {
            c.root = n.region;
        }
        for (int si : c.segs) {
            if (segs_[static_cast<std::size_t>(si)].doubly()) {
                c.doubly.push_back(si);
            }
            seg_cells_[static_cast<std::size_t>(si)].push_back(static_cast<int>(cells_.size()));
        }
        cells_.push_back(std::move(c));
    }
    for (Cell& c : cells_) {
        if (c.root >= 0) {
            root_cell(c);
            continue;
        }
        const TreeNode& n = tree_.node(c.node);
        const bool f_ok = n.cls == BoxClass::FCandidate || n.cls == BoxClass::FGCandidate;
        const bool g_ok = n.cls == BoxClass::GCandidate || n.cls == BoxClass::FGCandidate;
        for (int si : c.segs) {
            const Segment& s = segs_[static_cast<std::size_t>(si)];
            if ((s.has(Curve::F) && !f_ok) || (s.has(Curve::G) && !g_ok)) {
                throw InternalError("crossing on the boundary of a box that excludes the curve");
            }
        }
        c.pairs[0] = pv_pairs(c, Curve::F);
        c.pairs[1] = pv_pairs(c, Curve::G);
        if (c.doubly.empty() || c.pairs[0].empty() || c.pairs[1].empty()) {
            continue;
        }
        if (c.doubly.size() > 16) {
            throw InternalError("too many segments carrying both curves");
        }
        const unsigned count = 1U << c.doubly.size();
        for (unsigned a = 0; a < count; ++a) {
            const auto seq = boundary_sequence(c, a);
            // Position of each vertex in the cyclic sequence, indexed by 2*segment + curve.
            std::vector<int> pos(2 * segs_.size(), -1);
            auto slot = [](const VRef& v) { return 2 * v.first + static_cast<int>(v.second); };
            for (std::size_t k = 0; k < seq.size(); ++k) {
                pos[static_cast<std::size_t>(slot(seq[k]))] = static_cast<int>(k);
            }
            bool ok = true;
            for (const auto& [p, q] : c.pairs[0]) {
                for (const auto& [u, v] : c.pairs[1]) {
                    ok = ok && !interleave(pos, slot(p), slot(q), slot(u), slot(v));
                }
            }
            if (ok) {
                c.allowed.push_back(a);
            }
        }
        if (c.allowed.empty()) {
            throw InternalError("no non-crossing connection of the curves in a box");
        }
    }
    if (on_event) {
        on_event(event("VIII"));
    }
}

bool Arranger::propagate() {
    std::deque<int> work;
    std::vector<char> queued(cells_.size(), 0);
    for (std::size_t i = 0; i < cells_.size(); ++i) {
        if (!cells_[i].allowed.empty()) {
            work.push_back(static_cast<int>(i));
            queued[i] = 1;
        }
    }
    bool any = false;
    while (!work.empty()) {
        const int ci = work.front();
        work.pop_front();
        queued[static_cast<std::size_t>(ci)] = 0;
        const Cell& c = cells_[static_cast<std::size_t>(ci)];
        std::vector<unsigned> rem;
        for (unsigned a : c.allowed) {
            bool ok = true;
            for (std::size_t k = 0; k < c.doubly.size(); ++k) {
                const Order o = segs_[static_cast<std::size_t>(c.doubly[k])].order;
                const bool g_first = ((a >> k) & 1U) != 0;
                ok = ok && (o == Order::Unknown || (o == Order::GFirst) == g_first);
            }
            if (ok) {
                rem.push_back(a);
            }
        }
        if (rem.empty()) {
            throw InternalError("conflicting curve orders in a box");
        }
        for (std::size_t k = 0; k < c.doubly.size(); ++k) {
            Segment& s = segs_[static_cast<std::size_t>(c.doubly[k])];
            if (s.order != Order::Unknown) {
                continue;
            }
            const unsigned bit = (rem[0] >> k) & 1U;
            bool agree = true;
            for (unsigned a : rem) {
                agree = agree && ((a >> k) & 1U) == bit;
            }
            if (!agree) {
                continue;
            }
            s.order = bit != 0 ? Order::GFirst : Order::FFirst;
            any = true;
            for (int other : seg_cells_[static_cast<std::size_t>(c.doubly[k])]) {
                if (!queued[static_cast<std::size_t>(other)] && !cells_[static_cast<std::size_t>(other)].allowed.empty()) {
                    queued[static_cast<std::size_t>(other)] = 1;
                    work.push_back(other);
                }
            }
        }
    }
    return any;
}

Order Arranger::bisect(const Segment& s) const {
    struct P {
        Dyadic t;
        std::array<int, 2> sg;
    };
    std::vector<P> pts{{Dyadic(0), s.s0}, {Dyadic(1), s.s1}};
    for (int round = 0; round < 48 && pts.size() < 4096; ++round) {
        int nf = 0;
        int ng = 0;
        std::size_t fi = 0;
        std::size_t gi = 0;
        for (std::size_t k = 0; k + 1 < pts.size(); ++k) {
            if (pts[k].sg[0] != pts[k + 1].sg[0]) {
                ++nf;
                fi = k;
            }
            if (pts[k].sg[1] != pts[k + 1].sg[1]) {
                ++ng;
                gi = k;
            }
        }
        if (nf == 1 && ng == 1 && fi != gi) {
            return gi < fi ? Order::GFirst : Order::FFirst;
        }
        std::vector<P> next;
        for (std::size_t k = 0; k + 1 < pts.size(); ++k) {
            next.push_back(pts[k]);
            if (pts[k].sg != pts[k + 1].sg) {
                const Dyadic t = (pts[k].t + pts[k + 1].t).half();
                const auto [lx, ly] = lattice_point(s, t);
                next.push_back({t, {sign_at(lx, ly, Curve::F), sign_at(lx, ly, Curve::G)}});
            }
        }
        next.push_back(pts.back());
        pts = std::move(next);
    }
    return Order::Unknown;
}

void Arranger::stage9_resolve_ambiguous() {
    propagate();
    // Cells whose two doubly segments lie on perpendicular sides.
    std::vector<char> transition_seg(segs_.size(), 0);
    for (const Cell& c : cells_) {
        if (c.allowed.empty() || c.doubly.size() != 2) {
            continue;
        }
        Dir d0 = Dir::South;
        Dir d1 = Dir::South;
        for (std::size_t i = 0; i < c.segs.size(); ++i) {
            if (c.segs[i] == c.doubly[0]) {
                d0 = c.dirs[i];
            }
            if (c.segs[i] == c.doubly[1]) {
                d1 = c.dirs[i];
            }
        }
        if (d0 != d1 && d0 != opposite(d1)) {
            transition_seg[static_cast<std::size_t>(c.doubly[0])] = 1;
            transition_seg[static_cast<std::size_t>(c.doubly[1])] = 1;
        }
    }
    for (;;) {
        std::vector<std::pair<int, int>> free;  // (priority, segment)
        for (std::size_t i = 0; i < segs_.size(); ++i) {
            const Segment& s = segs_[i];
            if (!s.doubly() || s.order != Order::Unknown) {
                continue;
            }
            const int prio = s.boundary ? 1 : (transition_seg[i] ? 0 : 2);
            free.emplace_back(prio, static_cast<int>(i));
        }
        if (free.empty()) {
            break;
        }
        std::sort(free.begin(), free.end());
        bool progressed = false;
        for (const auto& [prio, si] : free) {
            const Order o = bisect(segs_[static_cast<std::size_t>(si)]);
            if (o != Order::Unknown) {
                segs_[static_cast<std::size_t>(si)].order = o;
                ++bisections_;
                progressed = true;
                break;
            }
        }
        if (!progressed) {
            const Segment& s = segs_[static_cast<std::size_t>(free.front().second)];
            const LRect r{s.key.x0, s.key.y0, s.key.x1, s.key.y1};
            throw ResolutionLimit("Stage IX", tree_.box(r).rect_text(), 0);
        }
        propagate();
    }
    for (const Cell& c : cells_) {
        if (c.allowed.empty()) {
            continue;
        }
        unsigned a = 0;
        for (std::size_t k = 0; k < c.doubly.size(); ++k) {
            if (segs_[static_cast<std::size_t>(c.doubly[k])].order == Order::GFirst) {
                a |= 1U << k;
            }
        }
        if (std::find(c.allowed.begin(), c.allowed.end(), a) == c.allowed.end()) {
            throw InternalError("resolved orders admit no non-crossing connection");
        }
    }
    if (on_event) {
        on_event(event("IX"));
    }
}

Arrangement Arranger::finish() {
    Arrangement out;
    Pslg& g = out.pslg;
    std::vector<std::pair<Dyadic, Dyadic>> lat;  // lattice positions of the vertices
    const Frame& fr = tree_.frame();
    auto add_vertex = [&](const Dyadic& lx, const Dyadic& ly, VertexKind k) {
        g.vertices.push_back({fr.xd(lx), fr.yd(ly), k});
        lat.emplace_back(lx, ly);
        return static_cast<int>(g.vertices.size()) - 1;
    };
    auto to_param = [](double t) { return Dyadic(mpz_class(std::lround(std::ldexp(t, 20))), -20); };

    // Vertices on segments.
    std::map<VRef, int> vid;
    for (std::size_t i = 0; i < segs_.size(); ++i) {
        const Segment& s = segs_[i];
        std::array<Dyadic, 2> t;
        for (Curve h : {Curve::F, Curve::G}) {
            if (s.has(h)) {
                t[static_cast<std::size_t>(h)] = to_param(interp(s, h));
            }
        }
        if (s.doubly()) {
            if (s.order == Order::Unknown) {
                throw InternalError("unresolved curve order on a segment");
            }
            const std::size_t first = s.order == Order::FFirst ? 0 : 1;
            if (!(t[first] < t[1 - first])) {
                t[first] = Dyadic(21, -6);
                t[1 - first] = Dyadic(43, -6);
            }
        }
        for (Curve h : {Curve::F, Curve::G}) {
            if (s.has(h)) {
                const auto [lx, ly] = lattice_point(s, t[static_cast<std::size_t>(h)]);
                vid[{static_cast<int>(i), h}] = add_vertex(lx, ly, h == Curve::F ? VertexKind::F : VertexKind::G);
            }
        }
    }
    auto label = [](Curve h) { return h == Curve::F ? EdgeLabel::S : EdgeLabel::T; };

    for (const Cell& c : cells_) {
        const LRect& r = tree_.node(c.node).r;
        const Dyadic cx = Dyadic(static_cast<long>(r.cx2())).half();
        const Dyadic cy = Dyadic(static_cast<long>(r.cy2())).half();
        if (c.root >= 0) {
            const int root = add_vertex(cx, cy, VertexKind::Root);
            for (int si : c.segs) {
                for (Curve h : {Curve::F, Curve::G}) {
                    if (segs_[static_cast<std::size_t>(si)].has(h)) {
                        g.edges.push_back({vid.at({si, h}), root, label(h)});
                    }
                }
            }
            continue;
        }
        auto dir_of = [&](const VRef& v) {
            return c.dirs[static_cast<std::size_t>(std::find(c.segs.begin(), c.segs.end(), v.first) - c.segs.begin())];
        };
        bool bend = false;
        for (const auto& pairs : c.pairs) {
            for (const auto& [p, q] : pairs) {
                bend = bend || dir_of(p) == dir_of(q);
            }
        }
        const int hk = log2_exact(r.side() / 2);
        // Bent routing: each vertex is pulled toward the center onto a strictly convex
        // closed curve, p = c + mu (v - c) with mu = 1/2 + (1 - t^2)/8, t in (-1, 1) the
        // position along the side.
        auto pulled = [&](const VRef& v) {
            const auto& [vx, vy] = lat[static_cast<std::size_t>(vid.at(v))];
            const Dyadic t = horizontal(dir_of(v)) ? (vx - cx).scaled(-hk) : (vy - cy).scaled(-hk);
            const Dyadic mu = Dyadic(1).half() + (Dyadic(1) - t * t).scaled(-3);
            return add_vertex(cx + mu * (vx - cx), cy + mu * (vy - cy), VertexKind::Bend);
        };
        for (std::size_t h = 0; h < 2; ++h) {
            for (const auto& [p, q] : c.pairs[h]) {
                const int u = vid.at(p);
                const int w = vid.at(q);
                const EdgeLabel l = label(static_cast<Curve>(h));
                if (!bend) {
                    g.edges.push_back({u, w, l});
                    continue;
                }
                const int pu = pulled(p);
                const int pw = pulled(q);
                g.edges.push_back({u, pu, l});
                g.edges.push_back({pu, pw, l});
                g.edges.push_back({pw, w, l});
            }
        }
    }
    g.canonicalize();

    for (const Cell& c : cells_) {
        const TreeNode& n = tree_.node(c.node);
        out.boxes.push_back({tree_.box(c.node), n.depth, n.cls, c.root >= 0});
    }
    for (std::size_t i = 0; i < roots_.size(); ++i) {
        out.roots.push_back({roots_[i].box2, roots_[i].cert, patterns_[i]});
    }
    out.uncertain_signs = sys_.uncertain_signs();
    return out;
}

Arrangement Arranger::run() {
    stage5_prune();
    stage6_external_conform();
    stage7_internal_conform();
    stage8_pv_construction();
    stage9_resolve_ambiguous();
    return finish();
}

Arrangement build_arrangement(const CurveSystem& sys, const Box2& roi, const ArrangeOptions& opt,
                              const std::function<void(const StageEvent&)>& progress) {
    for (Fn fn : {Fn::F, Fn::G, Fn::FX, Fn::FY, Fn::GX, Fn::GY}) {
        check_denominators(sys.expr(fn), roi);
    }
    SubdivTree tree{Frame(roi)};
    Isolator iso(sys, tree, opt.isolate);
    iso.on_event = progress;
    auto roots = iso.run();
    Arranger arr(sys, tree, iso, std::move(roots));
    arr.on_event = progress;
    return arr.run();
}

}  // namespace curvearr
