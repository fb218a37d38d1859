#include "curvearr/subdiv_tree.hpp"

#include <algorithm>
#include <set>
#include <tuple>

namespace curvearr {

const char* to_string(Dir d) {
    switch (d) {
        case Dir::South:
            return "S";
        case Dir::East:
            return "E";
        case Dir::North:
            return "N";
        case Dir::West:
            return "W";
    }
    return "?";
}

StdSubdivision std_subdivision(const LRect& b) {
    const std::int64_t s = b.side();
    if (s % 2 != 0) {
        throw InternalError("std_subdivision: box too small for the lattice");
    }
    const std::int64_t ox = b.x0 - 3 * s - s / 2;
    const std::int64_t oy = b.y0 - 3 * s - s / 2;
    StdSubdivision out;
    for (int j = 0; j < 3; ++j) {
        for (int i = 0; i < 3; ++i) {
            const std::int64_t x = ox + s + 2 * s * i;
            const std::int64_t y = oy + s + 2 * s * j;
            out.inner[static_cast<std::size_t>(3 * j + i)] = {x, y, x + 2 * s, y + 2 * s};
        }
    }
    out.root_box = out.inner[4];
    std::size_t n = 0;
    for (int j = 0; j < 8; ++j) {
        for (int i = 0; i < 8; ++i) {
            if (i == 0 || i == 7 || j == 0 || j == 7) {
                const std::int64_t x = ox + s * i;
                const std::int64_t y = oy + s * j;
                out.ring[n++] = {x, y, x + s, y + s};
            }
        }
    }
    return out;
}

StdSubdivisionBoxes std_subdivision(const Box2& b) {
    const Dyadic w = b.width_x();
    const Dyadic h = b.width_y();
    const Dyadic ox = b.x0 - w * Dyadic(7).half();
    const Dyadic oy = b.y0 - h * Dyadic(7).half();
    const Alignment ring_al = b.alignment == Alignment::Aligned ? Alignment::HalfAligned : Alignment::Free;
    StdSubdivisionBoxes out;
    for (int j = 0; j < 3; ++j) {
        for (int i = 0; i < 3; ++i) {
            const Dyadic x = ox + w + w * Dyadic(2L * i);
            const Dyadic y = oy + h + h * Dyadic(2L * j);
            out.inner[static_cast<std::size_t>(3 * j + i)] =
                Box2(x, y, x + w.scaled(1), y + h.scaled(1), std::max(0, b.depth - 1), Alignment::Free);
        }
    }
    out.root_box = out.inner[4];
    out.root_box.alignment = box_scale(b, 2).alignment;
    out.inner[4].alignment = out.root_box.alignment;
    std::size_t n = 0;
    for (int j = 0; j < 8; ++j) {
        for (int i = 0; i < 8; ++i) {
            if (i == 0 || i == 7 || j == 0 || j == 7) {
                const Dyadic x = ox + w * Dyadic(static_cast<long>(i));
                const Dyadic y = oy + h * Dyadic(static_cast<long>(j));
                out.ring[n++] = Box2(x, y, x + w, y + h, b.depth, ring_al);
            }
        }
    }
    return out;
}

SubdivTree::SubdivTree(Frame frame) : frame_(std::move(frame)) { new_node(Frame::root(), 0, -1); }

int SubdivTree::new_node(const LRect& r, int depth, int parent) {
    TreeNode n;
    n.r = r;
    n.depth = depth;
    n.parent = parent;
    nodes_.push_back(n);
    return static_cast<int>(nodes_.size()) - 1;
}

Box2 SubdivTree::box(int id) const {
    const TreeNode& n = node(id);
    Box2 b = frame_.box(n.r);
    b.depth = n.depth;
    return b;
}

Box2 SubdivTree::box(const LRect& r) const { return frame_.box(r); }

std::array<int, 4> SubdivTree::expand(int leaf) {
    TreeNode& n = node_mut(leaf);
    if (!n.is_leaf()) {
        throw InternalError("expand: node is not a leaf");
    }
    if (n.conceptual || n.pinned) {
        throw InternalError("expand: conceptual or pinned node cannot be split");
    }
    if (!n.on) {
        throw InternalError("expand: node is OFF");
    }
    const LRect r = n.r;
    const std::int64_t h = r.side() / 2;
    if (h < 1) {
        throw InternalError("expand: lattice resolution exhausted");
    }
    const int d = n.depth + 1;
    const int region = n.region;
    const std::array<LRect, 4> q{LRect{r.x0, r.y0, r.x0 + h, r.y0 + h}, LRect{r.x0 + h, r.y0, r.x1, r.y0 + h},
                                 LRect{r.x0, r.y0 + h, r.x0 + h, r.y1}, LRect{r.x0 + h, r.y0 + h, r.x1, r.y1}};
    std::array<int, 4> ids{};
    for (std::size_t i = 0; i < 4; ++i) {
        ids[i] = new_node(q[i], d, leaf);
        TreeNode& c = node_mut(ids[i]);
        c.region = region;
        c.flags = node(leaf).flags;
        c.cls = node(leaf).cls;
    }
    node_mut(leaf).child = ids;
    ++expansions_;
    if (on_split) {
        on_split(leaf);
    }
    return ids;
}

int SubdivTree::descend(int id, std::int64_t px2, std::int64_t py2) const {
    for (;;) {
        const TreeNode& n = node(id);
        if (n.is_leaf()) {
            return id;
        }
        const int east = px2 > n.r.cx2() ? 1 : 0;
        const int north = py2 > n.r.cy2() ? 2 : 0;
        id = n.child[static_cast<std::size_t>(east + north)];
    }
}

int SubdivTree::locate2(std::int64_t px2, std::int64_t py2) const {
    if (!node(main_root()).r.contains2(px2, py2)) {
        return -1;
    }
    const int leaf = descend(main_root(), px2, py2);
    const TreeNode& n = node(leaf);
    if (n.on || n.region < 0) {
        return leaf;
    }
    const Region& reg = regions_[static_cast<std::size_t>(n.region)];
    if (!reg.std_roots.empty()) {
        for (int root : reg.std_roots) {
            if (node(root).r.contains2(px2, py2)) {
                return descend(root, px2, py2);
            }
        }
        throw InternalError("locate: point inside an extended root box but outside its subdivision");
    }
    if (reg.conceptual >= 0 && node(reg.conceptual).conceptual) {
        return reg.conceptual;
    }
    return leaf;
}

bool SubdivTree::is_active(int id) const {
    const TreeNode& n = node(id);
    return n.is_leaf() && (n.on || n.conceptual);
}

int SubdivTree::find_node(const LRect& r) const {
    int id = main_root();
    while (!(node(id).r == r)) {
        const TreeNode& n = node(id);
        if (!n.r.contains(r) || n.is_leaf()) {
            return -1;
        }
        id = descend_step(id, r);
    }
    return id;
}

int SubdivTree::find_or_make(const LRect& r) {
    int id = main_root();
    if (!node(id).r.contains(r)) {
        throw InternalError("find_or_make: rectangle outside the region of interest");
    }
    while (!(node(id).r == r)) {
        if (node(id).is_leaf()) {
            expand(id);
        }
        id = descend_step(id, r);
    }
    return id;
}

int SubdivTree::descend_step(int id, const LRect& r) const {
    const TreeNode& n = node(id);
    for (int c : n.child) {
        if (node(c).r.contains(r)) {
            return c;
        }
    }
    throw InternalError("rectangle is not a quadtree node");
}

std::vector<int> SubdivTree::side_neighbors(int id, Dir d) const {
    std::vector<int> out;
    const LRect& r = node(id).r;
    const bool horizontal = d == Dir::South || d == Dir::North;
    std::int64_t t = horizontal ? r.x0 : r.y0;
    const std::int64_t end = horizontal ? r.x1 : r.y1;
    while (t < end) {
        std::int64_t px2 = 0;
        std::int64_t py2 = 0;
        switch (d) {
            case Dir::South:
                px2 = 2 * t + 1;
                py2 = 2 * r.y0 - 1;
                break;
            case Dir::North:
                px2 = 2 * t + 1;
                py2 = 2 * r.y1 + 1;
                break;
            case Dir::East:
                px2 = 2 * r.x1 + 1;
                py2 = 2 * t + 1;
                break;
            case Dir::West:
                px2 = 2 * r.x0 - 1;
                py2 = 2 * t + 1;
                break;
        }
        const int c = locate2(px2, py2);
        if (c < 0) {
            break;
        }
        if (is_active(c) && c != id) {
            out.push_back(c);
        }
        const LRect& cr = node(c).r;
        t = std::min(end, horizontal ? cr.x1 : cr.y1);
    }
    return out;
}

std::vector<int> SubdivTree::neighbors(int id) const {
    std::vector<int> out;
    for (Dir d : {Dir::South, Dir::East, Dir::North, Dir::West}) {
        for (int n : side_neighbors(id, d)) {
            if (std::find(out.begin(), out.end(), n) == out.end()) {
                out.push_back(n);
            }
        }
    }
    return out;
}

std::array<int, 8> SubdivTree::extreme_neighbors(int id) const {
    std::array<int, 8> out{};
    out.fill(-1);
    int k = 0;
    for (Dir d : {Dir::South, Dir::East, Dir::North, Dir::West}) {
        const auto ns = side_neighbors(id, d);
        if (!ns.empty()) {
            out[static_cast<std::size_t>(k)] = ns.front();
            out[static_cast<std::size_t>(k + 1)] = ns.back();
        }
        k += 2;
    }
    return out;
}

std::vector<int> SubdivTree::active_cells() const {
    std::vector<int> out;
    for (int i = 0; i < static_cast<int>(nodes_.size()); ++i) {
        if (is_active(i)) {
            out.push_back(i);
        }
    }
    return out;
}

void SubdivTree::balance(const std::vector<int>& queue) {
    // Key: deeper first, then (y0, x0), then id. Stale keys are skipped on pop.
    using Key = std::tuple<int, std::int64_t, std::int64_t, int>;
    std::set<Key> pq;
    auto push = [&](int id) {
        if (is_active(id)) {
            const TreeNode& n = node(id);
            pq.insert({-n.depth, n.r.y0, n.r.x0, id});
        }
    };
    for (int id : queue) {
        push(id);
    }
    while (!pq.empty()) {
        const Key key = *pq.begin();
        pq.erase(pq.begin());
        const int x = std::get<3>(key);
        if (!is_active(x) || -std::get<0>(key) != node(x).depth) {
            continue;
        }
        if (node(x).conceptual) {
            // All neighbors are brought to depth(C) - 1; depth(C) follows the deepest one.
            for (bool changed = true; changed;) {
                changed = false;
                const auto nbrs = neighbors(x);
                int m = -1;
                for (int n : nbrs) {
                    if (!node(n).conceptual) {
                        m = std::max(m, node(n).depth);
                    }
                }
                if (m + 1 > node(x).depth) {
                    node_mut(x).depth = m + 1;
                }
                for (int n : nbrs) {
                    if (!node(n).conceptual && node(n).depth < node(x).depth - 1) {
                        for (int c : expand(n)) {
                            push(c);
                        }
                        changed = true;
                        break;
                    }
                }
            }
            continue;
        }
        for (bool changed = true; changed;) {
            changed = false;
            for (int n : neighbors(x)) {
                const TreeNode& nn = node(n);
                if (nn.conceptual) {
                    if (node(x).depth > nn.depth - 1) {
                        node_mut(n).depth = node(x).depth + 1;
                        push(n);
                    } else if (node(x).depth < nn.depth - 1) {
                        push(n);
                    }
                    continue;
                }
                if (node(x).depth - nn.depth > 1) {
                    for (int c : expand(n)) {
                        push(c);
                    }
                    changed = true;
                    break;
                }
            }
        }
    }
}

int SubdivTree::max_depth_gap() const {
    int gap = 0;
    for (int id : active_cells()) {
        if (node(id).conceptual) {
            continue;
        }
        for (int n : neighbors(id)) {
            if (!node(n).conceptual) {
                gap = std::max(gap, std::abs(node(id).depth - node(n).depth));
            }
        }
    }
    return gap;
}

int SubdivTree::add_region(const LRect& b) {
    Region reg;
    reg.b = b;
    reg.b2 = scale(b, 2);
    reg.b8 = scale(b, 8);
    regions_.push_back(reg);
    return static_cast<int>(regions_.size()) - 1;
}

void SubdivTree::mark_off(int id, int r) {
    TreeNode& n = node_mut(id);
    n.region = r;
    if (n.is_leaf()) {
        n.on = false;
        return;
    }
    for (int c : n.child) {
        mark_off(c, r);
    }
}

void SubdivTree::prune_rec(int id, int r) {
    const LRect e = regions_[static_cast<std::size_t>(r)].b8;
    if (!node(id).r.interiors_meet(e)) {
        return;
    }
    if (e.contains(node(id).r)) {
        mark_off(id, r);
        return;
    }
    if (node(id).is_leaf()) {
        expand(id);
    }
    const auto kids = node(id).child;
    for (int c : kids) {
        prune_rec(c, r);
    }
}

void SubdivTree::prune_region(int r) { prune_rec(main_root(), r); }

int SubdivTree::add_conceptual(int r) {
    Region& reg = regions_[static_cast<std::size_t>(r)];
    const int id = new_node(reg.b8, 0, -1);
    TreeNode& c = node_mut(id);
    c.on = false;
    c.conceptual = true;
    c.region = r;
    c.cls = BoxClass::FGCandidate;
    regions_[static_cast<std::size_t>(r)].conceptual = id;
    const int l = depth_of_side(regions_[static_cast<std::size_t>(r)].b.side());
    int m = -1;
    for (int n : neighbors(id)) {
        if (!node(n).conceptual) {
            m = std::max(m, node(n).depth);
        }
    }
    node_mut(id).depth = std::max(m, l + 1) + 1;
    return id;
}

void SubdivTree::finish_external_conform() {
    for (Region& reg : regions_) {
        if (reg.conceptual >= 0) {
            reg.k = node(reg.conceptual).depth - 1 - depth_of_side(reg.b.side());
        }
    }
}

void SubdivTree::install_std(int r) {
    const StdSubdivision sd = std_subdivision(regions_[static_cast<std::size_t>(r)].b);
    std::vector<int> roots;
    auto add = [&](const LRect& rect, bool pinned) {
        const int id = new_node(rect, depth_of_side(rect.side()), -1);
        node_mut(id).region = r;
        node_mut(id).pinned = pinned;
        roots.push_back(id);
        return id;
    };
    int root_box = -1;
    for (std::size_t i = 0; i < sd.inner.size(); ++i) {
        const int id = add(sd.inner[i], i == 4);
        if (i == 4) {
            root_box = id;
        }
    }
    for (const LRect& rect : sd.ring) {
        add(rect, false);
    }
    Region& reg = regions_[static_cast<std::size_t>(r)];
    if (reg.conceptual >= 0) {
        node_mut(reg.conceptual).conceptual = false;
    }
    reg.std_roots = roots;
    reg.root_box = root_box;
    if (on_std_root) {
        for (int id : roots) {
            on_std_root(id);
        }
    }
}

std::vector<SideSegment> SubdivTree::segments(int id) const {
    const LRect& r = node(id).r;
    std::vector<SideSegment> out;
    for (Dir d : {Dir::South, Dir::East, Dir::North, Dir::West}) {
        const bool horizontal = d == Dir::South || d == Dir::North;
        std::vector<SideSegment> side;
        std::int64_t t = horizontal ? r.x0 : r.y0;
        const std::int64_t end = horizontal ? r.x1 : r.y1;
        while (t < end) {
            std::int64_t px2 = 0;
            std::int64_t py2 = 0;
            switch (d) {
                case Dir::South:
                    px2 = 2 * t + 1;
                    py2 = 2 * r.y0 - 1;
                    break;
                case Dir::North:
                    px2 = 2 * t + 1;
                    py2 = 2 * r.y1 + 1;
                    break;
                case Dir::East:
                    px2 = 2 * r.x1 + 1;
                    py2 = 2 * t + 1;
                    break;
                case Dir::West:
                    px2 = 2 * r.x0 - 1;
                    py2 = 2 * t + 1;
                    break;
            }
            const int c = locate2(px2, py2);
            std::int64_t next = end;
            if (c >= 0) {
                const LRect& cr = node(c).r;
                next = std::min(end, horizontal ? cr.x1 : cr.y1);
            }
            SideSegment s{d, 0, 0, 0, 0, c >= 0 && is_active(c) ? c : -1};
            switch (d) {
                case Dir::South:
                    s.ax0 = t, s.ay0 = r.y0, s.ax1 = next, s.ay1 = r.y0;
                    break;
                case Dir::North:
                    s.ax0 = t, s.ay0 = r.y1, s.ax1 = next, s.ay1 = r.y1;
                    break;
                case Dir::East:
                    s.ax0 = r.x1, s.ay0 = t, s.ax1 = r.x1, s.ay1 = next;
                    break;
                case Dir::West:
                    s.ax0 = r.x0, s.ay0 = t, s.ax1 = r.x0, s.ay1 = next;
                    break;
            }
            side.push_back(s);
            t = next;
        }
        if (d == Dir::North || d == Dir::West) {
            std::reverse(side.begin(), side.end());
        }
        out.insert(out.end(), side.begin(), side.end());
    }
    return out;
}

}  // namespace curvearr
