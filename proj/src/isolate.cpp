#include "curvearr/isolate.hpp"

#include <algorithm>
#include <deque>

namespace curvearr {

namespace {

LRect intersect(const LRect& a, const LRect& b) {
    return {std::max(a.x0, b.x0), std::max(a.y0, b.y0), std::min(a.x1, b.x1), std::min(a.y1, b.y1)};
}

LRect hull(const LRect& a, const LRect& b) {
    return {std::min(a.x0, b.x0), std::min(a.y0, b.y0), std::max(a.x1, b.x1), std::max(a.y1, b.y1)};
}

}  // namespace

Isolator::Isolator(const CurveSystem& sys, SubdivTree& tree, IsolateOptions opt)
    : sys_(sys), tree_(tree), opt_(opt), diag_target_(opt.eps / 2) {
    tree_.on_split = [this](int parent) {
        for (int c : tree_.node(parent).child) {
            classify_node(c);
        }
    };
    if (tree_.node(tree_.main_root()).cls == BoxClass::Unresolved) {
        classify_node(tree_.main_root());
    }
}

void Isolator::classify_node(int id) {
    const Box2 b = tree_.box(id);
    BoxFlags fl = tree_.node(id).flags;
    if (!fl.f0 && !fl.f1) {
        fl.f0 = c0(sys_, Curve::F, b);
        fl.f1 = !fl.f0 && c1(sys_, Curve::F, b);
    } else if (!fl.f0) {
        fl.f0 = c0(sys_, Curve::F, b);
    }
    if (!fl.g0 && !fl.g1) {
        fl.g0 = c0(sys_, Curve::G, b);
        fl.g1 = !fl.g0 && c1(sys_, Curve::G, b);
    } else if (!fl.g0) {
        fl.g0 = c0(sys_, Curve::G, b);
    }
    TreeNode& n = tree_.node_mut(id);
    n.flags = fl;
    n.cls = class_of(fl);
}

std::vector<int> Isolator::leaves_of(BoxClass c) const {
    std::vector<int> out;
    for (int id : tree_.active_cells()) {
        const TreeNode& n = tree_.node(id);
        if (!n.conceptual && !n.pinned && n.cls == c) {
            out.push_back(id);
        }
    }
    return out;
}

StageEvent Isolator::event(const std::string& stage, std::size_t qroot) const {
    StageEvent e;
    e.stage = stage;
    e.q0 = leaves_of(BoxClass::Excluded).size();
    e.qf = leaves_of(BoxClass::FCandidate).size();
    e.qg = leaves_of(BoxClass::GCandidate).size();
    e.qfg = leaves_of(BoxClass::FGCandidate).size();
    e.qjc = qjc_.size();
    e.qmk = qmk_.size();
    e.qroot = qroot;
    return e;
}

void Isolator::resolution_limit(const std::string& stage, const LRect& r, int depth) const {
    throw ResolutionLimit(stage, tree_.box(r).rect_text(), depth);
}

bool Isolator::needs_split(int id) const {
    const TreeNode& n = tree_.node(id);
    if (n.cls == BoxClass::Unresolved) {
        return true;
    }
    if (n.cls == BoxClass::Excluded) {
        return false;
    }
    return box_diagonal(tree_.box(id)) > diag_target_;
}

void Isolator::resolve_subtree(int id, const std::string& stage) {
    std::deque<int> work{id};
    while (!work.empty()) {
        const int x = work.front();
        work.pop_front();
        if (!tree_.node(x).is_leaf()) {
            for (int c : tree_.node(x).child) {
                work.push_back(c);
            }
            continue;
        }
        if (!needs_split(x)) {
            continue;
        }
        if (tree_.node(x).depth >= opt_.max_depth) {
            resolution_limit(stage, tree_.node(x).r, tree_.node(x).depth);
        }
        for (int c : tree_.expand(x)) {
            work.push_back(c);
        }
    }
}

Box2 Isolator::clipped(const LRect& r) const { return tree_.box(intersect(r, Frame::root())); }

void Isolator::stage1_resolve() {
    resolve_subtree(tree_.main_root(), "Stage I");
    if (on_event) {
        on_event(event("I"));
    }
}

namespace {

void fg_leaves_under(const SubdivTree& t, int id, std::vector<int>& out) {
    const TreeNode& n = t.node(id);
    if (n.is_leaf()) {
        if (n.on && n.cls == BoxClass::FGCandidate) {
            out.push_back(id);
        }
        return;
    }
    for (int c : n.child) {
        fg_leaves_under(t, c, out);
    }
}

}  // namespace

void Isolator::stage2_jacobian() {
    std::deque<int> work;
    for (int id : leaves_of(BoxClass::FGCandidate)) {
        work.push_back(id);
    }
    while (!work.empty()) {
        const int x = work.front();
        work.pop_front();
        const TreeNode& n = tree_.node(x);
        if (!n.is_leaf() || n.cls != BoxClass::FGCandidate) {
            continue;
        }
        Box2 b6 = clipped(scale(n.r, 6));
        b6.depth = n.depth;
        if (jc(sys_, b6)) {
            qjc_.push_back(n.r);
            continue;
        }
        if (n.depth >= opt_.max_depth) {
            resolution_limit("Stage II", n.r, n.depth);
        }
        for (int c : tree_.expand(x)) {
            resolve_subtree(c, "Stage II");
            std::vector<int> fg;
            fg_leaves_under(tree_, c, fg);
            work.insert(work.end(), fg.begin(), fg.end());
        }
    }
    if (on_event) {
        on_event(event("II"));
    }
}

bool Isolator::mk_ok(const LRect& b) const {
    Box2 b2 = tree_.box(scale(b, 2));
    b2.depth = depth_of_side(b.side());
    return mk_test(sys_, b2).has_value();
}

void Isolator::insert_mk(const LRect& b) {
    const LRect b2 = scale(b, 2);
    for (const LRect& o : qmk_) {
        const LRect o2 = scale(o, 2);
        if (!b2.meets(o2)) {
            continue;
        }
        Box2 h = clipped(hull(b2, o2));
        h.depth = depth_of_side(std::min(b.side(), o.side()));
        if (jc(sys_, h)) {
            return;  // at most one root in the hull: same root as o
        }
    }
    qmk_.push_back(b);
}

void Isolator::stage3_mk() {
    for (const LRect& start : qjc_) {
        const int id = tree_.find_node(start);
        if (id < 0) {
            throw InternalError("Stage III: Jacobian box vanished from the tree");
        }
        std::vector<int> stack{id};
        while (!stack.empty()) {
            const int t = stack.back();
            stack.pop_back();
            const LRect r = tree_.node(t).r;
            if (mk_ok(r)) {
                insert_mk(r);
                break;
            }
            if (!tree_.node(t).is_leaf() || tree_.node(t).cls != BoxClass::FGCandidate) {
                continue;
            }
            if (tree_.node(t).depth >= opt_.max_depth) {
                resolution_limit("Stage III", r, tree_.node(t).depth);
            }
            const auto kids = tree_.expand(t);
            std::vector<int> fg;
            for (int c : kids) {
                resolve_subtree(c, "Stage III");
                fg_leaves_under(tree_, c, fg);
            }
            // Depth first, south-west child first.
            stack.insert(stack.end(), fg.rbegin(), fg.rend());
        }
    }
    if (on_event) {
        on_event(event("III"));
    }
}

std::optional<LRect> Isolator::refine_root(const LRect& b) {
    const LRect root = Frame::root();
    const LRect b2 = scale(b, 2);
    const int l = depth_of_side(b.side());
    auto limit = [&](int depth) {
        if (!root.contains(b2)) {
            throw BoundaryRoot(tree_.box(b2).rect_text(), depth);
        }
        resolution_limit("RefineRoot", b, depth);
    };
    if (l + 1 > opt_.max_depth) {
        limit(l + 1);
    }
    const std::int64_t half = b.side() / 2;
    std::deque<LRect> queue;
    for (int j = 0; j < 4; ++j) {
        for (int i = 0; i < 4; ++i) {
            const LRect r{b2.x0 + i * half, b2.y0 + j * half, b2.x0 + (i + 1) * half, b2.y0 + (j + 1) * half};
            if (root.contains(r)) {
                queue.push_back(r);
            }
        }
    }
    while (!queue.empty()) {
        const LRect t = queue.front();
        queue.pop_front();
        const int id = tree_.find_or_make(t);
        if (mk_ok(t)) {
            return t;
        }
        if (tree_.node(id).cls != BoxClass::FGCandidate) {
            continue;
        }
        const int d = depth_of_side(t.side());
        if (d + 1 > opt_.max_depth) {
            limit(d + 1);
        }
        const std::int64_t h = t.side() / 2;
        for (int j = 0; j < 2; ++j) {
            for (int i = 0; i < 2; ++i) {
                queue.push_back({t.x0 + i * h, t.y0 + j * h, t.x0 + (i + 1) * h, t.y0 + (j + 1) * h});
            }
        }
    }
    return std::nullopt;
}

std::vector<RootRecord> Isolator::stage4_strong_isolation() {
    const LRect root = Frame::root();
    std::vector<RootRecord> out;
    while (!qmk_.empty()) {
        std::sort(qmk_.begin(), qmk_.end(), [](const LRect& a, const LRect& b) {
            if (a.side() != b.side()) {
                return a.side() > b.side();
            }
            return a < b;
        });
        const LRect b = qmk_.front();
        qmk_.erase(qmk_.begin());
        const LRect b2 = scale(b, 2);
        if (!b2.interiors_meet(root)) {
            continue;  // the root lies outside the region of interest
        }
        const LRect b6 = scale(b, 6);
        const LRect b8 = scale(b, 8);
        const int depth = depth_of_side(b.side());
        auto at_depth = [&](const LRect& r) {
            Box2 x = tree_.box(r);
            x.depth = depth;
            return x;
        };
        bool ok = root.contains(b8);
        for (const LRect& o : qmk_) {
            ok = ok && !b8.interiors_meet(scale(o, 8));
        }
        for (const RootRecord& rr : out) {
            ok = ok && !b8.interiors_meet(scale(rr.b, 8));
        }
        ok = ok && box_diagonal(tree_.box(b2)) <= diag_target_;
        ok = ok && c1(sys_, Curve::F, at_depth(b8)) && c1(sys_, Curve::G, at_depth(b8));
        ok = ok && jc(sys_, at_depth(b6));
        std::optional<MKCertificate> cert;
        if (ok) {
            cert = mk_test(sys_, at_depth(b2));
        }
        if (ok && cert) {
            RootRecord rr;
            rr.b = b;
            rr.box = at_depth(b);
            rr.box2 = at_depth(b2);
            rr.box8 = at_depth(b8);
            rr.cert = *cert;
            rr.jc6 = true;
            out.push_back(rr);
            continue;
        }
        if (const auto r = refine_root(b)) {
            insert_mk(*r);
        }
    }
    std::sort(out.begin(), out.end(), [](const RootRecord& a, const RootRecord& b) { return a.b < b.b; });
    if (on_event) {
        on_event(event("IV", out.size()));
    }
    return out;
}

std::vector<RootRecord> Isolator::run() {
    stage1_resolve();
    stage2_jacobian();
    stage3_mk();
    return stage4_strong_isolation();
}

}  // namespace curvearr
