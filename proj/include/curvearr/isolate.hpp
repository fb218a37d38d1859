#pragma once

#include <functional>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "curvearr/predicates.hpp"
#include "curvearr/subdiv_tree.hpp"

namespace curvearr {

struct IsolateOptions {
    /// Hausdorff tolerance; infinity disables the width refinement.
    double eps = std::numeric_limits<double>::infinity();
    int max_depth = 40;
};

/// A strongly isolated common root.
struct RootRecord {
    LRect b;  // aligned box B
    Box2 box;
    Box2 box2;  // root box 2B
    Box2 box8;  // extended root box 8B
    MKCertificate cert;  // MK certificate on 2B
    bool jc6 = false;    // JC(6B) holds
};

/// Progress report: stage name and queue sizes.
struct StageEvent {
    std::string stage;
    std::size_t q0 = 0, qf = 0, qg = 0, qfg = 0, qjc = 0, qmk = 0, qroot = 0;
};

/// Stages I-IV on a subdivision tree: resolution, Jacobian condition, MK test, strong
/// isolation. The tree's split observer is installed by the constructor so that every new
/// box is classified.
class Isolator {
public:
    Isolator(const CurveSystem& sys, SubdivTree& tree, IsolateOptions opt);

    void stage1_resolve();
    void stage2_jacobian();
    void stage3_mk();
    std::vector<RootRecord> stage4_strong_isolation();
    /// All four stages.
    std::vector<RootRecord> run();

    /// Half-width box B* with 2B* a root box for the same root, or nullopt when the root
    /// in 2B lies outside the region of interest.
    std::optional<LRect> refine_root(const LRect& b);

    /// Leaves of each class (Q0, Qf, Qg, Qfg), in id order.
    std::vector<int> leaves_of(BoxClass c) const;
    const std::vector<LRect>& qjc() const { return qjc_; }
    const std::vector<LRect>& qmk() const { return qmk_; }

    std::function<void(const StageEvent&)> on_event;

    /// Classification of a node from its flags and the predicates on its box.
    void classify_node(int id);

private:
    StageEvent event(const std::string& stage, std::size_t qroot = 0) const;
    /// Splits until every leaf under id is resolved (and small enough when candidate).
    void resolve_subtree(int id, const std::string& stage);
    bool needs_split(int id) const;
    Box2 clipped(const LRect& r) const;
    [[noreturn]] void resolution_limit(const std::string& stage, const LRect& r, int depth) const;
    bool mk_ok(const LRect& b) const;
    /// Inserts into QMK unless a box with an overlapping 2B certifiably holds the same root.
    void insert_mk(const LRect& b);

    const CurveSystem& sys_;
    SubdivTree& tree_;
    IsolateOptions opt_;
    double diag_target_;
    std::vector<LRect> qjc_;
    std::vector<LRect> qmk_;
};

}  // namespace curvearr
