#pragma once

#include <array>
#include <compare>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <utility>
#include <vector>

#include "curvearr/isolate.hpp"

namespace curvearr {

enum class VertexKind { F, G, Root, Bend };
enum class EdgeLabel { S, T };  // S: edges of f = 0, T: edges of g = 0

const char* to_string(VertexKind k);
const char* to_string(EdgeLabel l);

struct PVertex {
    Dyadic x;
    Dyadic y;
    VertexKind kind;
};

struct PEdge {
    int u;
    int v;
    EdgeLabel label;
};

/// Labeled planar straight-line graph.
struct Pslg {
    std::vector<PVertex> vertices;
    std::vector<PEdge> edges;

    /// Vertices by (y, x), edges by (min id, max id, label), ids renumbered.
    void canonicalize();
};

/// Relative order of the f- and g-vertex on a segment, along increasing coordinate.
enum class Order { Unknown, FFirst, GFirst };

/// Local crossing pattern of a root box.
struct PatternCase {
    int group = 0;       // 2 or 3
    char variant = '?';  // 'a', 'b', 'c': number of segments carrying both curves
};

/// Order of the f- and g-vertex on a segment of a root box side, from the MK certificate.
/// s_f0, s_g0 are the signs of f and g at the segment start.
Order order_on_edge(const MKCertificate& cert, Dir side, int s_f0, int s_g0);

/// Zero of the linear interpolant between endpoint values v0, v1, clamped to [1/4, 3/4].
double vertex_parameter(double v0, double v1);

/// Pattern from corner signs: Group II if f*g has one sign at all four corners.
PatternCase classify_pattern(const std::array<int, 4>& f_corners, const std::array<int, 4>& g_corners,
                             int shared_segments);

struct ArrangeOptions {
    IsolateOptions isolate;
};

struct BoxRecord {
    Box2 box;
    int depth = 0;
    BoxClass cls = BoxClass::Unresolved;
    bool root_box = false;
};

struct RootReport {
    Box2 box2;
    MKCertificate cert;
    PatternCase pattern;
};

struct Arrangement {
    Pslg pslg;
    std::vector<BoxRecord> boxes;
    std::vector<RootReport> roots;
    int uncertain_signs = 0;
};

/// Stages V-IX on top of a finished isolation.
class Arranger {
public:
    Arranger(const CurveSystem& sys, SubdivTree& tree, Isolator& iso, std::vector<RootRecord> roots);

    void stage5_prune();
    void stage6_external_conform();
    void stage7_internal_conform();
    void stage8_pv_construction();
    void stage9_resolve_ambiguous();
    /// Vertex placement, edge routing and assembly.
    Arrangement finish();
    Arrangement run();

    std::function<void(const StageEvent&)> on_event;

    struct SegKey {
        std::int64_t x0, y0, x1, y1;
        friend auto operator<=>(const SegKey&, const SegKey&) = default;
    };
    struct Segment {
        SegKey key;
        std::array<int, 2> s0{};  // signs of f, g at the start
        std::array<int, 2> s1{};  // signs at the end
        bool boundary = false;    // lies on the boundary of the region of interest
        Order order = Order::Unknown;
        bool has(Curve c) const { return s0[static_cast<int>(c)] != s1[static_cast<int>(c)]; }
        bool doubly() const { return has(Curve::F) && has(Curve::G); }
    };
    /// Vertex on a segment: (segment index, curve).
    using VRef = std::pair<int, Curve>;
    struct Cell {
        int node = -1;
        std::vector<int> segs;  // counter-clockwise
        std::vector<Dir> dirs;
        int root = -1;  // index into roots when this is a root box
        std::array<std::vector<std::pair<VRef, VRef>>, 2> pairs;
        std::vector<int> doubly;  // segments carrying both curves
        std::vector<unsigned> allowed;  // admissible orders of doubly (bit i: g first on doubly[i])
    };

    const std::vector<Segment>& segments() const { return segs_; }
    const std::vector<Cell>& cells() const { return cells_; }
    const std::vector<RootRecord>& roots() const { return roots_; }
    const std::vector<PatternCase>& patterns() const { return patterns_; }
    /// Number of orders settled by sampling along a segment.
    int bisections() const { return bisections_; }

    /// Order of the two crossings on a segment from sign samples at dyadic subdivision
    /// points; Unknown if they do not separate within 48 rounds.
    Order bisect(const Segment& s) const;

    /// Cyclic boundary sequence of a cell's vertices under the given doubly orders.
    std::vector<VRef> boundary_sequence(const Cell& c, unsigned assignment) const;

private:
    int sign_at(std::int64_t ax, std::int64_t ay, Curve c) const;
    int sign_at(const Dyadic& lx, const Dyadic& ly, Curve c) const;
    int segment_index(const SideSegment& s);
    std::vector<std::pair<VRef, VRef>> pv_pairs(const Cell& c, Curve h) const;
    void root_cell(Cell& c);
    bool propagate();
    StageEvent event(const std::string& stage) const;
    std::pair<Dyadic, Dyadic> lattice_point(const Segment& s, const Dyadic& t) const;
    /// Interpolated parameter of the h-vertex on a segment, clamped to [1/4, 3/4].
    double interp(const Segment& s, Curve h) const;

    const CurveSystem& sys_;
    SubdivTree& tree_;
    Isolator& iso_;
    std::vector<RootRecord> roots_;
    std::vector<PatternCase> patterns_;
    mutable std::map<std::pair<std::int64_t, std::int64_t>, std::array<int, 2>> corner_signs_;
    std::map<SegKey, int> seg_index_;
    std::vector<Segment> segs_;
    std::vector<Cell> cells_;
    std::vector<std::vector<int>> seg_cells_;  // cells having the segment on their boundary
    int bisections_ = 0;
};

/// Runs all nine stages. Errors: ResolutionLimit, BoundaryRoot, InternalError.
Arrangement build_arrangement(const CurveSystem& sys, const Box2& roi, const ArrangeOptions& opt,
                              const std::function<void(const StageEvent&)>& progress = {});

}  // namespace curvearr
