#pragma once

#include <array>
#include <functional>
#include <optional>
#include <vector>

#include "curvearr/lattice.hpp"
#include "curvearr/predicates.hpp"

namespace curvearr {

enum class Dir { South = 0, East = 1, North = 2, West = 3 };

struct TreeNode {
    LRect r;
    int depth = 0;
    int parent = -1;
    std::array<int, 4> child{-1, -1, -1, -1};  // SW, SE, NW, NE
    bool on = true;
    bool conceptual = false;  // stands in for a whole extended root box
    bool pinned = false;      // root box of a standard subdivision; never split
    int region = -1;          // extended root box this node belongs to, if any
    BoxFlags flags;
    BoxClass cls = BoxClass::Unresolved;

    bool is_leaf() const { return child[0] < 0; }
};

/// The nine boxes of size 2w(B) tiling 6B and the 28 boxes of size w(B) tiling 8B minus 6B.
struct StdSubdivision {
    LRect root_box;  // 2B, also inner[4]
    std::array<LRect, 9> inner;
    std::array<LRect, 28> ring;
};

StdSubdivision std_subdivision(const LRect& b);

/// Same layout in real coordinates.
struct StdSubdivisionBoxes {
    Box2 root_box;
    std::array<Box2, 9> inner;
    std::array<Box2, 28> ring;
};
StdSubdivisionBoxes std_subdivision(const Box2& b);

/// An extended root box 8B around an aligned box B.
struct Region {
    LRect b;
    LRect b2;
    LRect b8;
    int conceptual = -1;
    std::vector<int> std_roots;
    int root_box = -1;
    int k = 0;  // conforming index, w(neighbors of 8B) = w(B)/2^k
};

/// A piece of a leaf side between two breakpoints. p0 < p1 along the side.
struct SideSegment {
    Dir side;
    std::int64_t ax0, ay0, ax1, ay1;  // endpoints, lattice coordinates, increasing
    int neighbor = -1;                 // leaf across the segment, -1 on the region boundary
};

/// Quadtree forest over the region of interest.
///
/// The main tree covers the region of interest. Extended root boxes are first turned OFF,
/// then represented by one conceptual node, then by the 37 roots of their standard
/// subdivision. Point location sends points inside an extended root box to whatever
/// currently represents it.
class SubdivTree {
public:
    explicit SubdivTree(Frame frame);

    const Frame& frame() const { return frame_; }
    int main_root() const { return 0; }
    const TreeNode& node(int id) const { return nodes_.at(static_cast<std::size_t>(id)); }
    TreeNode& node_mut(int id) { return nodes_.at(static_cast<std::size_t>(id)); }
    std::size_t size() const { return nodes_.size(); }
    Box2 box(int id) const;
    Box2 box(const LRect& r) const;

    /// Called after a split with the id of the split node; typically classifies children.
    std::function<void(int)> on_split;
    /// Called for each new root of a standard subdivision.
    std::function<void(int)> on_std_root;

    /// Splits an ON leaf into four. Conceptual and pinned nodes cannot be split.
    std::array<int, 4> expand(int leaf);
    /// Number of expand() calls so far.
    long expansions() const { return expansions_; }

    /// Active cell containing the point (doubled lattice coordinates, both odd). -1 outside.
    int locate2(std::int64_t px2, std::int64_t py2) const;
    /// Node of the main tree with exactly this rectangle, or -1.
    int find_node(const LRect& r) const;
    /// Same, expanding leaves on the way down as needed.
    int find_or_make(const LRect& r);

    /// Active cells (ON leaves, conceptual nodes) adjacent across one side, in increasing
    /// coordinate order.
    std::vector<int> side_neighbors(int id, Dir d) const;
    /// All distinct adjacent cells (sharing a 1-dimensional piece of boundary).
    std::vector<int> neighbors(int id) const;
    /// Two extreme neighbors per side (first and last along the side), -1 when absent.
    /// Order: S-first, S-last, E-first, E-last, N-first, N-last, W-first, W-last.
    std::array<int, 8> extreme_neighbors(int id) const;

    /// Active cells: ON leaves of all trees plus live conceptual nodes, in id order.
    std::vector<int> active_cells() const;
    bool is_active(int id) const;

    /// Standard balancing from the given queue: deeper first, ties by (y0, x0).
    /// Conceptual nodes force all their neighbors to a common depth (depth(C) - 1).
    void balance(const std::vector<int>& queue);
    /// max |depth(a) - depth(b)| over adjacent active ON leaves.
    int max_depth_gap() const;

    // Extended root boxes.
    int add_region(const LRect& b);
    const std::vector<Region>& regions() const { return regions_; }
    Region& region(int r) { return regions_.at(static_cast<std::size_t>(r)); }
    /// Turns every leaf inside 8B OFF, splitting leaves that straddle its boundary.
    void prune_region(int r);
    /// Adds the conceptual node of region r with depth max(m, l+1) + 1, m the deepest neighbor.
    int add_conceptual(int r);
    /// Computes k for every region from its conceptual node.
    void finish_external_conform();
    /// Replaces the conceptual node by the 37 roots of Std(B) and pins the root box.
    void install_std(int r);

    /// Segments of a leaf boundary, counter-clockwise starting at the south-west corner.
    std::vector<SideSegment> segments(int id) const;

private:
    int new_node(const LRect& r, int depth, int parent);
    int descend(int start, std::int64_t px2, std::int64_t py2) const;
    int descend_step(int id, const LRect& r) const;
    void mark_off(int id, int r);
    void prune_rec(int id, int r);

    Frame frame_;
    std::vector<TreeNode> nodes_;
    std::vector<Region> regions_;
    long expansions_ = 0;
};

const char* to_string(Dir d);

}  // namespace curvearr
