#pragma once

// A finite dendrite (complete binary tree with level-l edges of length 3^-l)
// and the continuous surjection k = euler_tour o binary_expansion from the
// code space onto it. Everything is exact: tour parameters and edge offsets
// are rationals.

#include <optional>
#include <string>
#include <vector>

#include "cantor/coarse_graining.hpp"
#include "cantor/code_space.hpp"

namespace cantor {

class DendriteError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// beta(s) = sum s_i 2^-i.
Rational binary_expansion(const Address& a);

/// Point of the tree: `offset` along edge `edge`, measured from the parent
/// end, in (0, length]. Edge -1 is the root. A vertex v != root is
/// (v - 1, length of its edge).
struct TreePoint {
    int edge = -1;
    Rational offset = 0;

    bool is_root() const noexcept { return edge < 0; }
    friend bool operator==(const TreePoint&, const TreePoint&) = default;
};

class DendriteGraph {
public:
    struct Vertex {
        int parent = -1;
        int level = 0;
        double x = 0.0;
        double y = 0.0;
    };

    /// One pass of the closed depth-first traversal over an edge.
    struct TourStep {
        int edge = 0;
        bool down = true;
        Rational start;  // unnormalised arc length at the beginning of the pass
    };

    /// Complete binary tree of depth L with heap vertex numbering (children
    /// of v are 2v+1, 2v+2; edge e leads into vertex e+1).
    explicit DendriteGraph(int depth);

    int depth() const noexcept { return depth_; }
    std::size_t vertex_count() const noexcept { return vertices_.size(); }
    std::size_t edge_count() const noexcept { return vertices_.size() - 1; }
    const Vertex& vertex(std::size_t v) const { return vertices_.at(v); }
    const std::vector<Vertex>& vertices() const noexcept { return vertices_; }
    std::vector<int> children(int v) const;

    const Rational& edge_length(int e) const { return lengths_.at(static_cast<std::size_t>(e)); }
    int edge_child(int e) const noexcept { return e + 1; }
    int edge_parent(int e) const { return vertices_.at(static_cast<std::size_t>(e) + 1).parent; }

    Rational total_edge_length() const;
    /// Unnormalised length of the closed tour, twice the total edge length.
    const Rational& tour_length() const noexcept { return tour_length_; }
    const std::vector<TourStep>& tour() const noexcept { return tour_; }

    TreePoint vertex_point(int v) const;
    TreePoint edge_point(int e, const Rational& offset) const;
    TreePoint edge_midpoint(int e) const { return edge_point(e, edge_length(e) / 2); }

    /// Throws DendriteError("point off the tree") for an invalid point.
    void validate(const TreePoint& p) const;

    /// Vertex id if p sits on a vertex.
    std::optional<int> as_vertex(const TreePoint& p) const;

    /// Geodesic distance from the root.
    Rational depth_of(const TreePoint& p) const;

    /// Planar coordinates for drawing.
    std::pair<double, double> position(const TreePoint& p) const;

private:
    int depth_;
    std::vector<Vertex> vertices_;
    std::vector<Rational> lengths_;
    std::vector<Rational> root_distance_;  // per vertex
    std::vector<TourStep> tour_;
    Rational tour_length_;
};

/// Tree geodesic distance.
Rational tree_distance(const DendriteGraph& g, const TreePoint& a, const TreePoint& b);

/// Point at normalised arc length t of the closed depth-first tour.
/// Throws DendriteError for t outside [0,1].
TreePoint euler_tour(const DendriteGraph& g, const Rational& t);

/// All t in [0,1] with euler_tour(t) == p, sorted.
std::vector<Rational> tour_parameters(const DendriteGraph& g, const TreePoint& p);

/// k(a) = euler_tour(binary_expansion(a)).
TreePoint dendrite_map(const DendriteGraph& g, const Address& a);

struct DendriteFiber {
    TreePoint target;
    std::vector<Rational> parameters;
    /// Depth-n cylinders whose tour-parameter interval contains a parameter.
    std::vector<Cylinder> cylinders;
    /// One address per parameter, exact for dyadic parameters and otherwise
    /// the binary truncation at kWitnessDepth.
    std::vector<Address> witnesses;
};

inline constexpr int kWitnessDepth = 40;

/// Part of k^-1(p) visible at address depth n.
DendriteFiber fiber_of(const DendriteGraph& g, const TreePoint& p, int depth);

/// Closed tour-parameter interval of a cylinder: [beta(w0^inf), beta(w1^inf)].
std::pair<Rational, Rational> cylinder_parameters(const Cylinder& c);

/// k^k on a hierarchy level: labels are pulled back to the code space through
/// the level chart and then mapped by k.
class LevelDendriteMap {
public:
    LevelDendriteMap(const HierarchyLevel& level, const DendriteGraph& graph);

    TreePoint operator()(const Address& label) const;

    /// Number of depth-n level cylinders whose image contains each point.
    std::vector<std::size_t> fiber_counts(std::span<const TreePoint> points, int depth) const;

    /// Level cylinders at depth n (below the carrier) mapping onto p.
    std::vector<Cylinder> fiber(const TreePoint& p, int depth) const;

private:
    ClopenSet carrier_;
    PrefixMap pullback_;
    const DendriteGraph* graph_;
};

LevelDendriteMap lift_to_level(const HierarchyLevel& level, const DendriteGraph& graph);

/// Every vertex followed by every edge midpoint.
std::vector<TreePoint> vertices_and_midpoints(const DendriteGraph& g);

} // namespace cantor
