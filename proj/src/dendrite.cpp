#include "cantor/dendrite.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "cantor/kernels.hpp"

namespace cantor {

namespace {

using boost::multiprecision::cpp_int;

Rational pow_inv(int base, int n) {
    cpp_int d = 1;
    for (int i = 0; i < n; ++i)
        d *= base;
    return Rational(1, d);
}

cpp_int floor_of(const Rational& x) {
    return boost::multiprecision::numerator(x) / boost::multiprecision::denominator(x);
}

Word to_bits(cpp_int m, int width) {
    Word w(static_cast<std::size_t>(width), '0');
    for (int i = width - 1; i >= 0; --i) {
        w[static_cast<std::size_t>(i)] = (m & 1) != 0 ? '1' : '0';
        m >>= 1;
    }
    return w;
}

bool is_ancestor(const DendriteGraph& g, int u, int v) {
    while (v >= 0) {
        if (v == u)
            return true;
        v = g.vertex(static_cast<std::size_t>(v)).parent;
    }
    return false;
}

int lca(const DendriteGraph& g, int u, int v) {
    while (!is_ancestor(g, u, v))
        u = g.vertex(static_cast<std::size_t>(u)).parent;
    return u;
}

// Lower endpoint of the edge carrying p (the root for the root point).
int carrier_vertex(const TreePoint& p) {
    return p.is_root() ? 0 : p.edge + 1;
}

} // namespace

Rational binary_expansion(const Address& a) {
    const Word& p = a.prefix();
    cpp_int num = 0;
    for (char s : p)
        num = num * 2 + (s == '1' ? 1 : 0);
    if (a.tail() == '1')
        num += 1;
    return Rational(num, cpp_int(1) << p.size());
}

// ---------------------------------------------------------------- graph

DendriteGraph::DendriteGraph(int depth) : depth_(depth) {
    if (depth < 0)
        throw DendriteError("dendrite depth must be non-negative");
    const std::size_t n = (std::size_t{1} << (depth + 1)) - 1;
    vertices_.resize(n);
    root_distance_.assign(n, Rational(0));
    std::vector<double> angle(n, std::numbers::pi / 2);
    for (std::size_t v = 1; v < n; ++v) {
        const auto parent = static_cast<int>((v - 1) / 2);
        Vertex& vx = vertices_[v];
        vx.parent = parent;
        vx.level = vertices_[static_cast<std::size_t>(parent)].level + 1;
        lengths_.push_back(pow_inv(3, vx.level));
        root_distance_[v] = root_distance_[static_cast<std::size_t>(parent)] + lengths_.back();

        // Fan children out symmetrically around the parent direction.
        const double spread = (std::numbers::pi / 4) * std::pow(0.75, vx.level - 1);
        const bool left = (v % 2) == 1;
        angle[v] = angle[static_cast<std::size_t>(parent)] + (left ? spread : -spread);
        const double len = std::pow(3.0, -vx.level);
        vx.x = vertices_[static_cast<std::size_t>(parent)].x + len * std::cos(angle[v]);
        vx.y = vertices_[static_cast<std::size_t>(parent)].y + len * std::sin(angle[v]);
    }

    // Closed depth-first tour, children left to right.
    Rational s = 0;
    auto walk = [&](auto&& self, int v) -> void {
        for (int c : children(v)) {
            const int e = c - 1;
            tour_.push_back({e, true, s});
            s += lengths_[static_cast<std::size_t>(e)];
            self(self, c);
            tour_.push_back({e, false, s});
            s += lengths_[static_cast<std::size_t>(e)];
        }
    };
    walk(walk, 0);
    tour_length_ = s;
}

std::vector<int> DendriteGraph::children(int v) const {
    std::vector<int> out;
    for (int c = 2 * v + 1; c <= 2 * v + 2; ++c)
        if (static_cast<std::size_t>(c) < vertices_.size())
            out.push_back(c);
    return out;
}

Rational DendriteGraph::total_edge_length() const {
    Rational sum = 0;
    for (const auto& l : lengths_)
        sum += l;
    return sum;
}

TreePoint DendriteGraph::vertex_point(int v) const {
    if (v < 0 || static_cast<std::size_t>(v) >= vertices_.size())
        throw DendriteError("vertex out of range");
    if (v == 0)
        return TreePoint{};
    return TreePoint{v - 1, edge_length(v - 1)};
}

TreePoint DendriteGraph::edge_point(int e, const Rational& offset) const {
    if (e < 0 || static_cast<std::size_t>(e) >= edge_count())
        throw DendriteError("edge out of range");
    if (offset < 0 || offset > edge_length(e))
        throw DendriteError("point off the tree");
    if (offset == 0)
        return vertex_point(edge_parent(e));
    return TreePoint{e, offset};
}

void DendriteGraph::validate(const TreePoint& p) const {
    if (p.is_root()) {
        if (p.edge != -1 || p.offset != 0)
            throw DendriteError("point off the tree");
        return;
    }
    if (static_cast<std::size_t>(p.edge) >= edge_count() || p.offset <= 0 || p.offset > edge_length(p.edge))
        throw DendriteError("point off the tree");
}

std::optional<int> DendriteGraph::as_vertex(const TreePoint& p) const {
    if (p.is_root())
        return 0;
    if (p.offset == edge_length(p.edge))
        return p.edge + 1;
    return std::nullopt;
}

Rational DendriteGraph::depth_of(const TreePoint& p) const {
    if (p.is_root())
        return 0;
    return root_distance_[static_cast<std::size_t>(edge_parent(p.edge))] + p.offset;
}

std::pair<double, double> DendriteGraph::position(const TreePoint& p) const {
    if (p.is_root())
        return {vertices_[0].x, vertices_[0].y};
    const Vertex& a = vertices_[static_cast<std::size_t>(edge_parent(p.edge))];
    const Vertex& b = vertices_[static_cast<std::size_t>(edge_child(p.edge))];
    const double f = (p.offset / edge_length(p.edge)).convert_to<double>();
    return {a.x + f * (b.x - a.x), a.y + f * (b.y - a.y)};
}

Rational tree_distance(const DendriteGraph& g, const TreePoint& a, const TreePoint& b) {
    g.validate(a);
    g.validate(b);
    const int ca = carrier_vertex(a);
    const int cb = carrier_vertex(b);
    const Rational da = g.depth_of(a);
    const Rational db = g.depth_of(b);
    const int m = lca(g, ca, cb);
    if (m == ca || m == cb) {
        const Rational d = da - db;
        return d < 0 ? Rational(-d) : d;
    }
    return da + db - 2 * g.depth_of(g.vertex_point(m));
}

// ---------------------------------------------------------------- tour

TreePoint euler_tour(const DendriteGraph& g, const Rational& t) {
    if (t < 0 || t > 1)
        throw DendriteError("tour parameter outside [0,1]");
    const auto& tour = g.tour();
    if (tour.empty())
        return TreePoint{};
    const Rational s = t * g.tour_length();
    auto it = std::upper_bound(tour.begin(), tour.end(), s,
                               [](const Rational& v, const DendriteGraph::TourStep& st) { return v < st.start; });
    const auto& step = *std::prev(it);
    const Rational along = s - step.start;
    const Rational& len = g.edge_length(step.edge);
    return g.edge_point(step.edge, step.down ? along : len - along);
}

std::vector<Rational> tour_parameters(const DendriteGraph& g, const TreePoint& p) {
    g.validate(p);
    const auto vertex = g.as_vertex(p);
    std::vector<Rational> s;
    for (const auto& step : g.tour()) {
        const Rational& len = g.edge_length(step.edge);
        if (p.edge == step.edge)
            s.push_back(step.down ? step.start + p.offset : step.start + len - p.offset);
        if (vertex && *vertex == g.edge_parent(step.edge))
            s.push_back(step.down ? step.start : step.start + len);
    }
    if (g.tour().empty())
        s.push_back(0);
    for (auto& v : s)
        v = g.tour().empty() ? Rational(0) : Rational(v / g.tour_length());
    std::sort(s.begin(), s.end());
    s.erase(std::unique(s.begin(), s.end()), s.end());
    return s;
}

TreePoint dendrite_map(const DendriteGraph& g, const Address& a) {
    return euler_tour(g, binary_expansion(a));
}

std::pair<Rational, Rational> cylinder_parameters(const Cylinder& c) {
    return {binary_expansion(c.min_point()), binary_expansion(c.max_point())};
}

DendriteFiber fiber_of(const DendriteGraph& g, const TreePoint& p, int depth) {
    if (depth < 0 || depth > 62)
        throw DendriteError("fiber depth out of range");
    DendriteFiber fiber{p, tour_parameters(g, p), {}, {}};

    const cpp_int scale = cpp_int(1) << depth;
    std::vector<cpp_int> cells;
    for (const auto& t : fiber.parameters) {
        const Rational x = t * Rational(scale);
        const cpp_int m = floor_of(x);
        if (m < scale)
            cells.push_back(m);
        if (m >= 1 && Rational(m) == x)
            cells.push_back(m - 1);
    }
    std::sort(cells.begin(), cells.end());
    cells.erase(std::unique(cells.begin(), cells.end()), cells.end());
    for (const auto& m : cells)
        fiber.cylinders.emplace_back(to_bits(m, depth));

    const cpp_int wscale = cpp_int(1) << kWitnessDepth;
    for (const auto& t : fiber.parameters) {
        if (t == 1) {
            fiber.witnesses.emplace_back(Word{}, '1');
            continue;
        }
        fiber.witnesses.emplace_back(to_bits(floor_of(t * Rational(wscale)), kWitnessDepth), '0');
    }
    return fiber;
}

std::vector<TreePoint> vertices_and_midpoints(const DendriteGraph& g) {
    std::vector<TreePoint> out;
    for (std::size_t v = 0; v < g.vertex_count(); ++v)
        out.push_back(g.vertex_point(static_cast<int>(v)));
    for (std::size_t e = 0; e < g.edge_count(); ++e)
        out.push_back(g.edge_midpoint(static_cast<int>(e)));
    return out;
}

// ---------------------------------------------------------------- levels

LevelDendriteMap::LevelDendriteMap(const HierarchyLevel& level, const DendriteGraph& graph)
    : carrier_(level.carrier), pullback_(level.chart.backward), graph_(&graph) {}

TreePoint LevelDendriteMap::operator()(const Address& label) const {
    return dendrite_map(*graph_, pullback_.apply(label));
}

std::vector<Cylinder> LevelDendriteMap::fiber(const TreePoint& p, int depth) const {
    const auto params = tour_parameters(*graph_, p);
    std::vector<Cylinder> out;
    for (const auto& c : carrier_.refine(static_cast<std::size_t>(depth))) {
        bool hit = false;
        const ClopenSet pulled = pullback_.apply(c);
        for (const auto& b : pulled.cylinders()) {
            const auto [lo, hi] = cylinder_parameters(b);
            for (const auto& t : params)
                hit = hit || (lo <= t && t <= hi);
        }
        if (hit)
            out.push_back(c);
    }
    return out;
}

std::vector<std::size_t> LevelDendriteMap::fiber_counts(std::span<const TreePoint> points, int depth) const {
    const auto cyl = carrier_.refine(static_cast<std::size_t>(depth));
    const auto pulled = kernels::parallel::map_cylinders(pullback_, cyl);
    std::size_t max_depth = 0;
    for (const auto& set : pulled)
        for (const auto& b : set.cylinders())
            max_depth = std::max(max_depth, b.depth());
    if (max_depth > 62)
        throw DendriteError("pulled-back cylinders too deep for a census");

    // Every level cylinder becomes the run of finest cells it covers.
    std::vector<std::uint64_t> cells;
    for (const auto& set : pulled)
        for (const auto& b : set.cylinders()) {
            std::uint64_t m = 0;
            for (char s : b.word())
                m = 2 * m + static_cast<std::uint64_t>(s - '0');
            const std::size_t shift = max_depth - b.depth();
            for (std::uint64_t i = 0; i < (std::uint64_t{1} << shift); ++i)
                cells.push_back((m << shift) + i);
        }
    std::sort(cells.begin(), cells.end());

    std::vector<std::vector<Rational>> params;
    params.reserve(points.size());
    for (const auto& p : points)
        params.push_back(tour_parameters(*graph_, p));
    return kernels::parallel::fiber_census(params, cells, static_cast<int>(max_depth));
}

LevelDendriteMap lift_to_level(const HierarchyLevel& level, const DendriteGraph& graph) {
    return LevelDendriteMap(level, graph);
}

} // namespace cantor
