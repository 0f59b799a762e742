#include "cantor/render.hpp"

#include <algorithm>
#include <cstdio>
#include <sstream>

#include <spdlog/spdlog.h>

#include "cantor/dendrite.hpp"

namespace cantor {

namespace {

// Fixed-precision number formatting keeps the output byte-stable.
std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.4f", v);
    return buf;
}

class Svg {
public:
    Svg(double width, double height) {
        os_ << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
            << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << num(width) << "\" height=\"" << num(height)
            << "\" viewBox=\"0 0 " << num(width) << ' ' << num(height) << "\">\n"
            << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    }

    Svg& raw(const std::string& s) {
        os_ << s << '\n';
        return *this;
    }

    Svg& text(double x, double y, const std::string& body, const std::string& extra = {}) {
        os_ << "<text x=\"" << num(x) << "\" y=\"" << num(y) << "\" font-family=\"serif\" font-size=\"14\""
            << (extra.empty() ? "" : " ") << extra << '>' << body << "</text>\n";
        return *this;
    }

    std::string str() {
        os_ << "</svg>\n";
        return os_.str();
    }

private:
    std::ostringstream os_;
};

std::string sup(const std::string& base, const std::string& upper, const std::string& lower = {}) {
    std::string s = base;
    if (!lower.empty())
        s += "<tspan baseline-shift=\"sub\" font-size=\"10\">" + lower + "</tspan>";
    if (!upper.empty())
        s += "<tspan baseline-shift=\"super\" font-size=\"10\">" + upper + "</tspan>";
    return s;
}

std::vector<HierarchyLevel> levels_or_base(const RunConfig& c, const WeakContractionSystem& sys) {
    try {
        return build_hierarchy(sys, HierarchyConfig{c.partition_n, c.levels, c.policy, c.representatives});
    } catch (const QuotientError& e) {
        spdlog::warn("hierarchy unavailable ({}); rendering the base level only", e.what());
        HierarchyLevel base;
        base.name = "S";
        base.carrier = ClopenSet::full();
        return {base};
    }
}

// Light yellow to dark red.
std::string heat(double f) {
    const int r = static_cast<int>(255 - 90 * f);
    const int g = static_cast<int>(240 - 220 * f);
    const int b = static_cast<int>(180 - 160 * f);
    char buf[16];
    std::snprintf(buf, sizeof buf, "#%02x%02x%02x", r, g, b);
    return buf;
}

} // namespace

std::string render_cantor_bars(const RunConfig& c) {
    validate(c);
    const auto sys = inverse_branches({c.mu});
    const int rows = std::min(c.depth, 12);
    const double left = 20.0;
    const double width = 760.0;
    const double row_h = 14.0;
    const double gap = 12.0;
    Svg svg(left * 2 + width, 40.0 + (rows + 1) * (row_h + gap));
    svg.text(left, 20.0, "Invariant cover, mu = " + num(c.mu));
    for (int n = 0; n <= rows; ++n) {
        const auto cover = invariant_cover(sys, n);
        const double y = 30.0 + n * (row_h + gap);
        std::ostringstream row;
        row << "<g class=\"row\" data-row=\"" << n << "\">";
        for (const auto& iv : cover.intervals)
            row << "\n<rect class=\"bar\" x=\"" << num(left + iv.lo * width) << "\" y=\"" << num(y) << "\" width=\""
                << num(std::max((iv.hi - iv.lo) * width, 0.05)) << "\" height=\"" << num(row_h)
                << "\" fill=\"black\"/>";
        row << "\n</g>";
        svg.raw(row.str());
    }
    return svg.str();
}

std::string render_logistic(const RunConfig& c) {
    validate(c);
    const QuadraticParams p{c.mu};
    const auto sys = inverse_branches(p);
    const double size = 400.0;
    const double pad = 40.0;
    const double top = c.mu / 4.0;
    auto X = [&](double x) { return pad + x * size; };
    auto Y = [&](double y) { return pad + (top - y) / top * size; };

    Svg svg(size + 2 * pad, size + 2 * pad);
    const double a = sys.apply(0, 1.0);
    const double b = sys.apply(1, 1.0);
    svg.raw("<rect class=\"escape\" x=\"" + num(X(a)) + "\" y=\"" + num(Y(top)) + "\" width=\"" +
            num(X(b) - X(a)) + "\" height=\"" + num(size) + "\" fill=\"#eeeeee\"/>");
    svg.raw("<line class=\"axis\" x1=\"" + num(X(0)) + "\" y1=\"" + num(Y(0)) + "\" x2=\"" + num(X(1)) + "\" y2=\"" +
            num(Y(0)) + "\" stroke=\"black\"/>");
    svg.raw("<line class=\"unit\" x1=\"" + num(X(0)) + "\" y1=\"" + num(Y(1)) + "\" x2=\"" + num(X(1)) + "\" y2=\"" +
            num(Y(1)) + "\" stroke=\"gray\" stroke-dasharray=\"4 3\"/>");
    svg.raw("<line class=\"diagonal\" x1=\"" + num(X(0)) + "\" y1=\"" + num(Y(0)) + "\" x2=\"" + num(X(1)) +
            "\" y2=\"" + num(Y(1)) + "\" stroke=\"gray\"/>");
    std::ostringstream pts;
    for (int i = 0; i <= 200; ++i) {
        const double x = i / 200.0;
        pts << (i ? " " : "") << num(X(x)) << ',' << num(Y(logistic(p, x)));
    }
    svg.raw("<polyline class=\"map\" fill=\"none\" stroke=\"black\" stroke-width=\"1.5\" points=\"" + pts.str() +
            "\"/>");
    svg.text(pad, pad - 12, sup("F", "", "mu") + "(x) = " + num(c.mu) + " x(1 - x)");
    return svg.str();
}

std::string render_hierarchy(const RunConfig& c) {
    validate(c);
    const auto sys = inverse_branches({c.mu});
    const auto levels = levels_or_base(c, sys);
    const double node_w = 70.0;
    const double node_h = 40.0;
    const double step = 160.0;
    const double y = 120.0;
    Svg svg(60.0 + step * static_cast<double>(levels.size()), 220.0);
    svg.raw("<defs><marker id=\"arrow\" viewBox=\"0 0 10 10\" refX=\"10\" refY=\"5\" markerWidth=\"8\" "
            "markerHeight=\"8\" orient=\"auto\"><path d=\"M0,0 L10,5 L0,10 z\"/></marker></defs>");

    for (std::size_t k = 0; k < levels.size(); ++k) {
        const auto& lvl = levels[k];
        const double x = 40.0 + step * static_cast<double>(k);
        const std::string name = k == 0 ? "S" : sup("D", std::to_string(k));
        svg.raw("<g class=\"level\" id=\"level-" + lvl.name + "\">");
        svg.raw("<rect x=\"" + num(x) + "\" y=\"" + num(y) + "\" width=\"" + num(node_w) + "\" height=\"" +
                num(node_h) + "\" rx=\"8\" fill=\"none\" stroke=\"black\"/>");
        svg.text(x + node_w / 2 - 10, y + node_h / 2 + 5, name);
        svg.raw("</g>");

        for (std::size_t j = 0; j < lvl.contractions.size(); ++j) {
            const double cx = x + node_w * (j == 0 ? 0.25 : 0.75);
            const std::string label =
                k == 0 ? sup("f", "", std::to_string(j + 1)) : sup("f", std::to_string(k), std::to_string(j + 1));
            svg.raw("<g class=\"contraction\">");
            svg.raw("<path d=\"M" + num(cx - 8) + ',' + num(y) + " C" + num(cx - 22) + ',' + num(y - 45) + ' ' +
                    num(cx + 22) + ',' + num(y - 45) + ' ' + num(cx + 8) + ',' + num(y) +
                    "\" fill=\"none\" stroke=\"black\" marker-end=\"url(#arrow)\"/>");
            svg.text(cx - 8, y - 42, label);
            svg.raw("</g>");
        }

        if (k + 1 < levels.size()) {
            const double x1 = x + node_w;
            const double x2 = x + step;
            svg.raw("<g class=\"homeomorphism\">");
            svg.raw("<line x1=\"" + num(x1) + "\" y1=\"" + num(y + node_h / 2) + "\" x2=\"" + num(x2) + "\" y2=\"" +
                    num(y + node_h / 2) + "\" stroke=\"black\" marker-end=\"url(#arrow)\"/>");
            svg.text((x1 + x2) / 2 - 8, y + node_h / 2 + 22, sup("h", std::to_string(k + 1)));
            svg.raw("</g>");
        }
    }
    return svg.str();
}

std::string render_dendrite(const RunConfig& c) {
    validate(c);
    const auto sys = inverse_branches({c.mu});
    const auto levels = levels_or_base(c, sys);
    const DendriteGraph g(c.dendrite_depth);
    const int depth = std::min(2 * c.dendrite_depth + 4, kMaxEnumerationDepth);

    double xmin = 0, xmax = 0, ymin = 0, ymax = 0;
    for (const auto& v : g.vertices()) {
        xmin = std::min(xmin, v.x);
        xmax = std::max(xmax, v.x);
        ymin = std::min(ymin, v.y);
        ymax = std::max(ymax, v.y);
    }
    const double panel = 300.0;
    const double margin = 20.0;
    const double scale = (panel - 2 * margin) / std::max({xmax - xmin, ymax - ymin, 1e-9});

    std::vector<TreePoint> vpoints;
    for (std::size_t v = 0; v < g.vertex_count(); ++v)
        vpoints.push_back(g.vertex_point(static_cast<int>(v)));

    Svg svg(panel * static_cast<double>(levels.size()), panel + 30.0);
    for (std::size_t k = 0; k < levels.size(); ++k) {
        const double ox = panel * static_cast<double>(k);
        auto px = [&](double x) { return ox + margin + (x - xmin) * scale; };
        auto py = [&](double y) { return 30.0 + margin + (ymax - y) * scale; };
        const auto counts = lift_to_level(levels[k], g).fiber_counts(vpoints, depth);
        const double top = static_cast<double>(std::max<std::size_t>(1, *std::max_element(counts.begin(), counts.end())));

        svg.raw("<g class=\"panel\" id=\"panel-" + levels[k].name + "\">");
        svg.text(ox + margin, 20.0, k == 0 ? "k : S -> tree" : sup("k", std::to_string(k)) + " : " +
                                                                    sup("D", std::to_string(k)) + " -> tree");
        for (std::size_t e = 0; e < g.edge_count(); ++e) {
            const auto& a = g.vertex(static_cast<std::size_t>(g.edge_parent(static_cast<int>(e))));
            const auto& b = g.vertex(e + 1);
            svg.raw("<line class=\"edge\" x1=\"" + num(px(a.x)) + "\" y1=\"" + num(py(a.y)) + "\" x2=\"" +
                    num(px(b.x)) + "\" y2=\"" + num(py(b.y)) + "\" stroke=\"black\"/>");
        }
        for (std::size_t v = 0; v < g.vertex_count(); ++v) {
            const auto& vx = g.vertex(v);
            svg.raw("<circle class=\"vertex\" data-fiber=\"" + std::to_string(counts[v]) + "\" cx=\"" +
                    num(px(vx.x)) + "\" cy=\"" + num(py(vx.y)) + "\" r=\"4\" fill=\"" +
                    heat(static_cast<double>(counts[v]) / top) + "\" stroke=\"black\" stroke-width=\"0.5\"/>");
        }
        svg.raw("</g>");
    }
    return svg.str();
}

} // namespace cantor
