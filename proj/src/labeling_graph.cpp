#include "polycube/labeling_graph.h"

#include <algorithm>
#include <numeric>
#include <set>
#include <stdexcept>

namespace polycube {

namespace {

class UnionFind {
public:
    explicit UnionFind(index_t n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), 0); }
    index_t find(index_t x) {
        while (parent_[x] != x) {
            parent_[x] = parent_[parent_[x]];
            x = parent_[x];
        }
        return x;
    }
    void unite(index_t a, index_t b) {
        a = find(a);
        b = find(b);
        if (a != b)
            parent_[std::max(a, b)] = std::min(a, b);
    }

private:
    std::vector<index_t> parent_;
};

double unary(double score, bool positive) { return positive ? (1.0 - score) / 2.0 : (1.0 + score) / 2.0; }

// chain DP with the first label optionally forced, returns (cost, labels);
// with wrap the last edge also pays the penalty when it differs from the forced first label
std::pair<double, std::vector<bool>> chain_dp(const std::vector<double>& scores, double flip_penalty, std::optional<bool> first, bool wrap) {
    const std::size_t n = scores.size();
    constexpr double INF = std::numeric_limits<double>::infinity();
    // cost[i][d], d = 1 for '+'
    std::vector<std::array<double, 2>> cost(n);
    std::vector<std::array<bool, 2>> from_same(n);
    for (int d = 0; d < 2; ++d)
        cost[0][d] = (first && *first != (d == 1)) ? INF : unary(scores[0], d == 1);
    for (std::size_t i = 1; i < n; ++i)
        for (int d = 0; d < 2; ++d) {
            double same = cost[i - 1][d];
            double flip = cost[i - 1][1 - d] + flip_penalty;
            from_same[i][d] = same <= flip;
            cost[i][d] = std::min(same, flip) + unary(scores[i], d == 1);
        }
    std::vector<bool> labels(n);
    std::array<double, 2> last = cost[n - 1];
    if (wrap && first && n > 1)
        last[*first ? 0 : 1] += flip_penalty;
    int d = last[1] <= last[0] ? 1 : 0;
    double total = last[d];
    for (std::size_t i = n; i-- > 0;) {
        labels[i] = d == 1;
        if (i > 0 && !from_same[i][d])
            d = 1 - d;
    }
    return {total, labels};
}

} // namespace

std::vector<bool> chain_directions(const std::vector<double>& scores, double flip_penalty, bool cyclic) {
    if (scores.empty())
        return {};
    if (!cyclic)
        return chain_dp(scores, flip_penalty, std::nullopt, false).second;
    std::vector<bool> best;
    double best_cost = std::numeric_limits<double>::infinity();
    for (bool first : {true, false}) {
        auto [cost, labels] = chain_dp(scores, flip_penalty, first, true);
        if (cost < best_cost) {
            best_cost = cost;
            best = labels;
        }
    }
    return best;
}

double chain_cost(const std::vector<double>& scores, const std::vector<bool>& directions, double flip_penalty, bool cyclic) {
    double total = 0.0;
    for (std::size_t i = 0; i < scores.size(); ++i) {
        total += unary(scores[i], directions[i]);
        if (i > 0 && directions[i] != directions[i - 1])
            total += flip_penalty;
    }
    if (cyclic && scores.size() > 1 && directions.back() != directions.front())
        total += flip_penalty;
    return total;
}

std::vector<double> boundary_scores(const SurfaceMesh& mesh, const Boundary& boundary) {
    std::vector<double> scores;
    if (!boundary.axis)
        return scores;
    vec3 axis = direction(*boundary.axis);
    for (index_t h : boundary.halfedges)
        scores.push_back(mesh.vector(h).normalized().dot(axis));
    return scores;
}

LabelingGraph::LabelingGraph(const SurfaceMesh& mesh, const Labeling& labeling, const GraphOptions& options)
    : labeling_(labeling), options_(options) {
    check_labeling_size(mesh, labeling);
    const index_t nt = mesh.nb_triangles();

    // charts
    UnionFind uf(nt);
    for (index_t e = 0; e < mesh.nb_edges(); ++e) {
        auto [a, b] = mesh.edge_triangles(e);
        if (labeling[a] == labeling[b])
            uf.unite(a, b);
    }
    triangle_chart_.assign(nt, NO_INDEX);
    std::vector<index_t> chart_of_root(nt, NO_INDEX);
    for (index_t t = 0; t < nt; ++t) {
        index_t root = uf.find(t);
        if (chart_of_root[root] == NO_INDEX) {
            chart_of_root[root] = static_cast<index_t>(charts_.size());
            charts_.push_back(Chart{labeling[t], {}, {}, {}, false});
        }
        triangle_chart_[t] = chart_of_root[root];
        charts_[triangle_chart_[t]].triangles.push_back(t);
    }

    // corners: vertices with at least 3 incident boundary edges
    std::vector<bool> discontinuity(mesh.nb_edges(), false);
    vertex_degree_.assign(mesh.nb_vertices(), 0);
    for (index_t e = 0; e < mesh.nb_edges(); ++e) {
        auto [a, b] = mesh.edge_triangles(e);
        if (triangle_chart_[a] != triangle_chart_[b]) {
            discontinuity[e] = true;
            auto [u, v] = mesh.edge_vertices(e);
            vertex_degree_[u]++;
            vertex_degree_[v]++;
        }
    }
    vertex_corner_.assign(mesh.nb_vertices(), NO_INDEX);
    for (index_t v = 0; v < mesh.nb_vertices(); ++v)
        if (vertex_degree_[v] >= 3) {
            vertex_corner_[v] = static_cast<index_t>(corners_.size());
            corners_.push_back(Corner{v, {}});
        }

    // boundaries
    edge_boundary_.assign(mesh.nb_edges(), NO_INDEX);
    std::vector<bool> traced(mesh.nb_edges(), false);
    auto left = [&](index_t h) { return triangle_chart_[SurfaceMesh::face(h)]; };
    auto continue_from = [&](index_t h) {
        // the other discontinuity edge at to(h), keeping the same left chart
        for (index_t g : mesh.outgoing_halfedges(mesh.to(h)))
            if (mesh.edge(g) != mesh.edge(h) && discontinuity[mesh.edge(g)] && left(g) == left(h))
                return g;
        throw std::logic_error("boundary tracing lost its way");
    };
    std::vector<Boundary> found;
    for (const Corner& corner : corners_) {
        for (index_t h : mesh.outgoing_halfedges(corner.vertex)) {
            if (!discontinuity[mesh.edge(h)] || traced[mesh.edge(h)])
                continue;
            Boundary b;
            index_t g = h;
            while (true) {
                b.halfedges.push_back(g);
                traced[mesh.edge(g)] = true;
                if (vertex_corner_[mesh.to(g)] != NO_INDEX)
                    break;
                g = continue_from(g);
            }
            if (mesh.from(b.halfedges.front()) > mesh.to(b.halfedges.back())) {
                std::reverse(b.halfedges.begin(), b.halfedges.end());
                for (auto& x : b.halfedges)
                    x = mesh.opposite(x);
            }
            b.start_corner = vertex_corner_[mesh.from(b.halfedges.front())];
            b.end_corner = vertex_corner_[mesh.to(b.halfedges.back())];
            found.push_back(std::move(b));
        }
    }
    // closed loops, starting from their lowest vertex
    for (index_t v = 0; v < mesh.nb_vertices(); ++v) {
        while (true) {
            std::optional<index_t> start;
            for (index_t h : mesh.outgoing_halfedges(v))
                if (discontinuity[mesh.edge(h)] && !traced[mesh.edge(h)] && (!start || left(h) < left(*start)))
                    start = h;
            if (!start)
                break;
            Boundary b;
            index_t g = *start;
            while (true) {
                b.halfedges.push_back(g);
                traced[mesh.edge(g)] = true;
                if (mesh.to(g) == v)
                    break;
                g = continue_from(g);
            }
            found.push_back(std::move(b));
        }
    }
    std::vector<index_t> min_edge(found.size());
    for (std::size_t i = 0; i < found.size(); ++i) {
        index_t m = NO_INDEX;
        for (index_t h : found[i].halfedges)
            m = std::min(m, mesh.edge(h));
        min_edge[i] = m;
    }
    std::vector<index_t> order(found.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](index_t a, index_t b) { return min_edge[a] < min_edge[b]; });
    for (index_t i : order)
        boundaries_.push_back(std::move(found[i]));

    for (index_t id = 0; id < boundaries_.size(); ++id) {
        Boundary& b = boundaries_[id];
        b.left_chart = left(b.halfedges.front());
        b.right_chart = triangle_chart_[SurfaceMesh::face(mesh.opposite(b.halfedges.front()))];
        b.axis = third_axis(axis_of(charts_[b.left_chart].label), axis_of(charts_[b.right_chart].label));
        b.on_feature_edges = true;
        for (index_t h : b.halfedges) {
            edge_boundary_[mesh.edge(h)] = id;
            b.on_feature_edges = b.on_feature_edges && mesh.is_feature_edge(mesh.edge(h));
        }
        for (index_t c : {b.left_chart, b.right_chart})
            charts_[c].boundaries.push_back(id);
        charts_[b.left_chart].neighbors.push_back(b.right_chart);
        charts_[b.right_chart].neighbors.push_back(b.left_chart);
    }
    for (Chart& chart : charts_) {
        std::sort(chart.neighbors.begin(), chart.neighbors.end());
        chart.neighbors.erase(std::unique(chart.neighbors.begin(), chart.neighbors.end()), chart.neighbors.end());
        std::sort(chart.boundaries.begin(), chart.boundaries.end());
        chart.boundaries.erase(std::unique(chart.boundaries.begin(), chart.boundaries.end()), chart.boundaries.end());
        chart.surrounded_by_feature_edges = !chart.boundaries.empty();
        for (index_t b : chart.boundaries)
            chart.surrounded_by_feature_edges = chart.surrounded_by_feature_edges && boundaries_[b].on_feature_edges;
    }

    for (Corner& corner : corners_)
        for (index_t h : mesh.outgoing_halfedges(corner.vertex)) {
            index_t b = edge_boundary_[mesh.edge(h)];
            if (b == NO_INDEX)
                continue;
            // only the first halfedge of a boundary leaves a corner
            bool outgoing = boundaries_[b].halfedges.front() == h;
            corner.incidences.push_back({b, outgoing});
        }

    // turning-points
    for (Boundary& b : boundaries_) {
        if (!b.axis)
            continue;
        std::vector<bool> dirs = chain_directions(boundary_scores(mesh, b), options_.flip_penalty, b.is_closed());
        for (std::size_t i = 0; i < dirs.size(); ++i) {
            if (i == 0 && !b.is_closed())
                continue;
            bool previous = i == 0 ? dirs.back() : dirs[i - 1];
            if (previous == dirs[i])
                continue;
            index_t out = b.halfedges[i];
            index_t in = b.halfedges[i == 0 ? b.halfedges.size() - 1 : i - 1];
            // left side: counterclockwise from the outgoing halfedge up to the reversed incoming one
            double left_sum = 0.0, right_sum = 0.0;
            bool on_left = true;
            for (index_t h = out;;) {
                if (h == mesh.opposite(in))
                    on_left = false;
                (on_left ? left_sum : right_sum) += mesh.corner_angle(h);
                h = mesh.next_ccw(h);
                if (h == out)
                    break;
            }
            b.turning_points.push_back({mesh.from(out), static_cast<index_t>(i), right_sum > left_sum});
        }
    }
}

std::vector<index_t> LabelingGraph::boundary_vertices(const SurfaceMesh& mesh, index_t b) const {
    const Boundary& boundary = boundaries_.at(b);
    std::vector<index_t> vertices;
    for (index_t h : boundary.halfedges)
        vertices.push_back(mesh.from(h));
    if (!boundary.is_closed())
        vertices.push_back(mesh.to(boundary.halfedges.back()));
    return vertices;
}

std::size_t LabelingGraph::turning_point_count() const {
    std::size_t n = 0;
    for (const Boundary& b : boundaries_)
        n += b.turning_points.size();
    return n;
}

std::optional<std::pair<index_t, TurningPoint>> LabelingGraph::turning_point_at(index_t vertex) const {
    for (index_t b = 0; b < boundaries_.size(); ++b)
        for (const TurningPoint& tp : boundaries_[b].turning_points)
            if (tp.vertex == vertex)
                return std::make_pair(b, tp);
    return std::nullopt;
}

std::vector<std::vector<index_t>> chart_contour(const SurfaceMesh& mesh, const LabelingGraph& graph, index_t chart) {
    std::vector<std::vector<index_t>> cycles;
    std::set<index_t> visited;
    auto inside = [&](index_t h) { return graph.chart_of(SurfaceMesh::face(h)) == chart; };
    for (index_t t : graph.chart(chart).triangles)
        for (int k = 0; k < 3; ++k) {
            index_t start = 3 * t + k;
            if (inside(mesh.opposite(start)) || visited.count(start))
                continue;
            std::vector<index_t> cycle;
            index_t h = start;
            do {
                cycle.push_back(h);
                visited.insert(h);
                // rotate around the tip until leaving the chart
                index_t g = SurfaceMesh::next(h);
                while (inside(mesh.opposite(g)))
                    g = SurfaceMesh::next(mesh.opposite(g));
                h = g;
            } while (h != start);
            cycles.push_back(std::move(cycle));
        }
    return cycles;
}

bool chart_is_disk(const SurfaceMesh& mesh, const LabelingGraph& graph, index_t chart) {
    const Chart& c = graph.chart(chart);
    std::set<index_t> vertices, edges;
    for (index_t t : c.triangles)
        for (int k = 0; k < 3; ++k) {
            vertices.insert(mesh.triangle(t)[k]);
            edges.insert(mesh.edge(3 * t + k));
        }
    long euler = static_cast<long>(vertices.size()) - static_cast<long>(edges.size()) + static_cast<long>(c.triangles.size());
    return euler == 1 && chart_contour(mesh, graph, chart).size() == 1;
}

} // namespace polycube
