#include "polycube/operators.h"

#include <algorithm>
#include <cmath>
#include <deque>
#include <map>
#include <numbers>
#include <set>

namespace polycube {

namespace {

OperatorOutcome unchanged(const Labeling& labeling) {
    return {labeling, {}, false};
}

OperatorOutcome outcome_from(const Labeling& before, Labeling after) {
    OperatorOutcome outcome{std::move(after), {}, false};
    for (index_t t = 0; t < before.size(); ++t)
        if (before[t] != outcome.labeling[t])
            outcome.changed.push_back(t);
    outcome.applied = !outcome.changed.empty();
    if (!outcome.applied)
        outcome.labeling = before;
    return outcome;
}

vec3 average_normal(const SurfaceMesh& mesh, const std::vector<index_t>& triangles) {
    vec3 sum = vec3::Zero();
    for (index_t t : triangles)
        sum += mesh.area(t) * mesh.normal(t);
    return sum.squaredNorm() > 0.0 ? vec3(sum.normalized()) : sum;
}

// candidates by decreasing fidelity of the normal, ties to the lowest encoding
std::vector<Label> rank_labels(const vec3& normal, LabelMask candidates) {
    std::vector<Label> ranked;
    for (int l = 0; l < LABEL_COUNT; ++l)
        if (candidates & (1u << l))
            ranked.push_back(static_cast<Label>(l));
    std::stable_sort(ranked.begin(), ranked.end(), [&](Label a, Label b) {
        return triangle_fidelity(normal, a) > triangle_fidelity(normal, b);
    });
    return ranked;
}

LabelMask labels_of_axis(Axis a) {
    return static_cast<LabelMask>(mask_of(label_of(a, true)) | mask_of(label_of(a, false)));
}

// triangles reachable from the seeds without crossing walls, staying inside
std::vector<index_t> flood(const SurfaceMesh& mesh, const std::vector<index_t>& seeds, const std::function<bool(index_t)>& inside,
                           const std::function<bool(index_t)>& wall_edge) {
    std::vector<bool> seen(mesh.nb_triangles(), false);
    std::deque<index_t> queue;
    for (index_t t : seeds)
        if (inside(t) && !seen[t]) {
            seen[t] = true;
            queue.push_back(t);
        }
    std::vector<index_t> region;
    while (!queue.empty()) {
        index_t t = queue.front();
        queue.pop_front();
        region.push_back(t);
        for (int k = 0; k < 3; ++k) {
            index_t h = 3 * t + k;
            index_t u = mesh.neighbor(t, k);
            if (seen[u] || wall_edge(mesh.edge(h)) || !inside(u))
                continue;
            seen[u] = true;
            queue.push_back(u);
        }
    }
    std::sort(region.begin(), region.end());
    return region;
}

std::vector<bool> turning_point_vertices(const SurfaceMesh& mesh, const LabelingGraph& graph) {
    std::vector<bool> result(mesh.nb_vertices(), false);
    for (const Boundary& b : graph.boundaries())
        for (const TurningPoint& tp : b.turning_points)
            result[tp.vertex] = true;
    return result;
}

bool touches_other_chart(const SurfaceMesh& mesh, const LabelingGraph& graph, index_t v, index_t chart) {
    for (index_t t : mesh.vertex_triangles(v))
        if (graph.chart_of(t) != chart)
            return true;
    return false;
}

} // namespace

std::string_view termination_name(TracedPath::Termination reason) {
    switch (reason) {
    case TracedPath::Termination::HitCorner:
        return "hit-corner";
    case TracedPath::Termination::HitBoundary:
        return "hit-boundary";
    case TracedPath::Termination::HitTurningPoint:
        return "hit-turning-point";
    case TracedPath::Termination::HitFeatureEdge:
        return "hit-feature-edge";
    case TracedPath::Termination::MaxSteps:
        return "max-steps";
    case TracedPath::Termination::DeadEnd:
        return "dead-end";
    }
    return "dead-end";
}

TracedPath trace_path(const SurfaceMesh& mesh, const LabelingGraph& graph, index_t start, const vec3& goal, index_t chart) {
    TracedPath path;
    path.vertices.push_back(start);
    const vec3 dir = goal.normalized();
    const std::vector<bool> turning = turning_point_vertices(mesh, graph);
    std::set<index_t> visited = {start};
    index_t v = start;
    for (index_t step = 0; step < mesh.nb_edges(); ++step) {
        std::optional<index_t> best;
        double best_dot = 0.0;
        for (index_t h : mesh.outgoing_halfedges(v)) {
            index_t w = mesh.to(h);
            if (visited.count(w))
                continue;
            // the edge must run through the chart interior
            if (graph.chart_of(SurfaceMesh::face(h)) != chart || graph.chart_of(SurfaceMesh::face(mesh.opposite(h))) != chart)
                continue;
            double dot = mesh.vector(h).normalized().dot(dir);
            if (dot <= 0.0)
                continue;
            if (!best || dot > best_dot + 1e-12 || (std::abs(dot - best_dot) <= 1e-12 && h < *best)) {
                best = h;
                best_dot = dot;
            }
        }
        if (!best) {
            path.reason = TracedPath::Termination::DeadEnd;
            return path;
        }
        index_t w = mesh.to(*best);
        path.halfedges.push_back(*best);
        path.vertices.push_back(w);
        visited.insert(w);
        v = w;
        if (graph.corner_of_vertex(w) != NO_INDEX) {
            path.reason = TracedPath::Termination::HitCorner;
            return path;
        }
        if (turning[w]) {
            path.reason = TracedPath::Termination::HitTurningPoint;
            return path;
        }
        if (touches_other_chart(mesh, graph, w, chart)) {
            path.reason = TracedPath::Termination::HitBoundary;
            return path;
        }
    }
    path.reason = TracedPath::Termination::MaxSteps;
    return path;
}

std::vector<index_t> triangles_within_rings(const SurfaceMesh& mesh, const std::vector<index_t>& seed_vertices, int rings,
                                            const std::function<bool(index_t)>& allowed) {
    std::set<index_t> region;
    std::set<index_t> frontier(seed_vertices.begin(), seed_vertices.end());
    std::set<index_t> used_vertices = frontier;
    for (int r = 0; r < rings; ++r) {
        std::set<index_t> next;
        for (index_t v : frontier)
            for (index_t t : mesh.vertex_triangles(v)) {
                if (!allowed(t) || !region.insert(t).second)
                    continue;
                for (index_t w : mesh.triangle(t))
                    if (used_vertices.insert(w).second)
                        next.insert(w);
            }
        frontier = std::move(next);
    }
    return {region.begin(), region.end()};
}

std::optional<std::vector<index_t>> lost_feature_path(const SurfaceMesh& mesh, const LabelingGraph& graph, index_t t1, index_t t2) {
    if (t1 == t2)
        return std::nullopt;
    std::map<index_t, index_t> reached_by; // vertex -> halfedge arriving there
    std::deque<index_t> queue = {t1};
    reached_by[t1] = NO_INDEX;
    while (!queue.empty()) {
        index_t v = queue.front();
        queue.pop_front();
        if (v == t2)
            break;
        for (index_t h : mesh.outgoing_halfedges(v)) {
            index_t e = mesh.edge(h);
            if (!mesh.is_feature_edge(e) || graph.is_boundary_edge(e) || reached_by.count(mesh.to(h)))
                continue;
            reached_by[mesh.to(h)] = h;
            queue.push_back(mesh.to(h));
        }
    }
    if (!reached_by.count(t2))
        return std::nullopt;
    std::vector<index_t> path;
    for (index_t v = t2; v != t1; v = mesh.from(reached_by[v]))
        path.push_back(reached_by[v]);
    std::reverse(path.begin(), path.end());
    return path;
}

OperatorOutcome fix_invalid_boundary(const SurfaceMesh& mesh, const Labeling& labeling, const LabelingGraph& graph,
                                     index_t boundary, int width, const ValidityConfig& config) {
    const Boundary& b = graph.boundary(boundary);
    if (b.axis || boundary_valid(mesh, graph, boundary, config) || width < 1)
        return unchanged(labeling);
    const Axis same = axis_of(graph.chart(b.left_chart).label);
    std::vector<index_t> strip = triangles_within_rings(mesh, graph.boundary_vertices(mesh, boundary), width, [&](index_t t) {
        return graph.chart_of(t) == b.left_chart || graph.chart_of(t) == b.right_chart;
    });
    Label label = rank_labels(average_normal(mesh, strip), static_cast<LabelMask>(ALL_LABELS & ~labels_of_axis(same))).front();
    Labeling result = labeling;
    for (index_t t : strip)
        result[t] = label;
    // the two former charts must no longer meet along the old path with the same axis
    for (index_t h : b.halfedges) {
        Label l1 = result[SurfaceMesh::face(h)], l2 = result[SurfaceMesh::face(mesh.opposite(h))];
        if (l1 != l2 && axis_of(l1) == axis_of(l2))
            return unchanged(labeling);
    }
    return outcome_from(labeling, std::move(result));
}

OperatorOutcome fix_invalid_corner(const SurfaceMesh& mesh, const Labeling& labeling, const LabelingGraph& graph,
                                   index_t corner, int radius, const ValidityConfig& config) {
    if (corner_valid(graph, corner, config) || radius < 1)
        return unchanged(labeling);
    const index_t vertex = graph.corner(corner).vertex;
    std::vector<index_t> disk = triangles_within_rings(mesh, {vertex}, radius, [](index_t) { return true; });
    std::set<index_t> in_disk(disk.begin(), disk.end());
    std::set<index_t> around;
    for (index_t t : mesh.vertex_triangles(vertex))
        around.insert(graph.chart_of(t));
    for (index_t c : around) {
        const auto& tris = graph.chart(c).triangles;
        if (std::all_of(tris.begin(), tris.end(), [&](index_t t) { return in_disk.count(t) > 0; }))
            throw OperatorError("radius exceeds adjacent charts");
    }
    std::set<index_t> disk_vertices;
    for (index_t t : disk)
        for (index_t v : mesh.triangle(t))
            disk_vertices.insert(v);

    std::optional<Labeling> fallback;
    for (Label label : rank_labels(average_normal(mesh, disk), ALL_LABELS)) {
        Labeling result = labeling;
        for (index_t t : disk)
            result[t] = label;
        LabelingGraph rebuilt(mesh, result, graph.options());
        if (rebuilt.corner_of_vertex(vertex) != NO_INDEX)
            continue;
        bool clean = true;
        for (index_t c = 0; c < rebuilt.corners().size() && clean; ++c)
            if (disk_vertices.count(rebuilt.corner(c).vertex) && !corner_valid(rebuilt, c, config))
                clean = false;
        if (clean)
            return outcome_from(labeling, std::move(result));
        if (!fallback)
            fallback = std::move(result);
    }
    if (fallback)
        return outcome_from(labeling, std::move(*fallback));
    return unchanged(labeling);
}

OperatorOutcome remove_chart(const SurfaceMesh& mesh, const Labeling& labeling, const LabelingGraph& graph, index_t chart,
                             const GraphCutParams& params) {
    const Chart& c = graph.chart(chart);
    if (c.neighbors.empty())
        return unchanged(labeling);
    LabelMask mask = 0;
    for (index_t n : c.neighbors)
        mask |= mask_of(graph.chart(n).label);
    mask &= static_cast<LabelMask>(~mask_of(c.label));
    std::vector<LabelMask> masks(c.triangles.size(), mask);
    return outcome_from(labeling, restricted_relabel(mesh, labeling, c.triangles, masks, params));
}

namespace {

double folded_angle(const vec3& v, Axis a) {
    double angle = angle_between(v, direction(a));
    return std::min(angle, std::numbers::pi - angle);
}

// first vertex index k along the polyedge where the cost of the new axis from the start
// catches up with the cost of the current axis from the far end
std::size_t equilibrium_index(const SurfaceMesh& mesh, const std::vector<index_t>& vertices, Axis new_axis, Axis current) {
    const std::size_t m = vertices.size() - 1;
    std::vector<double> edge_new(m), edge_current(m);
    for (std::size_t j = 0; j < m; ++j) {
        vec3 d = mesh.point(vertices[j + 1]) - mesh.point(vertices[j]);
        edge_new[j] = folded_angle(d, new_axis);
        edge_current[j] = folded_angle(d, current);
    }
    double from_start = 0.0;
    double from_end = 0.0;
    for (double c : edge_current)
        from_end += c;
    for (std::size_t k = 0; k <= m; ++k) {
        if (from_start >= from_end)
            return k;
        if (k < m) {
            from_start += edge_new[k];
            from_end -= edge_current[k];
        }
    }
    return m;
}

struct ValenceAttempt {
    index_t vertex;
    std::size_t cycle;
    std::size_t position; // index in the cycle of the contour halfedge leaving the vertex
    Axis current_axis;
};

OperatorOutcome try_increase_valence(const SurfaceMesh& mesh, const Labeling& labeling, const LabelingGraph& graph, index_t chart,
                                     const std::vector<index_t>& cycle, const ValenceAttempt& attempt) {
    const std::size_t n = cycle.size();
    const index_t v = attempt.vertex;
    const index_t e_in = cycle[(attempt.position + n - 1) % n];
    const index_t e_out = cycle[attempt.position];
    const vec3 e1 = (mesh.point(mesh.from(e_in)) - mesh.point(v)).normalized();
    const vec3 e2 = (mesh.point(mesh.to(e_out)) - mesh.point(v)).normalized();

    std::optional<Axis> new_axis;
    double best_alignment = -1.0;
    for (int a = 0; a < 3; ++a) {
        if (static_cast<Axis>(a) == attempt.current_axis)
            continue;
        double alignment = std::abs(e1.dot(direction(static_cast<Axis>(a)))) + std::abs(e2.dot(direction(static_cast<Axis>(a))));
        if (alignment > best_alignment + 1e-12) {
            best_alignment = alignment;
            new_axis = static_cast<Axis>(a);
        }
    }

    // polyedges from v backward and forward along the contour, up to the next corner;
    // each entry holds the contour halfedge positions walked
    auto walk = [&](bool forward) {
        std::vector<index_t> vertices = {v};
        std::vector<std::size_t> positions;
        for (std::size_t step = 0; step < n; ++step) {
            std::size_t pos = forward ? (attempt.position + step) % n : (attempt.position + n - 1 - step) % n;
            index_t h = cycle[pos];
            index_t next_vertex = forward ? mesh.to(h) : mesh.from(h);
            positions.push_back(pos);
            vertices.push_back(next_vertex);
            if (graph.corner_of_vertex(next_vertex) != NO_INDEX || next_vertex == v)
                break;
        }
        return std::make_pair(vertices, positions);
    };
    auto [back_vertices, back_positions] = walk(false);
    auto [front_vertices, front_positions] = walk(true);
    std::size_t k_back = equilibrium_index(mesh, back_vertices, *new_axis, attempt.current_axis);
    std::size_t k_front = equilibrium_index(mesh, front_vertices, *new_axis, attempt.current_axis);
    if (k_back != 0 && k_front != 0) {
        if (k_back <= k_front)
            k_back = 0;
        else
            k_front = 0;
    }
    if (k_back == 0 && k_front == 0)
        return unchanged(labeling);
    // the contour segment between the two equilibrium points lies on a single base chart
    const bool on_back = k_back != 0;
    const std::size_t k = on_back ? k_back : k_front;
    const auto& seg_positions = on_back ? back_positions : front_positions;
    const index_t equilibrium = on_back ? back_vertices[k] : front_vertices[k];
    std::vector<index_t> segment;
    for (std::size_t j = 0; j < k; ++j)
        segment.push_back(cycle[seg_positions[j]]);
    const index_t base = graph.chart_of(SurfaceMesh::face(mesh.opposite(segment.front())));
    for (index_t h : segment)
        if (graph.chart_of(SurfaceMesh::face(mesh.opposite(h))) != base)
            return unchanged(labeling);

    // tracing direction along the chart label axis, sign from the edges at v
    const vec3 label_dir = direction(graph.chart(chart).label);
    double best_pos = -2.0, best_neg = -2.0;
    for (index_t h : mesh.outgoing_halfedges(v)) {
        if (graph.chart_of(SurfaceMesh::face(h)) == chart && graph.chart_of(SurfaceMesh::face(mesh.opposite(h))) == chart)
            continue;
        double d = mesh.vector(h).normalized().dot(label_dir);
        best_pos = std::max(best_pos, d);
        best_neg = std::max(best_neg, -d);
    }
    const vec3 goal = best_pos >= best_neg ? label_dir : vec3(-label_dir);

    std::set<index_t> walls;
    TracedPath from_equilibrium = trace_path(mesh, graph, equilibrium, goal, base);
    if (!from_equilibrium.reached_target())
        return unchanged(labeling);
    for (index_t h : from_equilibrium.halfedges)
        walls.insert(mesh.edge(h));
    if (graph.corner_of_vertex(v) == NO_INDEX) {
        // v is a turning-point: no existing boundary to reuse
        TracedPath from_v = trace_path(mesh, graph, v, goal, base);
        if (!from_v.reached_target())
            return unchanged(labeling);
        for (index_t h : from_v.halfedges)
            walls.insert(mesh.edge(h));
    }
    std::vector<index_t> seeds;
    for (index_t h : segment)
        seeds.push_back(SurfaceMesh::face(mesh.opposite(h)));
    std::vector<index_t> region = flood(
        mesh, seeds, [&](index_t t) { return graph.chart_of(t) == base; }, [&](index_t e) { return walls.count(e) > 0; });
    if (region.empty() || region.size() == graph.chart(base).triangles.size())
        return unchanged(labeling);

    const Axis axis_i = axis_of(graph.chart(chart).label);
    const Axis axis_j = axis_of(graph.chart(base).label);
    LabelMask candidates = 0;
    if (auto third = third_axis(axis_i, axis_j))
        candidates = labels_of_axis(*third);
    else
        candidates = static_cast<LabelMask>(ALL_LABELS & ~labels_of_axis(axis_i));
    Label label = rank_labels(average_normal(mesh, region), candidates).front();
    Labeling result = labeling;
    for (index_t t : region)
        result[t] = label;
    LabelingGraph rebuilt(mesh, result, graph.options());
    const index_t kept = graph.chart(chart).triangles.front();
    if (rebuilt.chart(rebuilt.chart_of(kept)).valence() <= graph.chart(chart).valence())
        return unchanged(labeling);
    return outcome_from(labeling, std::move(result));
}

} // namespace

OperatorOutcome increase_chart_valence(const SurfaceMesh& mesh, const Labeling& labeling, const LabelingGraph& graph,
                                       index_t chart) {
    const Chart& c = graph.chart(chart);
    if (c.valence() >= 4 || !c.surrounded_by_feature_edges)
        return unchanged(labeling);
    const std::vector<bool> turning = turning_point_vertices(mesh, graph);
    const auto cycles = chart_contour(mesh, graph, chart);
    for (std::size_t ci = 0; ci < cycles.size(); ++ci) {
        const auto& cycle = cycles[ci];
        const std::size_t n = cycle.size();
        for (std::size_t i = 0; i < n; ++i) {
            index_t e_in = cycle[(i + n - 1) % n], e_out = cycle[i];
            index_t v = mesh.from(e_out);
            if (graph.corner_of_vertex(v) == NO_INDEX && !turning[v])
                continue;
            auto axis_in = graph.boundary(graph.boundary_of_edge(mesh.edge(e_in))).axis;
            auto axis_out = graph.boundary(graph.boundary_of_edge(mesh.edge(e_out))).axis;
            if (!axis_in || !axis_out || *axis_in != *axis_out)
                continue;
            vec3 e1 = mesh.point(mesh.from(e_in)) - mesh.point(v);
            vec3 e2 = mesh.point(mesh.to(e_out)) - mesh.point(v);
            if (angle_between(e1, e2) >= std::numbers::pi / 2)
                continue;
            OperatorOutcome outcome = try_increase_valence(mesh, labeling, graph, chart, cycle, {v, ci, i, *axis_in});
            if (outcome.applied)
                return outcome;
        }
    }
    return unchanged(labeling);
}

OperatorOutcome join_turning_points_pair(const SurfaceMesh& mesh, const Labeling& labeling, const LabelingGraph& graph,
                                         index_t t1, index_t t2) {
    if (t1 == t2 || !graph.turning_point_at(t1) || !graph.turning_point_at(t2))
        return unchanged(labeling);
    auto path = lost_feature_path(mesh, graph, t1, t2);
    if (!path)
        return unchanged(labeling);
    std::set<index_t> left_set, right_set;
    for (index_t h : *path) {
        left_set.insert(SurfaceMesh::face(h));
        right_set.insert(SurfaceMesh::face(mesh.opposite(h)));
    }
    LabelMask excluded = 0;
    for (index_t v : {t1, t2})
        for (index_t t : mesh.vertex_triangles(v))
            excluded |= mask_of(labeling[t]);
    LabelMask candidates = static_cast<LabelMask>(ALL_LABELS & ~excluded);
    if (candidates == 0)
        return unchanged(labeling);
    std::vector<index_t> left(left_set.begin(), left_set.end()), right(right_set.begin(), right_set.end());
    std::vector<index_t> both = left;
    both.insert(both.end(), right.begin(), right.end());
    Label label = rank_labels(average_normal(mesh, both), candidates).front();
    double left_fidelity = triangle_fidelity(average_normal(mesh, left), label);
    double right_fidelity = triangle_fidelity(average_normal(mesh, right), label);
    const std::set<index_t>& side = left_fidelity >= right_fidelity ? left_set : right_set;
    const std::set<index_t>& other = left_fidelity >= right_fidelity ? right_set : left_set;
    std::set<index_t> region = side;
    for (index_t t : side)
        for (index_t u : mesh.neighbors(t))
            if (!other.count(u) && graph.chart_of(u) == graph.chart_of(t))
                region.insert(u);
    Labeling result = labeling;
    for (index_t t : region)
        result[t] = label;
    LabelingGraph rebuilt(mesh, result, graph.options());
    if (rebuilt.turning_point_count() >= graph.turning_point_count())
        return unchanged(labeling);
    return outcome_from(labeling, std::move(result));
}

OperatorOutcome pull_closest_corner(const SurfaceMesh& mesh, const Labeling& labeling, const LabelingGraph& graph,
                                    index_t turning_point) {
    auto found = graph.turning_point_at(turning_point);
    if (!found)
        return unchanged(labeling);
    const auto [bid, tp] = *found;
    const Boundary& b = graph.boundary(bid);
    if (b.is_closed())
        return unchanged(labeling);
    double to_start = 0.0, to_end = 0.0;
    for (std::size_t i = 0; i < b.halfedges.size(); ++i)
        (i < tp.index ? to_start : to_end) += mesh.length(b.halfedges[i]);
    const bool at_start = to_start <= to_end;
    const index_t cid = at_start ? b.start_corner : b.end_corner;
    const Corner& corner = graph.corner(cid);

    // boundary next to b around the corner, sharing the chart the turning-point leans to
    const index_t side_chart = tp.towards_right ? b.right_chart : b.left_chart;
    const std::size_t valence = corner.valence();
    std::optional<std::size_t> position;
    for (std::size_t i = 0; i < valence; ++i)
        if (corner.incidences[i].boundary == bid && corner.incidences[i].outgoing == at_start)
            position = i;
    if (!position)
        return unchanged(labeling);
    std::optional<index_t> sibling;
    for (std::size_t offset : {std::size_t{1}, valence - 1}) {
        const auto& incidence = corner.incidences[(*position + offset) % valence];
        const Boundary& candidate = graph.boundary(incidence.boundary);
        if (incidence.boundary != bid && (candidate.left_chart == side_chart || candidate.right_chart == side_chart)) {
            sibling = incidence.boundary;
            break;
        }
    }
    if (!sibling)
        return unchanged(labeling);
    const Boundary& bs = graph.boundary(*sibling);
    const index_t target_chart = bs.left_chart == side_chart ? bs.right_chart : bs.left_chart;
    const index_t corner_vertex = corner.vertex;
    vec3 goal;
    if (bs.is_closed() || mesh.from(bs.halfedges.front()) == mesh.to(bs.halfedges.back()))
        goal = mesh.from(bs.halfedges.front()) == corner_vertex ? mesh.vector(bs.halfedges.front())
                                                                : vec3(-mesh.vector(bs.halfedges.back()));
    else if (mesh.from(bs.halfedges.front()) == corner_vertex)
        goal = mesh.point(mesh.to(bs.halfedges.back())) - mesh.point(corner_vertex);
    else
        goal = mesh.point(mesh.from(bs.halfedges.front())) - mesh.point(corner_vertex);
    if (!(goal.squaredNorm() > 0.0))
        return unchanged(labeling);

    std::set<index_t> walls;
    if (turning_point != corner_vertex) {
        TracedPath path = trace_path(mesh, graph, turning_point, goal, side_chart);
        if (!path.reached_target())
            return unchanged(labeling);
        for (index_t h : path.halfedges)
            walls.insert(mesh.edge(h));
    }
    std::vector<index_t> seeds;
    for (index_t h : bs.halfedges)
        for (index_t t : {SurfaceMesh::face(h), SurfaceMesh::face(mesh.opposite(h))})
            if (graph.chart_of(t) == side_chart)
                seeds.push_back(t);
    std::vector<index_t> region = flood(
        mesh, seeds, [&](index_t t) { return graph.chart_of(t) == side_chart; }, [&](index_t e) { return walls.count(e) > 0; });
    if (region.empty() || region.size() == graph.chart(side_chart).triangles.size())
        return unchanged(labeling);
    Labeling result = labeling;
    for (index_t t : region)
        result[t] = graph.chart(target_chart).label;
    LabelingGraph rebuilt(mesh, result, graph.options());
    if (rebuilt.turning_point_count() >= graph.turning_point_count())
        return unchanged(labeling);
    return outcome_from(labeling, std::move(result));
}

OperatorOutcome move_boundary_near_turning_point(const SurfaceMesh& mesh, const Labeling& labeling,
                                                 const LabelingGraph& graph, index_t turning_point, int radius) {
    auto found = graph.turning_point_at(turning_point);
    if (!found || radius < 1)
        return unchanged(labeling);
    const auto [bid, tp] = *found;
    const Boundary& b = graph.boundary(bid);
    const std::size_t n = b.halfedges.size();
    index_t out = b.halfedges[tp.index];
    index_t in = b.halfedges[(tp.index + n - 1) % n];
    if (mesh.is_feature_edge(mesh.edge(out)) || mesh.is_feature_edge(mesh.edge(in)))
        return unchanged(labeling);
    std::array<double, LABEL_COUNT> angle_sum{};
    for (index_t h : mesh.outgoing_halfedges(turning_point))
        angle_sum[to_int(labeling[SurfaceMesh::face(h)])] += mesh.corner_angle(h);
    Label left = graph.chart(b.left_chart).label, right = graph.chart(b.right_chart).label;
    double left_sum = angle_sum[to_int(left)], right_sum = angle_sum[to_int(right)];
    bool left_wins = left_sum > right_sum || (left_sum == right_sum && to_int(left) < to_int(right));
    const Label winner = left_wins ? left : right;
    const index_t loser_chart = left_wins ? b.right_chart : b.left_chart;
    for (int r = 1; r <= radius; ++r) {
        std::vector<index_t> region = triangles_within_rings(mesh, {turning_point}, r, [&](index_t t) { return graph.chart_of(t) == loser_chart; });
        Labeling result = labeling;
        for (index_t t : region)
            result[t] = winner;
        LabelingGraph rebuilt(mesh, result, graph.options());
        if (rebuilt.turning_point_count() < graph.turning_point_count())
            return outcome_from(labeling, std::move(result));
    }
    return unchanged(labeling);
}

OperatorOutcome straighten_boundary(const SurfaceMesh& mesh, const Labeling& labeling, const LabelingGraph& graph,
                                    index_t boundary) {
    const Boundary& b = graph.boundary(boundary);
    if (b.is_closed() || b.on_feature_edges || b.start_corner == b.end_corner)
        return unchanged(labeling);
    const index_t start = graph.corner(b.start_corner).vertex;
    const index_t end = graph.corner(b.end_corner).vertex;
    auto in_pair = [&](index_t t) { return graph.chart_of(t) == b.left_chart || graph.chart_of(t) == b.right_chart; };
    auto free_vertex = [&](index_t v) {
        for (index_t t : mesh.vertex_triangles(v))
            if (!in_pair(t))
                return false;
        return true;
    };
    std::vector<index_t> path;
    std::set<index_t> visited = {start};
    index_t v = start;
    while (v != end) {
        if (path.size() >= b.halfedges.size())
            return unchanged(labeling); // no shorter path
        std::optional<index_t> best;
        double best_distance = std::numeric_limits<double>::infinity();
        for (index_t h : mesh.outgoing_halfedges(v)) {
            index_t w = mesh.to(h);
            if (visited.count(w) || (w != end && !free_vertex(w)))
                continue;
            if (!in_pair(SurfaceMesh::face(h)) || !in_pair(SurfaceMesh::face(mesh.opposite(h))))
                continue;
            double d = (mesh.point(w) - mesh.point(end)).norm();
            if (d < best_distance) {
                best_distance = d;
                best = h;
            }
        }
        if (!best)
            return unchanged(labeling);
        path.push_back(*best);
        v = mesh.to(*best);
        visited.insert(v);
    }
    if (path == b.halfedges)
        return unchanged(labeling);
    std::set<index_t> walls;
    std::vector<index_t> left_seeds, right_seeds;
    for (index_t h : path) {
        walls.insert(mesh.edge(h));
        left_seeds.push_back(SurfaceMesh::face(h));
        right_seeds.push_back(SurfaceMesh::face(mesh.opposite(h)));
    }
    auto wall = [&](index_t e) { return walls.count(e) > 0; };
    std::vector<index_t> left_region = flood(mesh, left_seeds, in_pair, wall);
    std::vector<index_t> right_region = flood(mesh, right_seeds, in_pair, wall);
    std::vector<index_t> overlap;
    std::set_intersection(left_region.begin(), left_region.end(), right_region.begin(), right_region.end(), std::back_inserter(overlap));
    if (!overlap.empty())
        return unchanged(labeling);
    Labeling result = labeling;
    for (index_t t : left_region)
        result[t] = graph.chart(b.left_chart).label;
    for (index_t t : right_region)
        result[t] = graph.chart(b.right_chart).label;
    LabelingGraph rebuilt(mesh, result, graph.options());
    if (rebuilt.charts().size() != graph.charts().size() || rebuilt.boundaries().size() != graph.boundaries().size() ||
        rebuilt.corners().size() != graph.corners().size())
        return unchanged(labeling);
    index_t new_id = rebuilt.boundary_of_edge(mesh.edge(path.front()));
    if (new_id == NO_INDEX || rebuilt.boundary(new_id).length() > b.length())
        return unchanged(labeling);
    return outcome_from(labeling, std::move(result));
}

} // namespace polycube
