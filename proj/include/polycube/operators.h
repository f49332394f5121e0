#pragma once

#include "polycube/graphcut.h"
#include "polycube/labeling_graph.h"
#include "polycube/validity.h"

#include <functional>
#include <optional>
#include <stdexcept>
#include <string_view>
#include <vector>

namespace polycube {

class OperatorError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct OperatorOutcome {
    Labeling labeling;
    std::vector<index_t> changed; // increasing triangle ids
    bool applied = false;
};

struct TracedPath {
    enum class Termination { HitCorner, HitBoundary, HitTurningPoint, HitFeatureEdge, MaxSteps, DeadEnd };

    std::vector<index_t> vertices;
    std::vector<index_t> halfedges;
    Termination reason = Termination::DeadEnd;

    bool reached_target() const {
        return reason != Termination::MaxSteps && reason != Termination::DeadEnd;
    }
};

std::string_view termination_name(TracedPath::Termination reason);

// Greedy walk from start through the interior of a chart: each step takes the outgoing edge
// best aligned with the goal direction, never revisiting a vertex, until a vertex on the chart contour.
TracedPath trace_path(const SurfaceMesh& mesh, const LabelingGraph& graph, index_t start, const vec3& goal, index_t chart);

// triangles sharing a vertex with the seeds, grown ring by ring, restricted to the allowed ones
std::vector<index_t> triangles_within_rings(const SurfaceMesh& mesh, const std::vector<index_t>& seed_vertices, int rings,
                                            const std::function<bool(index_t)>& allowed);

// shortest path (in edges) of feature edges inside a single label from t1 to t2, as halfedges
std::optional<std::vector<index_t>> lost_feature_path(const SurfaceMesh& mesh, const LabelingGraph& graph, index_t t1, index_t t2);

OperatorOutcome fix_invalid_boundary(const SurfaceMesh& mesh, const Labeling& labeling, const LabelingGraph& graph,
                                     index_t boundary, int width = 3, const ValidityConfig& config = {});
// throws OperatorError when the disk would swallow a whole chart around the corner
OperatorOutcome fix_invalid_corner(const SurfaceMesh& mesh, const Labeling& labeling, const LabelingGraph& graph,
                                   index_t corner, int radius = 3, const ValidityConfig& config = {});
OperatorOutcome remove_chart(const SurfaceMesh& mesh, const Labeling& labeling, const LabelingGraph& graph, index_t chart,
                             const GraphCutParams& params = {});
OperatorOutcome increase_chart_valence(const SurfaceMesh& mesh, const Labeling& labeling, const LabelingGraph& graph,
                                       index_t chart);
OperatorOutcome join_turning_points_pair(const SurfaceMesh& mesh, const Labeling& labeling, const LabelingGraph& graph,
                                         index_t t1, index_t t2);
OperatorOutcome pull_closest_corner(const SurfaceMesh& mesh, const Labeling& labeling, const LabelingGraph& graph,
                                    index_t turning_point);
OperatorOutcome move_boundary_near_turning_point(const SurfaceMesh& mesh, const Labeling& labeling,
                                                 const LabelingGraph& graph, index_t turning_point, int radius = 3);
OperatorOutcome straighten_boundary(const SurfaceMesh& mesh, const Labeling& labeling, const LabelingGraph& graph,
                                    index_t boundary);

} // namespace polycube
