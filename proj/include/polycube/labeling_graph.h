#pragma once

#include "polycube/labeling.h"

#include <optional>
#include <vector>

namespace polycube {

struct Chart {
    Label label;
    std::vector<index_t> triangles;  // increasing
    std::vector<index_t> neighbors;  // adjacent chart ids, increasing
    std::vector<index_t> boundaries; // increasing
    bool surrounded_by_feature_edges = false;

    std::size_t valence() const { return neighbors.size(); }
};

struct TurningPoint {
    index_t vertex;
    index_t index;      // position in the boundary halfedges of the edge leaving the vertex
    bool towards_right; // the right side holds the larger sum of corner angles
};

struct Boundary {
    std::vector<index_t> halfedges; // consecutive, left_chart on the left of each halfedge
    index_t left_chart = NO_INDEX;
    index_t right_chart = NO_INDEX;
    index_t start_corner = NO_INDEX; // both NO_INDEX for closed loops
    index_t end_corner = NO_INDEX;
    std::optional<Axis> axis;        // none between charts of the same axis
    bool on_feature_edges = false;   // every edge is a feature edge
    std::vector<TurningPoint> turning_points;

    bool is_closed() const { return start_corner == NO_INDEX; }
    std::size_t length() const { return halfedges.size(); }
};

struct CornerIncidence {
    index_t boundary;
    bool outgoing; // the boundary starts at the corner
};

struct Corner {
    index_t vertex;
    std::vector<CornerIncidence> incidences; // counterclockwise around the vertex

    std::size_t valence() const { return incidences.size(); }
};

struct GraphOptions {
    double flip_penalty = 1.0; // turning-point smoothing
};

class LabelingGraph {
public:
    LabelingGraph(const SurfaceMesh& mesh, const Labeling& labeling, const GraphOptions& options = {});

    const std::vector<Chart>& charts() const { return charts_; }
    const std::vector<Boundary>& boundaries() const { return boundaries_; }
    const std::vector<Corner>& corners() const { return corners_; }
    const Chart& chart(index_t c) const { return charts_.at(c); }
    const Boundary& boundary(index_t b) const { return boundaries_.at(b); }
    const Corner& corner(index_t c) const { return corners_.at(c); }
    const Labeling& labeling() const { return labeling_; }
    const GraphOptions& options() const { return options_; }

    index_t chart_of(index_t triangle) const { return triangle_chart_[triangle]; }
    // NO_INDEX when the edge does not separate two charts
    index_t boundary_of_edge(index_t edge) const { return edge_boundary_[edge]; }
    index_t corner_of_vertex(index_t vertex) const { return vertex_corner_[vertex]; }
    bool is_boundary_edge(index_t edge) const { return edge_boundary_[edge] != NO_INDEX; }
    // number of boundary edges around the vertex
    index_t boundary_degree(index_t vertex) const { return vertex_degree_[vertex]; }

    // vertices along the boundary: n+1 for open boundaries, n for closed ones
    std::vector<index_t> boundary_vertices(const SurfaceMesh& mesh, index_t b) const;
    std::size_t turning_point_count() const;
    std::optional<std::pair<index_t, TurningPoint>> turning_point_at(index_t vertex) const;

private:
    Labeling labeling_;
    GraphOptions options_;
    std::vector<Chart> charts_;
    std::vector<Boundary> boundaries_;
    std::vector<Corner> corners_;
    std::vector<index_t> triangle_chart_;
    std::vector<index_t> edge_boundary_;
    std::vector<index_t> vertex_corner_;
    std::vector<index_t> vertex_degree_;
};

// Exact labeling of a chain of edges with +/- directions minimizing
// sum of (1 -+ s_e)/2 plus flip_penalty per change between consecutive edges.
// The chain wraps around when cyclic. Returns true for '+'.
std::vector<bool> chain_directions(const std::vector<double>& scores, double flip_penalty, bool cyclic);
double chain_cost(const std::vector<double>& scores, const std::vector<bool>& directions, double flip_penalty, bool cyclic);

// per-edge score: unit edge vector along the traversal dotted with the axis
std::vector<double> boundary_scores(const SurfaceMesh& mesh, const Boundary& boundary);

// One cycle of halfedges per contour component, the chart on the left of every halfedge.
std::vector<std::vector<index_t>> chart_contour(const SurfaceMesh& mesh, const LabelingGraph& graph, index_t chart);

// true when the chart triangles form a topological disk
bool chart_is_disk(const SurfaceMesh& mesh, const LabelingGraph& graph, index_t chart);

} // namespace polycube
