#pragma once

#include <Eigen/Core>

#include <array>
#include <cstdint>
#include <filesystem>
#include <limits>
#include <numbers>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace polycube {

using vec3 = Eigen::Vector3d;
using index_t = std::uint32_t;
constexpr index_t NO_INDEX = std::numeric_limits<index_t>::max();

class MeshError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct TriangleSoup {
    std::vector<vec3> vertices;
    std::vector<std::array<index_t, 3>> triangles;
};

using VertexPair = std::pair<index_t, index_t>;

struct FeatureOptions {
    double threshold = std::numbers::pi / 4; // minimal deviation from flat, in radians
    std::optional<std::vector<VertexPair>> supplied_edges; // replaces the dihedral detection
};

// Closed, orientable, edge-manifold triangle mesh. Immutable once built.
// Halfedge h = 3t+k goes from triangle(t)[k] to triangle(t)[(k+1)%3], triangle t on its left.
class SurfaceMesh {
public:
    explicit SurfaceMesh(TriangleSoup soup, const FeatureOptions& features = {});

    index_t nb_vertices() const { return static_cast<index_t>(points_.size()); }
    index_t nb_triangles() const { return static_cast<index_t>(triangles_.size()); }
    index_t nb_edges() const { return static_cast<index_t>(edge_halfedge_.size()); }
    index_t nb_halfedges() const { return 3 * nb_triangles(); }

    const vec3& point(index_t v) const { return points_[v]; }
    const std::array<index_t, 3>& triangle(index_t t) const { return triangles_[t]; }
    const vec3& normal(index_t t) const { return normals_[t]; }
    double area(index_t t) const { return areas_[t]; }
    vec3 centroid(index_t t) const;
    double total_area() const { return total_area_; }
    double bbox_diagonal() const { return bbox_diagonal_; }

    static index_t face(index_t h) { return h / 3; }
    static index_t next(index_t h) { return 3 * (h / 3) + (h + 1) % 3; }
    static index_t prev(index_t h) { return 3 * (h / 3) + (h + 2) % 3; }
    index_t from(index_t h) const { return triangles_[h / 3][h % 3]; }
    index_t to(index_t h) const { return triangles_[h / 3][(h + 1) % 3]; }
    index_t opposite(index_t h) const { return opposite_[h]; }
    index_t edge(index_t h) const { return halfedge_edge_[h]; }
    vec3 vector(index_t h) const { return point(to(h)) - point(from(h)); }
    double length(index_t h) const { return vector(h).norm(); }

    // lowest halfedge of the edge
    index_t edge_halfedge(index_t e) const { return edge_halfedge_[e]; }
    std::array<index_t, 2> edge_vertices(index_t e) const;
    std::array<index_t, 2> edge_triangles(index_t e) const;
    std::optional<index_t> find_edge(index_t a, index_t b) const;
    // halfedge a->b if the edge exists
    std::optional<index_t> find_halfedge(index_t a, index_t b) const;

    // triangle across local edge k of t
    index_t neighbor(index_t t, int k) const { return face(opposite_[3 * t + k]); }
    std::array<index_t, 3> neighbors(index_t t) const;

    // outgoing halfedges of v in counterclockwise order, empty for isolated vertices
    std::vector<index_t> outgoing_halfedges(index_t v) const;
    std::vector<index_t> vertex_triangles(index_t v) const;
    // next outgoing halfedge around from(h), counterclockwise / clockwise
    index_t next_ccw(index_t h) const { return opposite_[prev(h)]; }
    index_t next_cw(index_t h) const { return next(opposite_[h]); }
    // triangle corner angle at the origin of h
    double corner_angle(index_t h) const;

    // interior angle between the two triangles of e: pi flat, < pi convex, > pi reflex
    double dihedral(index_t e) const { return dihedral_[e]; }
    bool is_feature_edge(index_t e) const { return is_feature_[e]; }
    const std::vector<index_t>& feature_edges() const { return feature_edges_; }
    // supplied feature edges whose dihedral is below the threshold
    const std::vector<index_t>& ignored_feature_edges() const { return ignored_feature_edges_; }
    double feature_threshold() const { return feature_threshold_; }

    index_t nb_used_vertices() const { return nb_used_vertices_; }
    int euler_characteristic() const;
    int genus() const { return (2 - euler_characteristic()) / 2; }

    // coordinates given at construction, including unused vertices
    TriangleSoup soup() const { return {points_, triangles_}; }

private:
    void set_features(const FeatureOptions& features, const std::vector<index_t>& weld);

    std::vector<vec3> points_;
    std::vector<std::array<index_t, 3>> triangles_;
    std::vector<vec3> normals_;
    std::vector<double> areas_;
    std::vector<index_t> opposite_;
    std::vector<index_t> halfedge_edge_;
    std::vector<index_t> edge_halfedge_;
    std::vector<index_t> vertex_halfedge_;
    std::vector<double> dihedral_;
    std::vector<bool> is_feature_;
    std::vector<index_t> feature_edges_;
    std::vector<index_t> ignored_feature_edges_;
    double feature_threshold_ = 0.0;
    double total_area_ = 0.0;
    double bbox_diagonal_ = 0.0;
    index_t nb_used_vertices_ = 0;
};

// edges whose deviation from flat |dihedral - pi| reaches the threshold (radians)
std::vector<index_t> detect_feature_edges(const SurfaceMesh& mesh, double threshold);

TriangleSoup read_obj(const std::filesystem::path& path);
TriangleSoup read_medit(const std::filesystem::path& path);
// dispatches on the extension (.obj or .mesh)
SurfaceMesh load_mesh(const std::filesystem::path& path, const FeatureOptions& features = {});
// "v1 v2" per line, zero-based vertex indices
std::vector<VertexPair> read_feature_edge_file(const std::filesystem::path& path);

double angle_between(const vec3& a, const vec3& b);

} // namespace polycube
