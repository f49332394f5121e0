#include "polycube/mesh.h"

#include <fmt/core.h>

#include <Eigen/Geometry>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>
#include <unordered_map>

namespace polycube {

namespace {

constexpr double FLAT_TOLERANCE = 1e-7; // radians, below this an edge counts as flat

std::uint64_t edge_key(index_t a, index_t b) {
    if (a > b)
        std::swap(a, b);
    return (static_cast<std::uint64_t>(a) << 32) | b;
}

} // namespace

double angle_between(const vec3& a, const vec3& b) {
    // atan2 form stays accurate near 0 and pi
    return std::atan2(a.cross(b).norm(), a.dot(b));
}

SurfaceMesh::SurfaceMesh(TriangleSoup soup, const FeatureOptions& features)
    : points_(std::move(soup.vertices)), triangles_(std::move(soup.triangles)) {
    if (triangles_.empty())
        throw MeshError("mesh has no triangles");

    // exact-coordinate welding
    std::map<std::array<double, 3>, index_t> first_occurrence;
    std::vector<index_t> weld(points_.size());
    for (index_t v = 0; v < points_.size(); ++v) {
        auto [it, inserted] = first_occurrence.try_emplace({points_[v].x(), points_[v].y(), points_[v].z()}, v);
        weld[v] = it->second;
    }
    for (index_t t = 0; t < triangles_.size(); ++t) {
        for (auto& v : triangles_[t]) {
            if (v >= points_.size())
                throw MeshError(fmt::format("triangle {} references missing vertex {}", t, v));
            v = weld[v];
        }
    }

    vec3 lo = vec3::Constant(std::numeric_limits<double>::infinity());
    vec3 hi = -lo;
    std::vector<bool> used(points_.size(), false);
    for (const auto& tri : triangles_) {
        for (index_t v : tri) {
            used[v] = true;
            lo = lo.cwiseMin(points_[v]);
            hi = hi.cwiseMax(points_[v]);
        }
    }
    nb_used_vertices_ = static_cast<index_t>(std::count(used.begin(), used.end(), true));
    bbox_diagonal_ = (hi - lo).norm();

    const double min_area = 1e-12 * bbox_diagonal_ * bbox_diagonal_;
    normals_.resize(triangles_.size());
    areas_.resize(triangles_.size());
    for (index_t t = 0; t < triangles_.size(); ++t) {
        const auto& tri = triangles_[t];
        vec3 c = (points_[tri[1]] - points_[tri[0]]).cross(points_[tri[2]] - points_[tri[0]]);
        double area = 0.5 * c.norm();
        if (!(area >= min_area) || tri[0] == tri[1] || tri[1] == tri[2] || tri[0] == tri[2])
            throw MeshError(fmt::format("degenerate triangle {} (area {:g})", t, area));
        areas_[t] = area;
        normals_[t] = c.normalized();
        total_area_ += area;
    }

    // halfedge connectivity
    const index_t nh = nb_halfedges();
    opposite_.assign(nh, NO_INDEX);
    halfedge_edge_.assign(nh, NO_INDEX);
    std::unordered_map<std::uint64_t, index_t> edge_of_key;
    edge_of_key.reserve(nh);
    std::vector<std::vector<index_t>> edge_halfedges;
    for (index_t h = 0; h < nh; ++h) {
        auto [it, inserted] = edge_of_key.try_emplace(edge_key(from(h), to(h)), static_cast<index_t>(edge_halfedges.size()));
        if (inserted)
            edge_halfedges.emplace_back();
        edge_halfedges[it->second].push_back(h);
        halfedge_edge_[h] = it->second;
    }
    edge_halfedge_.resize(edge_halfedges.size());
    for (index_t e = 0; e < edge_halfedges.size(); ++e) {
        const auto& hs = edge_halfedges[e];
        index_t a = from(hs[0]), b = to(hs[0]);
        if (hs.size() > 2)
            throw MeshError(fmt::format("non-manifold edge ({}, {}) shared by {} triangles", std::min(a, b), std::max(a, b), hs.size()));
        if (hs.size() == 1)
            throw MeshError(fmt::format("open boundary at edge ({}, {})", std::min(a, b), std::max(a, b)));
        if (from(hs[1]) != b)
            throw MeshError(fmt::format("inconsistent triangle orientation at edge ({}, {})", std::min(a, b), std::max(a, b)));
        opposite_[hs[0]] = hs[1];
        opposite_[hs[1]] = hs[0];
        edge_halfedge_[e] = hs[0];
    }

    // vertex stars must be single fans
    vertex_halfedge_.assign(points_.size(), NO_INDEX);
    std::vector<index_t> incident_count(points_.size(), 0);
    for (index_t h = 0; h < nh; ++h) {
        if (vertex_halfedge_[from(h)] == NO_INDEX)
            vertex_halfedge_[from(h)] = h;
        incident_count[from(h)]++;
    }
    for (index_t v = 0; v < points_.size(); ++v) {
        if (vertex_halfedge_[v] == NO_INDEX)
            continue;
        index_t fan = 0;
        index_t h = vertex_halfedge_[v];
        do {
            ++fan;
            h = next_ccw(h);
        } while (h != vertex_halfedge_[v] && fan <= incident_count[v]);
        if (fan != incident_count[v])
            throw MeshError(fmt::format("non-manifold vertex {}", v));
    }

    dihedral_.resize(nb_edges());
    for (index_t e = 0; e < nb_edges(); ++e) {
        index_t h = edge_halfedge_[e];
        index_t t1 = face(h), t2 = face(opposite_[h]);
        double deviation = angle_between(normals_[t1], normals_[t2]);
        // opposite apex of t2 below the plane of t1 means a convex fold
        vec3 apex = point(to(next(opposite_[h])));
        bool convex = normals_[t1].dot(apex - point(from(h))) < 0.0;
        dihedral_[e] = convex ? std::numbers::pi - deviation : std::numbers::pi + deviation;
    }

    set_features(features, weld);
}

void SurfaceMesh::set_features(const FeatureOptions& features, const std::vector<index_t>& weld) {
    feature_threshold_ = features.threshold;
    is_feature_.assign(nb_edges(), false);
    if (!features.supplied_edges) {
        feature_edges_ = detect_feature_edges(*this, features.threshold);
    } else {
        std::vector<bool> seen(nb_edges(), false);
        for (auto [a, b] : *features.supplied_edges) {
            std::optional<index_t> e;
            // supplied indices refer to the unwelded vertex list
            if (a < weld.size() && b < weld.size())
                e = find_edge(weld[a], weld[b]);
            if (!e)
                throw MeshError(fmt::format("feature edge ({}, {}) is not an edge of the mesh", a, b));
            if (seen[*e])
                continue;
            seen[*e] = true;
            if (std::abs(dihedral_[*e] - std::numbers::pi) >= features.threshold && std::abs(dihedral_[*e] - std::numbers::pi) > FLAT_TOLERANCE)
                feature_edges_.push_back(*e);
            else
                ignored_feature_edges_.push_back(*e);
        }
        std::sort(feature_edges_.begin(), feature_edges_.end());
        std::sort(ignored_feature_edges_.begin(), ignored_feature_edges_.end());
    }
    for (index_t e : feature_edges_)
        is_feature_[e] = true;
}

vec3 SurfaceMesh::centroid(index_t t) const {
    const auto& tri = triangles_[t];
    return (points_[tri[0]] + points_[tri[1]] + points_[tri[2]]) / 3.0;
}

std::array<index_t, 2> SurfaceMesh::edge_vertices(index_t e) const {
    index_t h = edge_halfedge_[e];
    return {std::min(from(h), to(h)), std::max(from(h), to(h))};
}

std::array<index_t, 2> SurfaceMesh::edge_triangles(index_t e) const {
    index_t h = edge_halfedge_[e];
    return {face(h), face(opposite_[h])};
}

std::optional<index_t> SurfaceMesh::find_halfedge(index_t a, index_t b) const {
    if (a >= points_.size() || vertex_halfedge_[a] == NO_INDEX)
        return std::nullopt;
    index_t h = vertex_halfedge_[a];
    do {
        if (to(h) == b)
            return h;
        h = next_ccw(h);
    } while (h != vertex_halfedge_[a]);
    return std::nullopt;
}

std::optional<index_t> SurfaceMesh::find_edge(index_t a, index_t b) const {
    auto h = find_halfedge(a, b);
    if (!h)
        return std::nullopt;
    return halfedge_edge_[*h];
}

std::array<index_t, 3> SurfaceMesh::neighbors(index_t t) const {
    return {neighbor(t, 0), neighbor(t, 1), neighbor(t, 2)};
}

std::vector<index_t> SurfaceMesh::outgoing_halfedges(index_t v) const {
    std::vector<index_t> result;
    if (vertex_halfedge_[v] == NO_INDEX)
        return result;
    index_t h = vertex_halfedge_[v];
    do {
        result.push_back(h);
        h = next_ccw(h);
    } while (h != vertex_halfedge_[v]);
    return result;
}

std::vector<index_t> SurfaceMesh::vertex_triangles(index_t v) const {
    std::vector<index_t> result;
    for (index_t h : outgoing_halfedges(v))
        result.push_back(face(h));
    return result;
}

double SurfaceMesh::corner_angle(index_t h) const {
    return angle_between(vector(h), point(from(prev(h))) - point(from(h)));
}

int SurfaceMesh::euler_characteristic() const {
    return static_cast<int>(nb_used_vertices_) - static_cast<int>(nb_edges()) + static_cast<int>(nb_triangles());
}

std::vector<index_t> detect_feature_edges(const SurfaceMesh& mesh, double threshold) {
    std::vector<index_t> result;
    for (index_t e = 0; e < mesh.nb_edges(); ++e) {
        double deviation = std::abs(mesh.dihedral(e) - std::numbers::pi);
        if (deviation >= threshold && deviation > FLAT_TOLERANCE)
            result.push_back(e);
    }
    return result;
}

TriangleSoup read_obj(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in)
        throw MeshError(fmt::format("cannot open {}", path.string()));
    TriangleSoup soup;
    std::string line;
    std::size_t line_number = 0;
    while (std::getline(in, line)) {
        ++line_number;
        std::istringstream ls(line);
        std::string tag;
        if (!(ls >> tag) || tag[0] == '#')
            continue;
        if (tag == "v") {
            vec3 p;
            if (!(ls >> p.x() >> p.y() >> p.z()))
                throw MeshError(fmt::format("{}: line {}: malformed vertex", path.string(), line_number));
            soup.vertices.push_back(p);
        } else if (tag == "f") {
            std::vector<long> ids;
            std::string token;
            while (ls >> token) {
                // keep the position index of v/vt/vn
                long id = 0;
                try {
                    id = std::stol(token.substr(0, token.find('/')));
                } catch (const std::exception&) {
                    throw MeshError(fmt::format("{}: line {}: malformed face index '{}'", path.string(), line_number, token));
                }
                if (id < 0)
                    id += static_cast<long>(soup.vertices.size()) + 1;
                if (id < 1 || id > static_cast<long>(soup.vertices.size()))
                    throw MeshError(fmt::format("{}: line {}: face index {} out of range", path.string(), line_number, token));
                ids.push_back(id - 1);
            }
            if (ids.size() != 3)
                throw MeshError(fmt::format("{}: line {}: non-triangle face with {} vertices", path.string(), line_number, ids.size()));
            soup.triangles.push_back({static_cast<index_t>(ids[0]), static_cast<index_t>(ids[1]), static_cast<index_t>(ids[2])});
        }
    }
    return soup;
}

TriangleSoup read_medit(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in)
        throw MeshError(fmt::format("cannot open {}", path.string()));
    // number of values per entry for the sections we skip
    static const std::map<std::string, int> skipped = {
        {"Edges", 3}, {"Tetrahedra", 5}, {"Hexahedra", 9}, {"Corners", 1}, {"Ridges", 1},
        {"RequiredVertices", 1}, {"RequiredEdges", 1}, {"RequiredTriangles", 1}, {"Normals", 3},
        {"NormalAtVertices", 2}, {"Tangents", 3}, {"TangentAtVertices", 2}, {"Prisms", 7}, {"Pyramids", 6}};
    TriangleSoup soup;
    std::string keyword;
    auto read_count = [&](const std::string& section) {
        long n = -1;
        if (!(in >> n) || n < 0)
            throw MeshError(fmt::format("{}: bad entry count for {}", path.string(), section));
        return static_cast<std::size_t>(n);
    };
    while (in >> keyword) {
        if (keyword[0] == '#') {
            std::string rest;
            std::getline(in, rest);
            continue;
        }
        if (keyword == "MeshVersionFormatted" || keyword == "Dimension") {
            long value = 0;
            in >> value;
            if (keyword == "Dimension" && value != 3)
                throw MeshError(fmt::format("{}: only 3D meshes are supported", path.string()));
        } else if (keyword == "Vertices") {
            std::size_t n = read_count(keyword);
            for (std::size_t i = 0; i < n; ++i) {
                vec3 p;
                long ref = 0;
                if (!(in >> p.x() >> p.y() >> p.z() >> ref))
                    throw MeshError(fmt::format("{}: truncated Vertices section", path.string()));
                soup.vertices.push_back(p);
            }
        } else if (keyword == "Triangles") {
            std::size_t n = read_count(keyword);
            for (std::size_t i = 0; i < n; ++i) {
                long a = 0, b = 0, c = 0, ref = 0;
                if (!(in >> a >> b >> c >> ref))
                    throw MeshError(fmt::format("{}: truncated Triangles section", path.string()));
                for (long id : {a, b, c})
                    if (id < 1 || id > static_cast<long>(soup.vertices.size()))
                        throw MeshError(fmt::format("{}: triangle {} has vertex index {} out of range", path.string(), i + 1, id));
                soup.triangles.push_back({static_cast<index_t>(a - 1), static_cast<index_t>(b - 1), static_cast<index_t>(c - 1)});
            }
        } else if (keyword == "Quadrilaterals") {
            std::size_t n = read_count(keyword);
            if (n > 0)
                throw MeshError(fmt::format("{}: non-triangle faces (Quadrilaterals section)", path.string()));
        } else if (keyword == "End") {
            break;
        } else if (auto it = skipped.find(keyword); it != skipped.end()) {
            std::size_t n = read_count(keyword);
            double ignored = 0;
            for (std::size_t i = 0; i < n * static_cast<std::size_t>(it->second); ++i)
                if (!(in >> ignored))
                    throw MeshError(fmt::format("{}: truncated {} section", path.string(), keyword));
        } else {
            throw MeshError(fmt::format("{}: unknown keyword {}", path.string(), keyword));
        }
    }
    return soup;
}

SurfaceMesh load_mesh(const std::filesystem::path& path, const FeatureOptions& features) {
    std::string ext = path.extension().string();
    std::transform(ext.begin(), ext.end(), ext.begin(), [](unsigned char c) { return std::tolower(c); });
    if (ext == ".obj")
        return SurfaceMesh(read_obj(path), features);
    if (ext == ".mesh")
        return SurfaceMesh(read_medit(path), features);
    throw MeshError(fmt::format("unsupported mesh format '{}'", ext));
}

std::vector<VertexPair> read_feature_edge_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in)
        throw MeshError(fmt::format("cannot open {}", path.string()));
    std::vector<VertexPair> result;
    std::string line;
    std::size_t line_number = 0;
    while (std::getline(in, line)) {
        ++line_number;
        std::istringstream ls(line);
        std::string first;
        if (!(ls >> first) || first[0] == '#')
            continue;
        ls.str(line);
        ls.clear();
        long a = -1, b = -1;
        std::string extra;
        if (!(ls >> a >> b) || a < 0 || b < 0 || (ls >> extra))
            throw MeshError(fmt::format("{}: line {}: expected two vertex indices", path.string(), line_number));
        result.emplace_back(static_cast<index_t>(a), static_cast<index_t>(b));
    }
    return result;
}

} // namespace polycube
