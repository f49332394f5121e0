#include "polycube/shapes.h"

#include <Eigen/Geometry>

#include <cmath>
#include <map>
#include <numbers>
#include <random>
#include <stdexcept>

namespace polycube::shapes {

TriangleSoup unit_cube() {
    TriangleSoup soup;
    for (int i = 0; i < 8; ++i)
        soup.vertices.emplace_back(i & 1, (i >> 1) & 1, (i >> 2) & 1);
    // two triangles per face, counterclockwise seen from outside
    soup.triangles = {{0, 2, 3}, {0, 3, 1}, {4, 5, 7}, {4, 7, 6}, {0, 1, 5}, {0, 5, 4},
                      {2, 6, 7}, {2, 7, 3}, {0, 4, 6}, {0, 6, 2}, {1, 3, 7}, {1, 7, 5}};
    return soup;
}

bool VoxelGrid::at(int x, int y, int z) const {
    if (x < 0 || y < 0 || z < 0 || x >= nx_ || y >= ny_ || z >= nz_)
        return false;
    return cells_[static_cast<std::size_t>((z * ny_ + y) * nx_ + x)];
}

void VoxelGrid::set(int x, int y, int z, bool value) {
    cells_.at(static_cast<std::size_t>((z * ny_ + y) * nx_ + x)) = value;
}

TriangleSoup voxel_solid(const VoxelGrid& grid, int subdivisions, const vec3& voxel_size) {
    if (subdivisions < 1)
        throw std::invalid_argument("subdivisions must be positive");
    TriangleSoup soup;
    std::map<std::array<int, 3>, index_t> vertex_of;
    auto vertex = [&](const std::array<int, 3>& p) {
        auto [it, inserted] = vertex_of.try_emplace(p, static_cast<index_t>(soup.vertices.size()));
        if (inserted)
            soup.vertices.emplace_back(voxel_size.x() * p[0] / subdivisions, voxel_size.y() * p[1] / subdivisions,
                                       voxel_size.z() * p[2] / subdivisions);
        return it->second;
    };
    // tangent axes (u, v) with u x v along the face normal
    const int u_axis[6] = {1, 2, 2, 0, 0, 1};
    const int v_axis[6] = {2, 1, 0, 2, 1, 0};
    const int s = subdivisions;
    for (int z = 0; z < grid.nz(); ++z)
        for (int y = 0; y < grid.ny(); ++y)
            for (int x = 0; x < grid.nx(); ++x) {
                if (!grid.at(x, y, z))
                    continue;
                for (int dir = 0; dir < 6; ++dir) {
                    int axis = dir / 2;
                    int sign = dir % 2 == 0 ? 1 : -1;
                    std::array<int, 3> n = {x, y, z};
                    n[axis] += sign;
                    if (grid.at(n[0], n[1], n[2]))
                        continue;
                    std::array<int, 3> origin = {x * s, y * s, z * s};
                    if (sign > 0)
                        origin[axis] += s;
                    for (int i = 0; i < s; ++i)
                        for (int j = 0; j < s; ++j) {
                            auto corner = [&](int a, int b) {
                                auto p = origin;
                                p[u_axis[dir]] += i + a;
                                p[v_axis[dir]] += j + b;
                                return vertex(p);
                            };
                            index_t p00 = corner(0, 0), p10 = corner(1, 0), p11 = corner(1, 1), p01 = corner(0, 1);
                            soup.triangles.push_back({p00, p10, p11});
                            soup.triangles.push_back({p00, p11, p01});
                        }
                }
            }
    return soup;
}

TriangleSoup box(const vec3& size, int subdivisions) {
    VoxelGrid grid(1, 1, 1);
    grid.set(0, 0, 0);
    return voxel_solid(grid, subdivisions, size);
}

TriangleSoup l_prism(int subdivisions) {
    VoxelGrid grid(2, 2, 1);
    grid.set(0, 0, 0);
    grid.set(1, 0, 0);
    grid.set(0, 1, 0);
    return voxel_solid(grid, subdivisions);
}

TriangleSoup t_prism(int subdivisions) {
    VoxelGrid grid(3, 2, 1);
    grid.set(0, 1, 0);
    grid.set(1, 1, 0);
    grid.set(2, 1, 0);
    grid.set(1, 0, 0);
    return voxel_solid(grid, subdivisions);
}

TriangleSoup staircase(int steps, int subdivisions) {
    VoxelGrid grid(steps, 1, steps);
    for (int x = 0; x < steps; ++x)
        for (int z = 0; z < steps - x; ++z)
            grid.set(x, 0, z);
    return voxel_solid(grid, subdivisions);
}

TriangleSoup notched_cube(int subdivisions) {
    VoxelGrid grid(2, 2, 2);
    for (int z = 0; z < 2; ++z)
        for (int y = 0; y < 2; ++y)
            for (int x = 0; x < 2; ++x)
                grid.set(x, y, z, !(x == 1 && y == 1 && z == 1));
    return voxel_solid(grid, subdivisions);
}

TriangleSoup extruded_polygon(const std::vector<Eigen::Vector2d>& polygon, double height, int edge_segments,
                              int height_segments, int cap_rings) {
    if (polygon.size() < 3 || edge_segments < 1 || height_segments < 1 || cap_rings < 1)
        throw std::invalid_argument("bad extrusion parameters");
    std::vector<Eigen::Vector2d> outline;
    for (std::size_t i = 0; i < polygon.size(); ++i) {
        const auto& a = polygon[i];
        const auto& b = polygon[(i + 1) % polygon.size()];
        for (int k = 0; k < edge_segments; ++k)
            outline.push_back(a + (b - a) * (static_cast<double>(k) / edge_segments));
    }
    Eigen::Vector2d center = Eigen::Vector2d::Zero();
    for (const auto& p : polygon)
        center += p;
    center /= static_cast<double>(polygon.size());

    const index_t n = static_cast<index_t>(outline.size());
    TriangleSoup soup;
    // wall rings, level 0 at the bottom
    for (int level = 0; level <= height_segments; ++level) {
        double z = height * level / height_segments;
        for (const auto& p : outline)
            soup.vertices.emplace_back(p.x(), p.y(), z);
    }
    auto wall = [&](int level, index_t i) { return static_cast<index_t>(level * n + i % n); };
    for (int level = 0; level < height_segments; ++level)
        for (index_t i = 0; i < n; ++i) {
            index_t a0 = wall(level, i), b0 = wall(level, i + 1), b1 = wall(level + 1, i + 1), a1 = wall(level + 1, i);
            soup.triangles.push_back({a0, b0, b1});
            soup.triangles.push_back({a0, b1, a1});
        }

    auto cap = [&](double z, int boundary_level, bool top) {
        std::vector<std::vector<index_t>> rings;
        std::vector<index_t> boundary;
        for (index_t i = 0; i < n; ++i)
            boundary.push_back(wall(boundary_level, i));
        rings.push_back(boundary);
        for (int r = 1; r < cap_rings; ++r) {
            double scale = 1.0 - static_cast<double>(r) / cap_rings;
            std::vector<index_t> ring;
            for (const auto& p : outline) {
                Eigen::Vector2d q = center + (p - center) * scale;
                ring.push_back(static_cast<index_t>(soup.vertices.size()));
                soup.vertices.emplace_back(q.x(), q.y(), z);
            }
            rings.push_back(ring);
        }
        index_t apex = static_cast<index_t>(soup.vertices.size());
        soup.vertices.emplace_back(center.x(), center.y(), z);
        auto emit = [&](index_t a, index_t b, index_t c) {
            if (top)
                soup.triangles.push_back({a, b, c});
            else
                soup.triangles.push_back({a, c, b});
        };
        for (std::size_t r = 0; r + 1 < rings.size(); ++r)
            for (index_t i = 0; i < n; ++i) {
                index_t a0 = rings[r][i], a1 = rings[r][(i + 1) % n];
                index_t b0 = rings[r + 1][i], b1 = rings[r + 1][(i + 1) % n];
                emit(a0, a1, b1);
                emit(a0, b1, b0);
            }
        for (index_t i = 0; i < n; ++i)
            emit(rings.back()[i], rings.back()[(i + 1) % n], apex);
    };
    cap(height, height_segments, true);
    cap(0.0, 0, false);
    return soup;
}

TriangleSoup cone(double radius, double height, int sides, int rings) {
    if (sides < 3 || rings < 1)
        throw std::invalid_argument("cone needs at least 3 sides and 1 ring");
    TriangleSoup soup;
    const index_t n = static_cast<index_t>(sides);
    auto add_ring = [&](double scale, double z) {
        std::vector<index_t> ring;
        for (int i = 0; i < sides; ++i) {
            // half-step offset keeps side normals off the diagonal planes
            double angle = 2 * std::numbers::pi * (i + 0.5) / sides;
            ring.push_back(static_cast<index_t>(soup.vertices.size()));
            soup.vertices.emplace_back(radius * scale * std::cos(angle), radius * scale * std::sin(angle), z);
        }
        return ring;
    };
    index_t apex = 0;
    soup.vertices.emplace_back(0.0, 0.0, height);
    std::vector<std::vector<index_t>> side = {add_ring(1.0 / rings, height * (1.0 - 1.0 / rings))};
    for (int k = 2; k <= rings; ++k)
        side.push_back(add_ring(static_cast<double>(k) / rings, height * (1.0 - static_cast<double>(k) / rings)));
    for (index_t i = 0; i < n; ++i)
        soup.triangles.push_back({apex, side[0][i], side[0][(i + 1) % n]});
    for (std::size_t k = 0; k + 1 < side.size(); ++k)
        for (index_t i = 0; i < n; ++i) {
            index_t a0 = side[k][i], a1 = side[k][(i + 1) % n], b0 = side[k + 1][i], b1 = side[k + 1][(i + 1) % n];
            soup.triangles.push_back({a0, b0, b1});
            soup.triangles.push_back({a0, b1, a1});
        }
    // base disk facing -Z, rings shrinking towards the center
    std::vector<std::vector<index_t>> base = {side.back()};
    for (int k = rings - 1; k >= 1; --k)
        base.push_back(add_ring(static_cast<double>(k) / rings, 0.0));
    index_t center = static_cast<index_t>(soup.vertices.size());
    soup.vertices.emplace_back(0.0, 0.0, 0.0);
    for (std::size_t k = 0; k + 1 < base.size(); ++k)
        for (index_t i = 0; i < n; ++i) {
            index_t a0 = base[k][i], a1 = base[k][(i + 1) % n], b0 = base[k + 1][i], b1 = base[k + 1][(i + 1) % n];
            soup.triangles.push_back({a0, b1, a1});
            soup.triangles.push_back({a0, b0, b1});
        }
    for (index_t i = 0; i < n; ++i)
        soup.triangles.push_back({base.back()[(i + 1) % n], base.back()[i], center});
    return soup;
}

TriangleSoup cylinder(double radius, double height, int sides, int height_segments, int cap_rings) {
    std::vector<Eigen::Vector2d> polygon;
    for (int i = 0; i < sides; ++i) {
        double angle = 2 * std::numbers::pi * i / sides;
        polygon.emplace_back(radius * std::cos(angle), radius * std::sin(angle));
    }
    return extruded_polygon(polygon, height, 1, height_segments, cap_rings);
}

TriangleSoup triangular_prism(int segments) {
    return extruded_polygon({{0.0, 0.0}, {2.0, 0.0}, {1.0, 1.6}}, 1.0, segments, segments, segments);
}

TriangleSoup icosphere(int subdivisions) {
    const double phi = (1.0 + std::sqrt(5.0)) / 2.0;
    TriangleSoup soup;
    soup.vertices = {{-1, phi, 0}, {1, phi, 0}, {-1, -phi, 0}, {1, -phi, 0}, {0, -1, phi}, {0, 1, phi},
                     {0, -1, -phi}, {0, 1, -phi}, {phi, 0, -1}, {phi, 0, 1}, {-phi, 0, -1}, {-phi, 0, 1}};
    for (auto& v : soup.vertices)
        v.normalize();
    soup.triangles = {{0, 11, 5}, {0, 5, 1}, {0, 1, 7}, {0, 7, 10}, {0, 10, 11}, {1, 5, 9}, {5, 11, 4},
                      {11, 10, 2}, {10, 7, 6}, {7, 1, 8}, {3, 9, 4}, {3, 4, 2}, {3, 2, 6}, {3, 6, 8},
                      {3, 8, 9}, {4, 9, 5}, {2, 4, 11}, {6, 2, 10}, {8, 6, 7}, {9, 8, 1}};
    for (int s = 0; s < subdivisions; ++s) {
        std::map<std::pair<index_t, index_t>, index_t> midpoint;
        auto middle = [&](index_t a, index_t b) {
            auto key = std::minmax(a, b);
            auto [it, inserted] = midpoint.try_emplace(key, static_cast<index_t>(soup.vertices.size()));
            if (inserted)
                soup.vertices.push_back((soup.vertices[a] + soup.vertices[b]).normalized());
            return it->second;
        };
        std::vector<std::array<index_t, 3>> refined;
        for (const auto& [a, b, c] : soup.triangles) {
            index_t ab = middle(a, b), bc = middle(b, c), ca = middle(c, a);
            refined.push_back({a, ab, ca});
            refined.push_back({b, bc, ab});
            refined.push_back({c, ca, bc});
            refined.push_back({ab, bc, ca});
        }
        soup.triangles = std::move(refined);
    }
    return soup;
}

TriangleSoup torus(double major_radius, double minor_radius, int major_segments, int minor_segments) {
    TriangleSoup soup;
    for (int i = 0; i < major_segments; ++i)
        for (int j = 0; j < minor_segments; ++j) {
            double theta = 2 * std::numbers::pi * i / major_segments;
            double phi = 2 * std::numbers::pi * j / minor_segments;
            double r = major_radius + minor_radius * std::cos(phi);
            soup.vertices.emplace_back(r * std::cos(theta), r * std::sin(theta), minor_radius * std::sin(phi));
        }
    auto id = [&](int i, int j) {
        return static_cast<index_t>((i % major_segments) * minor_segments + j % minor_segments);
    };
    for (int i = 0; i < major_segments; ++i)
        for (int j = 0; j < minor_segments; ++j) {
            index_t a = id(i, j), b = id(i + 1, j), c = id(i + 1, j + 1), d = id(i, j + 1);
            soup.triangles.push_back({a, b, c});
            soup.triangles.push_back({a, c, d});
        }
    return soup;
}

TriangleSoup rotated(TriangleSoup soup, const vec3& axis, double angle) {
    Eigen::Matrix3d rotation = Eigen::AngleAxisd(angle, axis.normalized()).toRotationMatrix();
    for (auto& v : soup.vertices)
        v = rotation * v;
    return soup;
}

TriangleSoup jittered(TriangleSoup soup, double amplitude, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> noise(-amplitude, amplitude);
    for (auto& v : soup.vertices)
        for (int k = 0; k < 3; ++k)
            v[k] += noise(rng);
    return soup;
}

std::vector<NamedShape> corpus() {
    std::vector<NamedShape> result;
    result.push_back({"cube", box(vec3::Ones(), 4)});
    result.push_back({"cuboid", box(vec3(2.0, 1.0, 0.5), 4)});
    result.push_back({"l_prism", l_prism(3)});
    result.push_back({"t_prism", t_prism(3)});
    result.push_back({"staircase", staircase(3, 3)});
    result.push_back({"notched_cube", notched_cube(3)});
    result.push_back({"wedge", triangular_prism(6)});
    result.push_back({"cylinder", cylinder(1.0, 2.0, 32, 4, 4)});
    result.push_back({"sphere", icosphere(3)});
    result.push_back({"torus", torus(2.0, 0.6, 32, 16)});
    result.push_back({"rotated_prism", rotated(box(vec3(1.0, 1.0, 2.0), 4), vec3::UnitZ(), std::numbers::pi / 4)});
    return result;
}

} // namespace polycube::shapes
