#pragma once

#include "polycube/mesh.h"

#include <Eigen/Core>

#include <cstdint>
#include <string>
#include <vector>

// Synthetic closed meshes used by the tests, the corpus runner and the CLI demos.
namespace polycube::shapes {

// 8 vertices, 12 triangles, [0,1]^3
TriangleSoup unit_cube();

class VoxelGrid {
public:
    VoxelGrid(int nx, int ny, int nz) : nx_(nx), ny_(ny), nz_(nz), cells_(static_cast<std::size_t>(nx * ny * nz), false) {}
    bool at(int x, int y, int z) const;
    void set(int x, int y, int z, bool value = true);
    int nx() const { return nx_; }
    int ny() const { return ny_; }
    int nz() const { return nz_; }

private:
    int nx_, ny_, nz_;
    std::vector<bool> cells_;
};

// Boundary surface of a union of voxels, each voxel face split into subdivisions^2 quads.
// Voxels touching only along an edge or a vertex give a non-manifold surface.
TriangleSoup voxel_solid(const VoxelGrid& grid, int subdivisions, const vec3& voxel_size = vec3::Ones());

TriangleSoup box(const vec3& size, int subdivisions);
TriangleSoup l_prism(int subdivisions);
TriangleSoup t_prism(int subdivisions);
TriangleSoup staircase(int steps, int subdivisions);
// cube with one corner voxel removed
TriangleSoup notched_cube(int subdivisions);

// Counterclockwise polygon in the XY plane extruded along +Z from z=0 to z=height.
// Walls use edge_segments x height_segments quads, caps use concentric rings around the centroid.
TriangleSoup extruded_polygon(const std::vector<Eigen::Vector2d>& polygon, double height, int edge_segments,
                              int height_segments, int cap_rings);
TriangleSoup cylinder(double radius, double height, int sides, int height_segments, int cap_rings);
// apex at (0,0,height) above a base disk at z=0; rings subdivide both the side and the base
TriangleSoup cone(double radius, double height, int sides, int rings);
// prism standing on the triangle (0,0) (2,0) (1,1.6)
TriangleSoup triangular_prism(int segments);

TriangleSoup icosphere(int subdivisions);
TriangleSoup torus(double major_radius, double minor_radius, int major_segments, int minor_segments);

TriangleSoup rotated(TriangleSoup soup, const vec3& axis, double angle);
// uniform noise of the given amplitude on every coordinate
TriangleSoup jittered(TriangleSoup soup, double amplitude, std::uint64_t seed);

struct NamedShape {
    std::string name;
    TriangleSoup soup;
};

// the CAD-like shapes used for the corpus run
std::vector<NamedShape> corpus();

} // namespace polycube::shapes
