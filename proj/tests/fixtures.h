#pragma once

// Hand-built labelings on subdivided boxes and other synthetic shapes, shared by the unit and acceptance tests.
// Grid coordinates below are in cells of the box subdivision.

#include "polycube/labeling_graph.h"
#include "polycube/shapes.h"

#include <optional>

namespace fixture {

using namespace polycube;

struct LabeledMesh {
    SurfaceMesh mesh;
    Labeling labeling;
};

// applies f(current label, centroid in grid units) to every triangle, keeping the label when it returns nothing
template <class F>
Labeling relabeled(const SurfaceMesh& mesh, Labeling labeling, double grid, F&& f) {
    for (index_t t = 0; t < mesh.nb_triangles(); ++t)
        if (std::optional<Label> l = f(labeling[t], vec3(mesh.centroid(t) * grid)))
            labeling[t] = *l;
    return labeling;
}

inline index_t vertex_at(const SurfaceMesh& mesh, const vec3& p) {
    for (index_t v = 0; v < mesh.nb_vertices(); ++v)
        if ((mesh.point(v) - p).norm() < 1e-9)
            return v;
    return NO_INDEX;
}

inline LabeledMesh naive_box(int n) {
    SurfaceMesh mesh(shapes::box(vec3::Ones(), n));
    Labeling l = naive_labeling(mesh);
    return {std::move(mesh), std::move(l)};
}

// top chart grows a hook into its face from the +X edge: one turning-point lands on the
// crease, the other inside the flat face
inline LabeledMesh hooked_box() {
    LabeledMesh m = naive_box(8);
    m.labeling = relabeled(m.mesh, m.labeling, 8, [](Label l, const vec3& c) -> std::optional<Label> {
        int i = static_cast<int>(c.x()), j = static_cast<int>(c.y());
        bool hook = (i == 7 && j == 5) || (i == 6 && j >= 1 && j <= 5);
        if (l == Label::PosZ && hook)
            return Label::PosX;
        return std::nullopt;
    });
    return m;
}

// bottom chart extends up the +X face in a dovetail, losing the bottom crease between
// y = 5 and y = 10; both ends of the lost crease become turning-points
inline LabeledMesh lost_crease_box() {
    LabeledMesh m = naive_box(16);
    m.labeling = relabeled(m.mesh, m.labeling, 16, [](Label l, const vec3& c) -> std::optional<Label> {
        if (l == Label::PosX && c.z() < 4 && c.y() + c.z() > 5 && c.y() - c.z() < 10)
            return Label::NegZ;
        return std::nullopt;
    });
    return m;
}

// the +Y face relabeled -X: the merged -X chart meets the +X face along a convex crease
inline LabeledMesh opposite_convex_box(int n) {
    LabeledMesh m = naive_box(n);
    for (Label& l : m.labeling)
        if (l == Label::PosY)
            l = Label::NegX;
    return m;
}

// the top face split in four quarters labeled +X, +Y, -X, -Y around its center:
// four Z boundaries meet at the center vertex
inline LabeledMesh quartered_top(int n) {
    LabeledMesh m = naive_box(n);
    const double half = n / 2.0;
    m.labeling = relabeled(m.mesh, m.labeling, n, [half](Label l, const vec3& c) -> std::optional<Label> {
        if (l != Label::PosZ)
            return std::nullopt;
        bool east = c.x() > half, north = c.y() > half;
        if (east && north)
            return Label::PosX;
        if (!east && north)
            return Label::PosY;
        if (!east)
            return Label::NegX;
        return Label::NegY;
    });
    return m;
}

// one quad in the middle of the +Y face relabeled +X
inline LabeledMesh sliver_box() {
    LabeledMesh m = naive_box(4);
    m.labeling = relabeled(m.mesh, m.labeling, 4, [](Label l, const vec3& c) -> std::optional<Label> {
        if (l == Label::PosY && c.x() > 1 && c.x() < 2 && c.z() > 1 && c.z() < 2)
            return Label::PosX;
        return std::nullopt;
    });
    return m;
}

// a -Y chart of 8 triangles straddling the crease between the +X and +Z faces (valence 2)
inline LabeledMesh bridged_box() {
    LabeledMesh m = naive_box(4);
    m.labeling = relabeled(m.mesh, m.labeling, 4, [](Label l, const vec3& c) -> std::optional<Label> {
        bool band = c.y() > 1 && c.y() < 3;
        if ((l == Label::PosZ && band && c.x() > 3) || (l == Label::PosX && band && c.z() > 3))
            return Label::NegY;
        return std::nullopt;
    });
    return m;
}

// a +Y chart standing on the bottom crease of the +X face: its boundary with +X goes up 4 edges,
// across 3 and down 4 again
inline LabeledMesh u_wall() {
    LabeledMesh m = naive_box(8);
    m.labeling = relabeled(m.mesh, m.labeling, 8, [](Label l, const vec3& c) -> std::optional<Label> {
        if (l == Label::PosX && c.y() > 3 && c.y() < 6 && c.z() < 4)
            return Label::PosY;
        return std::nullopt;
    });
    return m;
}

// the +X chart reaches onto the top face up to a jagged column per row
inline LabeledMesh jagged_top() {
    LabeledMesh m = naive_box(8);
    static constexpr int reach[8] = {5, 3, 6, 2, 5, 3, 6, 4};
    m.labeling = relabeled(m.mesh, m.labeling, 8, [](Label l, const vec3& c) -> std::optional<Label> {
        if (l == Label::PosZ && c.x() > reach[static_cast<int>(c.y())])
            return Label::PosX;
        return std::nullopt;
    });
    return m;
}

// L-prism whose face chart on one side of the first reentrant edge is relabeled opposite to the
// label across the edge: the two charts share the same axis along a fully reflex boundary
struct ReflexOpposite {
    LabeledMesh labeled;
    index_t edge = NO_INDEX;
};

inline ReflexOpposite reflex_opposite_l_prism(int subdivisions) {
    SurfaceMesh mesh(shapes::l_prism(subdivisions));
    Labeling labeling = naive_labeling(mesh);
    index_t edge = NO_INDEX;
    for (index_t e = 0; e < mesh.nb_edges() && edge == NO_INDEX; ++e)
        if (mesh.dihedral(e) > std::numbers::pi + 1e-6)
            edge = e;
    auto [a, b] = mesh.edge_triangles(edge);
    LabelingGraph graph(mesh, labeling);
    for (index_t t : graph.chart(graph.chart_of(b)).triangles)
        labeling[t] = opposite(labeling[a]);
    return {{std::move(mesh), std::move(labeling)}, edge};
}

// corner vertex of the cube mesh box(1, n) at integer grid coordinates
inline index_t grid_vertex(const SurfaceMesh& mesh, int n, int x, int y, int z) {
    return vertex_at(mesh, vec3(x, y, z) / n);
}

} // namespace fixture
