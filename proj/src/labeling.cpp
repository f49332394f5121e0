#include "polycube/labeling.h"

#include <fmt/core.h>

#include <algorithm>
#include <stdexcept>

namespace polycube {

Label label_from_int(int value) {
    if (value < 0 || value >= LABEL_COUNT)
        throw std::out_of_range(fmt::format("label {} outside 0..5", value));
    return static_cast<Label>(value);
}

vec3 direction(Axis a) {
    vec3 d = vec3::Zero();
    d[to_int(a)] = 1.0;
    return d;
}

vec3 direction(Label l) {
    return is_positive(l) ? direction(axis_of(l)) : vec3(-direction(axis_of(l)));
}

std::string_view label_name(Label l) {
    static constexpr std::string_view names[] = {"+X", "-X", "+Y", "-Y", "+Z", "-Z"};
    return names[to_int(l)];
}

std::string_view axis_name(Axis a) {
    static constexpr std::string_view names[] = {"X", "Y", "Z"};
    return names[to_int(a)];
}

std::optional<Axis> third_axis(Axis a, Axis b) {
    if (a == b)
        return std::nullopt;
    return static_cast<Axis>(3 - to_int(a) - to_int(b));
}

Label nearest_label(const vec3& n) {
    if (!(n.squaredNorm() > 0.0))
        throw std::invalid_argument("nearest_label of a zero vector");
    int best = 0;
    double best_dot = -std::numeric_limits<double>::infinity();
    for (int l = 0; l < LABEL_COUNT; ++l) {
        double dot = n.dot(direction(static_cast<Label>(l)));
        if (dot > best_dot) {
            best_dot = dot;
            best = l;
        }
    }
    return static_cast<Label>(best);
}

Labeling naive_labeling(const SurfaceMesh& mesh) {
    Labeling labeling(mesh.nb_triangles());
    for (index_t t = 0; t < mesh.nb_triangles(); ++t)
        labeling[t] = nearest_label(mesh.normal(t));
    return labeling;
}

void check_labeling_size(const SurfaceMesh& mesh, const Labeling& labeling) {
    if (labeling.size() != mesh.nb_triangles())
        throw MeshError(fmt::format("labeling has {} entries but the mesh has {} triangles", labeling.size(), mesh.nb_triangles()));
}

double triangle_fidelity(const vec3& normal, Label l) {
    return std::clamp((1.0 + normal.dot(direction(l))) / 2.0, 0.0, 1.0);
}

FidelityStats fidelity(const SurfaceMesh& mesh, const Labeling& labeling) {
    check_labeling_size(mesh, labeling);
    FidelityStats stats;
    double weighted = 0.0, sum = 0.0;
    for (index_t t = 0; t < mesh.nb_triangles(); ++t) {
        double f = triangle_fidelity(mesh.normal(t), labeling[t]);
        stats.min = std::min(stats.min, f);
        weighted += f * mesh.area(t);
        sum += f;
    }
    stats.area_weighted = weighted / mesh.total_area();
    stats.uniform = sum / mesh.nb_triangles();
    return stats;
}

FeatureEdgeStats feature_edge_stats(const SurfaceMesh& mesh, const Labeling& labeling) {
    check_labeling_size(mesh, labeling);
    FeatureEdgeStats stats;
    for (index_t e : mesh.feature_edges()) {
        auto [t1, t2] = mesh.edge_triangles(e);
        if (labeling[t1] == labeling[t2])
            stats.lost++;
        else
            stats.preserved++;
    }
    stats.ignored = mesh.ignored_feature_edges().size();
    return stats;
}

} // namespace polycube
