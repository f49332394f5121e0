#pragma once

#include "polycube/mesh.h"

#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

namespace polycube {

// 0..5 = +X, -X, +Y, -Y, +Z, -Z
enum class Label : std::uint8_t { PosX = 0, NegX, PosY, NegY, PosZ, NegZ };
enum class Axis : std::uint8_t { X = 0, Y, Z };

constexpr int LABEL_COUNT = 6;

constexpr Axis axis_of(Label l) { return static_cast<Axis>(static_cast<int>(l) / 2); }
constexpr Label opposite(Label l) { return static_cast<Label>(static_cast<int>(l) ^ 1); }
constexpr bool is_positive(Label l) { return static_cast<int>(l) % 2 == 0; }
constexpr Label label_of(Axis a, bool positive) { return static_cast<Label>(2 * static_cast<int>(a) + (positive ? 0 : 1)); }
constexpr int to_int(Label l) { return static_cast<int>(l); }
constexpr int to_int(Axis a) { return static_cast<int>(a); }

// throws std::out_of_range outside 0..5
Label label_from_int(int value);
vec3 direction(Label l);
vec3 direction(Axis a);
std::string_view label_name(Label l);
std::string_view axis_name(Axis a);

// the axis orthogonal to both, none when they coincide
std::optional<Axis> third_axis(Axis a, Axis b);

// label whose direction has the largest dot product with n, ties to the lowest encoding
Label nearest_label(const vec3& n);

using Labeling = std::vector<Label>;

Labeling naive_labeling(const SurfaceMesh& mesh);
// throws MeshError when the labeling does not have one label per triangle
void check_labeling_size(const SurfaceMesh& mesh, const Labeling& labeling);

// (1 + n.dir) / 2, in [0, 1]
double triangle_fidelity(const vec3& normal, Label l);

struct FidelityStats {
    double min = 1.0;
    double area_weighted = 1.0;
    double uniform = 1.0;
};

FidelityStats fidelity(const SurfaceMesh& mesh, const Labeling& labeling);

struct FeatureEdgeStats {
    std::size_t preserved = 0; // feature edge between two different labels
    std::size_t lost = 0;      // feature edge inside a single label
    std::size_t ignored = 0;   // supplied edges below the dihedral threshold

    std::size_t total() const { return preserved + lost + ignored; }
    double preserved_ratio() const { return total() ? static_cast<double>(preserved) / total() : 1.0; }
    double lost_ratio() const { return total() ? static_cast<double>(lost) / total() : 0.0; }
    double ignored_ratio() const { return total() ? static_cast<double>(ignored) / total() : 0.0; }
};

FeatureEdgeStats feature_edge_stats(const SurfaceMesh& mesh, const Labeling& labeling);

} // namespace polycube
