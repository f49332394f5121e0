#pragma once

#include "polycube/labeling.h"

#include <array>
#include <cstdint>
#include <string_view>
#include <vector>

namespace polycube {

using LabelCosts = std::array<double, LABEL_COUNT>; // +inf marks a disallowed label

// Multi-label energy with Potts pairwise terms:
// E(l) = sum_i unary[i][l_i] + sum_e weight_e [l_a != l_b]
struct LabelingEnergy {
    std::vector<LabelCosts> unary;
    std::vector<std::pair<index_t, index_t>> edges;
    std::vector<double> weights;

    index_t nb_nodes() const { return static_cast<index_t>(unary.size()); }
    double evaluate(const Labeling& labeling) const;
};

struct ExpansionResult {
    Labeling labeling;
    double energy = 0.0;
    std::vector<double> energy_trace; // energy after the initial labeling and after every accepted move
    int sweeps = 0;
};

// Alpha-expansion sweeping labels 0..5 until a full sweep brings no improvement.
// Initial labels that are disallowed are replaced by the cheapest allowed one.
ExpansionResult alpha_expansion(const LabelingEnergy& energy, Labeling initial);

enum class SmoothnessMode { UniformPotts, AngleProportional, CreaseDiscount };

std::string_view smoothness_mode_name(SmoothnessMode mode);
SmoothnessMode smoothness_mode_from_name(std::string_view name);

struct GraphCutParams {
    double compactness = 1.0;   // smoothness weight
    double fidelity = 3.0;      // data weight
    double sensitivity = 1e-10; // gap between the two best labels below which a triangle is tilted
    double tilt_angle = 0.05;   // radians, in (0, pi/8)
    SmoothnessMode smoothness = SmoothnessMode::UniformPotts;

    void check() const;
};

// rotation about X, then Y, then Z by the tilt angle
Eigen::Matrix3d tilt_rotation(double angle);

// triangles whose best and second best label dot products differ by less than the sensitivity
std::vector<bool> detect_tilt_candidates(const SurfaceMesh& mesh, double sensitivity);

double smoothness_weight(const SurfaceMesh& mesh, index_t edge, const GraphCutParams& params);

// data term fidelity * acos(n.dir) on the (possibly tilted) normal, one node per triangle, one pairwise term per edge
LabelingEnergy build_labeling_problem(const SurfaceMesh& mesh, const GraphCutParams& params, const std::vector<bool>& tilted);

Labeling tweaked_graphcut_labeling(const SurfaceMesh& mesh, const GraphCutParams& params = {});

using LabelMask = std::uint8_t; // bit l set when label l is allowed
constexpr LabelMask ALL_LABELS = 0x3f;
constexpr LabelMask mask_of(Label l) { return static_cast<LabelMask>(1u << to_int(l)); }

// Re-optimizes the labels of a subset of triangles, the other triangles acting as fixed boundary conditions.
// masks has one entry per triangle of the subset; an empty mask throws.
Labeling restricted_relabel(const SurfaceMesh& mesh, const Labeling& labeling, const std::vector<index_t>& triangles,
                            const std::vector<LabelMask>& masks, const GraphCutParams& params = {});

} // namespace polycube
