#pragma once

#include "polycube/labeling_graph.h"

#include <array>
#include <optional>
#include <string_view>
#include <vector>

namespace polycube {

enum class CornerRule { Legacy, Improved };

std::string_view corner_rule_name(CornerRule rule);
CornerRule corner_rule_from_name(std::string_view name);

struct ValidityConfig {
    bool allow_opposite_labels = true;
    double reflex_fraction = 1.0; // share of reflex edges required along a same-axis boundary
    CornerRule corner_rule = CornerRule::Improved;

    void check() const;
};

struct ValidityReport {
    std::vector<index_t> invalid_charts;
    std::vector<index_t> invalid_boundaries;
    std::vector<index_t> invalid_corners;

    bool is_valid() const { return invalid_charts.empty() && invalid_boundaries.empty() && invalid_corners.empty(); }
};

// (#charts, #boundaries, #corners, #invalid charts, #invalid boundaries, #invalid corners, #turning-points)
using StateTuple = std::array<std::size_t, 7>;
StateTuple state_tuple(const LabelingGraph& graph, const ValidityReport& report);

bool chart_valid(const LabelingGraph& graph, index_t chart);
bool boundary_valid(const SurfaceMesh& mesh, const LabelingGraph& graph, index_t boundary, const ValidityConfig& config = {});
// an undefined axis makes the corner invalid
bool corner_axes_valid(const std::vector<std::optional<Axis>>& axes, CornerRule rule);
bool corner_valid(const LabelingGraph& graph, index_t corner, const ValidityConfig& config = {});

ValidityReport validate_labeling(const SurfaceMesh& mesh, const LabelingGraph& graph, const ValidityConfig& config = {});

} // namespace polycube
