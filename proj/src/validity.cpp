#include "polycube/validity.h"

#include <fmt/core.h>

#include <numbers>
#include <stdexcept>

namespace polycube {

std::string_view corner_rule_name(CornerRule rule) {
    return rule == CornerRule::Legacy ? "legacy" : "improved";
}

CornerRule corner_rule_from_name(std::string_view name) {
    if (name == "legacy")
        return CornerRule::Legacy;
    if (name == "improved")
        return CornerRule::Improved;
    throw std::invalid_argument(fmt::format("unknown corner rule '{}'", name));
}

void ValidityConfig::check() const {
    if (!(reflex_fraction >= 0.0 && reflex_fraction <= 1.0))
        throw std::invalid_argument(fmt::format("reflex fraction {} outside [0, 1]", reflex_fraction));
}

StateTuple state_tuple(const LabelingGraph& graph, const ValidityReport& report) {
    return {graph.charts().size(),         graph.boundaries().size(),         graph.corners().size(),
            report.invalid_charts.size(),  report.invalid_boundaries.size(),  report.invalid_corners.size(),
            graph.turning_point_count()};
}

bool chart_valid(const LabelingGraph& graph, index_t chart) {
    return graph.chart(chart).valence() >= 4;
}

bool boundary_valid(const SurfaceMesh& mesh, const LabelingGraph& graph, index_t boundary, const ValidityConfig& config) {
    const Boundary& b = graph.boundary(boundary);
    if (b.axis)
        return true;
    if (!config.allow_opposite_labels)
        return false;
    std::size_t reflex = 0;
    for (index_t h : b.halfedges)
        if (mesh.dihedral(mesh.edge(h)) > std::numbers::pi)
            reflex++;
    return static_cast<double>(reflex) >= config.reflex_fraction * static_cast<double>(b.length());
}

bool corner_axes_valid(const std::vector<std::optional<Axis>>& axes, CornerRule rule) {
    std::array<std::size_t, 3> counts = {0, 0, 0};
    for (const auto& axis : axes) {
        if (!axis)
            return false;
        counts[to_int(*axis)]++;
    }
    bool trio = axes.size() == 3 && counts[0] == 1 && counts[1] == 1 && counts[2] == 1;
    if (rule == CornerRule::Legacy)
        return trio;
    int nonzero = 0;
    bool all_even = true;
    for (std::size_t c : counts) {
        nonzero += c > 0;
        all_even = all_even && c % 2 == 0;
    }
    return trio || (all_even && nonzero >= 2);
}

bool corner_valid(const LabelingGraph& graph, index_t corner, const ValidityConfig& config) {
    std::vector<std::optional<Axis>> axes;
    for (const auto& incidence : graph.corner(corner).incidences)
        axes.push_back(graph.boundary(incidence.boundary).axis);
    return corner_axes_valid(axes, config.corner_rule);
}

ValidityReport validate_labeling(const SurfaceMesh& mesh, const LabelingGraph& graph, const ValidityConfig& config) {
    config.check();
    ValidityReport report;
    for (index_t c = 0; c < graph.charts().size(); ++c)
        if (!chart_valid(graph, c))
            report.invalid_charts.push_back(c);
    for (index_t b = 0; b < graph.boundaries().size(); ++b)
        if (!boundary_valid(mesh, graph, b, config))
            report.invalid_boundaries.push_back(b);
    for (index_t c = 0; c < graph.corners().size(); ++c)
        if (!corner_valid(graph, c, config))
            report.invalid_corners.push_back(c);
    return report;
}

} // namespace polycube
