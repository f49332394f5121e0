#include "polycube/graphcut.h"

#include "polycube/maxflow.h"

#include <fmt/core.h>

#include <Eigen/Geometry>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace polycube {

namespace {

constexpr double INF = std::numeric_limits<double>::infinity();

Label cheapest_allowed(const LabelCosts& costs) {
    int best = -1;
    for (int l = 0; l < LABEL_COUNT; ++l)
        if (std::isfinite(costs[l]) && (best < 0 || costs[l] < costs[best]))
            best = l;
    if (best < 0)
        throw std::invalid_argument("a node has no allowed label");
    return static_cast<Label>(best);
}

// one binary expansion move: x_i = 0 keeps the label, x_i = 1 switches to alpha
Labeling expansion_move(const LabelingEnergy& energy, const Labeling& current, Label alpha) {
    const index_t n = energy.nb_nodes();
    const index_t source = n, sink = n + 1;
    std::vector<bool> variable(n);
    std::vector<double> cost0(n, 0.0), cost1(n, 0.0);
    bool any = false;
    for (index_t i = 0; i < n; ++i) {
        variable[i] = current[i] != alpha && std::isfinite(energy.unary[i][to_int(alpha)]);
        any = any || variable[i];
        cost0[i] = energy.unary[i][to_int(current[i])];
        cost1[i] = energy.unary[i][to_int(alpha)];
    }
    if (!any)
        return current;

    CutProblem cut;
    cut.nb_nodes = n + 2;
    cut.source = source;
    cut.sink = sink;
    for (std::size_t k = 0; k < energy.edges.size(); ++k) {
        auto [i, j] = energy.edges[k];
        double w = energy.weights[k];
        if (w == 0.0 || i == j)
            continue;
        double e00 = current[i] != current[j] ? w : 0.0;
        double e01 = current[i] != alpha ? w : 0.0;
        double e10 = alpha != current[j] ? w : 0.0;
        if (variable[i] && variable[j]) {
            // E = A + (C-A) x_i + (D-C) x_j + (B+C-A-D)(1-x_i) x_j with D = 0
            cost1[i] += e10 - e00;
            cost1[j] += -e10;
            cut.arcs.push_back({i, j, e01 + e10 - e00});
        } else if (variable[i]) {
            cost0[i] += e00;
            cost1[i] += e10;
        } else if (variable[j]) {
            cost0[j] += e00;
            cost1[j] += e01;
        }
    }
    for (index_t i = 0; i < n; ++i) {
        if (!variable[i])
            continue;
        if (cost1[i] > cost0[i])
            cut.arcs.push_back({source, i, cost1[i] - cost0[i]});
        else if (cost0[i] > cost1[i])
            cut.arcs.push_back({i, sink, cost0[i] - cost1[i]});
    }
    CutResult result = min_cut(cut);
    Labeling proposal = current;
    for (index_t i = 0; i < n; ++i)
        if (variable[i] && !result.source_side[i])
            proposal[i] = alpha;
    return proposal;
}

} // namespace

double LabelingEnergy::evaluate(const Labeling& labeling) const {
    double total = 0.0;
    for (index_t i = 0; i < nb_nodes(); ++i)
        total += unary[i][to_int(labeling[i])];
    for (std::size_t k = 0; k < edges.size(); ++k)
        if (labeling[edges[k].first] != labeling[edges[k].second])
            total += weights[k];
    return total;
}

ExpansionResult alpha_expansion(const LabelingEnergy& energy, Labeling initial) {
    if (initial.size() != energy.nb_nodes())
        throw std::invalid_argument("initial labeling size does not match the energy");
    for (index_t i = 0; i < energy.nb_nodes(); ++i)
        if (!std::isfinite(energy.unary[i][to_int(initial[i])]))
            initial[i] = cheapest_allowed(energy.unary[i]);

    ExpansionResult result;
    result.labeling = std::move(initial);
    result.energy = energy.evaluate(result.labeling);
    result.energy_trace.push_back(result.energy);
    bool improved = true;
    while (improved) {
        improved = false;
        result.sweeps++;
        for (int alpha = 0; alpha < LABEL_COUNT; ++alpha) {
            Labeling proposal = expansion_move(energy, result.labeling, static_cast<Label>(alpha));
            double value = energy.evaluate(proposal);
            if (value < result.energy - 1e-12 * (1.0 + std::abs(result.energy))) {
                result.labeling = std::move(proposal);
                result.energy = value;
                result.energy_trace.push_back(value);
                improved = true;
            }
        }
    }
    return result;
}

std::string_view smoothness_mode_name(SmoothnessMode mode) {
    switch (mode) {
    case SmoothnessMode::UniformPotts:
        return "uniform-potts";
    case SmoothnessMode::AngleProportional:
        return "angle-proportional";
    case SmoothnessMode::CreaseDiscount:
        return "crease-discount";
    }
    return "uniform-potts";
}

SmoothnessMode smoothness_mode_from_name(std::string_view name) {
    for (auto mode : {SmoothnessMode::UniformPotts, SmoothnessMode::AngleProportional, SmoothnessMode::CreaseDiscount})
        if (smoothness_mode_name(mode) == name)
            return mode;
    throw std::invalid_argument(fmt::format("unknown smoothness mode '{}'", name));
}

void GraphCutParams::check() const {
    if (!(tilt_angle > 0.0 && tilt_angle < std::numbers::pi / 8))
        throw std::invalid_argument(fmt::format("tilt angle {} outside (0, pi/8)", tilt_angle));
    if (!(compactness >= 0.0) || !(fidelity >= 0.0) || !(sensitivity >= 0.0))
        throw std::invalid_argument("graph-cut weights must be non-negative");
}

Eigen::Matrix3d tilt_rotation(double angle) {
    Eigen::Matrix3d rx = Eigen::AngleAxisd(angle, vec3::UnitX()).toRotationMatrix();
    Eigen::Matrix3d ry = Eigen::AngleAxisd(angle, vec3::UnitY()).toRotationMatrix();
    Eigen::Matrix3d rz = Eigen::AngleAxisd(angle, vec3::UnitZ()).toRotationMatrix();
    return rz * ry * rx;
}

std::vector<bool> detect_tilt_candidates(const SurfaceMesh& mesh, double sensitivity) {
    std::vector<bool> tilted(mesh.nb_triangles(), false);
    for (index_t t = 0; t < mesh.nb_triangles(); ++t) {
        std::array<double, LABEL_COUNT> dots;
        for (int l = 0; l < LABEL_COUNT; ++l)
            dots[l] = mesh.normal(t).dot(direction(static_cast<Label>(l)));
        std::sort(dots.begin(), dots.end(), std::greater<>());
        tilted[t] = dots[0] - dots[1] < sensitivity;
    }
    return tilted;
}

double smoothness_weight(const SurfaceMesh& mesh, index_t edge, const GraphCutParams& params) {
    double angle = std::abs(mesh.dihedral(edge) - std::numbers::pi);
    switch (params.smoothness) {
    case SmoothnessMode::UniformPotts:
        return params.compactness;
    case SmoothnessMode::AngleProportional:
        return params.compactness * angle;
    case SmoothnessMode::CreaseDiscount:
        return params.compactness * std::exp(-(angle / 0.25) * (angle / 0.25));
    }
    return params.compactness;
}

namespace {

LabelCosts data_costs(const vec3& normal, double fidelity_weight) {
    LabelCosts costs;
    for (int l = 0; l < LABEL_COUNT; ++l)
        costs[l] = fidelity_weight * std::acos(std::clamp(normal.dot(direction(static_cast<Label>(l))), -1.0, 1.0));
    return costs;
}

} // namespace

LabelingEnergy build_labeling_problem(const SurfaceMesh& mesh, const GraphCutParams& params, const std::vector<bool>& tilted) {
    params.check();
    const Eigen::Matrix3d rotation = tilt_rotation(params.tilt_angle);
    LabelingEnergy energy;
    energy.unary.resize(mesh.nb_triangles());
    for (index_t t = 0; t < mesh.nb_triangles(); ++t) {
        vec3 n = (t < tilted.size() && tilted[t]) ? vec3(rotation * mesh.normal(t)) : mesh.normal(t);
        energy.unary[t] = data_costs(n, params.fidelity);
    }
    for (index_t e = 0; e < mesh.nb_edges(); ++e) {
        auto [a, b] = mesh.edge_triangles(e);
        energy.edges.emplace_back(a, b);
        energy.weights.push_back(smoothness_weight(mesh, e, params));
    }
    return energy;
}

Labeling tweaked_graphcut_labeling(const SurfaceMesh& mesh, const GraphCutParams& params) {
    std::vector<bool> tilted = detect_tilt_candidates(mesh, params.sensitivity);
    LabelingEnergy energy = build_labeling_problem(mesh, params, tilted);
    const Eigen::Matrix3d rotation = tilt_rotation(params.tilt_angle);
    Labeling initial(mesh.nb_triangles());
    for (index_t t = 0; t < mesh.nb_triangles(); ++t)
        initial[t] = nearest_label(tilted[t] ? vec3(rotation * mesh.normal(t)) : mesh.normal(t));
    return alpha_expansion(energy, std::move(initial)).labeling;
}

Labeling restricted_relabel(const SurfaceMesh& mesh, const Labeling& labeling, const std::vector<index_t>& triangles,
                            const std::vector<LabelMask>& masks, const GraphCutParams& params) {
    check_labeling_size(mesh, labeling);
    params.check();
    if (masks.size() != triangles.size())
        throw std::invalid_argument("one label mask per relabeled triangle is required");
    std::vector<index_t> node_of(mesh.nb_triangles(), NO_INDEX);
    for (index_t i = 0; i < triangles.size(); ++i) {
        if (masks[i] == 0)
            throw std::invalid_argument(fmt::format("triangle {} has an empty label mask", triangles[i]));
        node_of[triangles[i]] = i;
    }
    LabelingEnergy energy;
    energy.unary.resize(triangles.size());
    Labeling initial(triangles.size());
    for (index_t i = 0; i < triangles.size(); ++i) {
        index_t t = triangles[i];
        energy.unary[i] = data_costs(mesh.normal(t), params.fidelity);
        for (int l = 0; l < LABEL_COUNT; ++l)
            if (!(masks[i] & (1u << l)))
                energy.unary[i][l] = INF;
        initial[i] = labeling[t];
    }
    for (index_t i = 0; i < triangles.size(); ++i) {
        index_t t = triangles[i];
        for (int k = 0; k < 3; ++k) {
            index_t h = 3 * t + k;
            index_t u = mesh.neighbor(t, k);
            double w = smoothness_weight(mesh, mesh.edge(h), params);
            if (node_of[u] == NO_INDEX) {
                // fixed exterior neighbor becomes a unary term
                for (int l = 0; l < LABEL_COUNT; ++l)
                    if (static_cast<Label>(l) != labeling[u])
                        energy.unary[i][l] += w;
            } else if (t < u) {
                energy.edges.emplace_back(i, node_of[u]);
                energy.weights.push_back(w);
            }
        }
    }
    ExpansionResult result = alpha_expansion(energy, std::move(initial));
    Labeling out = labeling;
    for (index_t i = 0; i < triangles.size(); ++i)
        out[triangles[i]] = result.labeling[i];
    return out;
}

} // namespace polycube
