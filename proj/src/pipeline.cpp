#include "polycube/pipeline.h"

#include <fmt/core.h>

#include <chrono>
#include <stdexcept>

namespace polycube {

namespace {

constexpr int PHASE_CAP = 200; // operator applications per phase of a routine

bool on_feature_edge(const SurfaceMesh& mesh, const Boundary& b, const TurningPoint& tp) {
    const std::size_t n = b.halfedges.size();
    return mesh.is_feature_edge(mesh.edge(b.halfedges[tp.index])) ||
           mesh.is_feature_edge(mesh.edge(b.halfedges[(tp.index + n - 1) % n]));
}

std::vector<index_t> turning_point_order(const LabelingGraph& graph) {
    std::vector<index_t> vertices;
    for (const Boundary& b : graph.boundaries())
        for (const TurningPoint& tp : b.turning_points)
            vertices.push_back(tp.vertex);
    return vertices;
}

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

} // namespace

std::string_view status_name(LabelingStatus status) {
    switch (status) {
    case LabelingStatus::ValidAllMonotone:
        return "valid-all-monotone";
    case LabelingStatus::ValidWithTurningPoints:
        return "valid-with-turning-points";
    case LabelingStatus::Invalid:
        return "invalid";
    case LabelingStatus::Failed:
        return "failed";
    }
    return "failed";
}

LabelingStatus status_from_name(std::string_view name) {
    for (auto s : {LabelingStatus::ValidAllMonotone, LabelingStatus::ValidWithTurningPoints, LabelingStatus::Invalid, LabelingStatus::Failed})
        if (status_name(s) == name)
            return s;
    throw std::invalid_argument(fmt::format("unknown labeling status '{}'", name));
}

PipelineState::PipelineState(const SurfaceMesh& mesh, Labeling labeling, PipelineConfig config)
    : mesh_(&mesh), labeling_(std::move(labeling)), config_(std::move(config)), graph_(mesh, labeling_, config_.graph),
      report_(validate_labeling(mesh, graph_, config_.validity)) {}

bool PipelineState::commit(const OperatorOutcome& outcome, std::string_view name, std::string target, bool keep_valid) {
    if (!outcome.applied)
        return false;
    LabelingGraph graph(*mesh_, outcome.labeling, config_.graph);
    ValidityReport report = validate_labeling(*mesh_, graph, config_.validity);
    if (keep_valid && !report.is_valid())
        return false;
    labeling_ = outcome.labeling;
    graph_ = std::move(graph);
    report_ = std::move(report);
    log.push_back({std::string(name), std::move(target), outcome.changed.size()});
    return true;
}

void routine_validity(PipelineState& state) {
    const PipelineConfig& config = state.config();
    const SurfaceMesh& mesh = state.mesh();
    while (!state.is_valid() && state.iterations < config.max_iterations) {
        state.iterations++;

        // (a) charts surrounded by feature edges get a new neighbor
        for (int guard = 0; guard < PHASE_CAP; ++guard) {
            bool processed = false;
            for (index_t c : state.report().invalid_charts) {
                if (!state.graph().chart(c).surrounded_by_feature_edges)
                    continue;
                if (state.commit(increase_chart_valence(mesh, state.labeling(), state.graph(), c), "increase_chart_valence", fmt::format("chart {}", c))) {
                    processed = true;
                    break;
                }
            }
            if (!processed)
                break;
        }
        if (state.is_valid())
            return;

        // (b) invalid boundaries
        for (int guard = 0; guard < PHASE_CAP; ++guard) {
            bool processed = false;
            for (index_t b : state.report().invalid_boundaries)
                if (state.commit(fix_invalid_boundary(mesh, state.labeling(), state.graph(), b, config.width, config.validity), "fix_invalid_boundary", fmt::format("boundary {}", b))) {
                    processed = true;
                    break;
                }
            if (!processed)
                break;
        }
        if (state.is_valid())
            return;

        // (c) invalid corners, shrinking the disk when it would swallow a chart
        for (int guard = 0; guard < PHASE_CAP; ++guard) {
            bool processed = false;
            for (index_t c : state.report().invalid_corners) {
                for (int radius = config.radius; radius >= 1 && !processed; --radius) {
                    try {
                        processed = state.commit(fix_invalid_corner(mesh, state.labeling(), state.graph(), c, radius, config.validity),
                                                 "fix_invalid_corner", fmt::format("corner {}", c));
                        break;
                    } catch (const OperatorError&) {
                        continue;
                    }
                }
                if (processed)
                    break;
            }
            if (!processed)
                break;
        }
        if (state.is_valid())
            return;

        // (d) chart removal until the state repeats
        for (int guard = 0; guard < PHASE_CAP; ++guard) {
            for (int removals = 0; removals < PHASE_CAP; ++removals) {
                bool processed = false;
                for (index_t c : state.report().invalid_charts) {
                    if (state.graph().chart(c).surrounded_by_feature_edges)
                        continue;
                    if (state.commit(remove_chart(mesh, state.labeling(), state.graph(), c, config.graphcut), "remove_chart", fmt::format("chart {}", c))) {
                        processed = true;
                        break;
                    }
                }
                if (!processed)
                    break;
            }
            if (state.is_valid())
                return;
            if (state.visited.count(state.tuple())) {
                // remove the charts on both sides of every invalid boundary, identified by one triangle each
                state.escapes++;
                std::vector<index_t> seeds;
                for (index_t b : state.report().invalid_boundaries) {
                    const Boundary& boundary = state.graph().boundary(b);
                    seeds.push_back(state.graph().chart(boundary.left_chart).triangles.front());
                    seeds.push_back(state.graph().chart(boundary.right_chart).triangles.front());
                }
                for (index_t t : seeds) {
                    index_t c = state.graph().chart_of(t);
                    state.commit(remove_chart(mesh, state.labeling(), state.graph(), c, config.graphcut), "remove_chart", fmt::format("chart {}", c));
                }
                break;
            }
            state.visited.insert(state.tuple());
        }
    }
}

void routine_monotonicity(PipelineState& state) {
    const SurfaceMesh& mesh = state.mesh();
    if (!state.is_valid() || state.graph().turning_point_count() == 0)
        return;

    // pairs of turning-points joined by lost feature edges
    std::set<std::pair<index_t, index_t>> skipped_pairs;
    for (int guard = 0; guard < PHASE_CAP; ++guard) {
        std::vector<index_t> tps = turning_point_order(state.graph());
        std::optional<std::pair<index_t, index_t>> pair;
        for (std::size_t i = 0; i < tps.size() && !pair; ++i)
            for (std::size_t j = i + 1; j < tps.size() && !pair; ++j)
                if (tps[i] != tps[j] && !skipped_pairs.count({tps[i], tps[j]}) && lost_feature_path(mesh, state.graph(), tps[i], tps[j]))
                    pair = std::make_pair(tps[i], tps[j]);
        if (!pair)
            break;
        OperatorOutcome outcome = join_turning_points_pair(mesh, state.labeling(), state.graph(), pair->first, pair->second);
        if (!state.commit(outcome, "join_turning_points_pair", fmt::format("vertices {} {}", pair->first, pair->second), true))
            skipped_pairs.insert(*pair);
    }
    if (state.graph().turning_point_count() == 0)
        return;

    // turning-points on feature edges: pull their closest corner, then smooth ones: move the boundary
    for (bool feature_pass : {true, false}) {
        std::set<index_t> skipped;
        for (int guard = 0; guard < PHASE_CAP; ++guard) {
            std::optional<index_t> target;
            for (const Boundary& b : state.graph().boundaries()) {
                for (const TurningPoint& tp : b.turning_points)
                    if (on_feature_edge(mesh, b, tp) == feature_pass && !skipped.count(tp.vertex)) {
                        target = tp.vertex;
                        break;
                    }
                if (target)
                    break;
            }
            if (!target)
                break;
            OperatorOutcome outcome = feature_pass
                ? pull_closest_corner(mesh, state.labeling(), state.graph(), *target)
                : move_boundary_near_turning_point(mesh, state.labeling(), state.graph(), *target, state.config().radius);
            if (!state.commit(outcome, feature_pass ? "pull_closest_corner" : "move_boundary_near_turning_point", fmt::format("vertex {}", *target), true))
                skipped.insert(*target);
        }
        if (state.graph().turning_point_count() == 0)
            return;
    }

    // straighten every boundary off feature edges, each identified by its first edge
    std::vector<index_t> representatives;
    for (const Boundary& b : state.graph().boundaries())
        if (!b.on_feature_edges && !b.is_closed())
            representatives.push_back(mesh.edge(b.halfedges.front()));
    for (index_t e : representatives) {
        index_t b = state.graph().boundary_of_edge(e);
        if (b == NO_INDEX || state.graph().boundary(b).on_feature_edges || state.graph().boundary(b).is_closed())
            continue;
        state.commit(straighten_boundary(mesh, state.labeling(), state.graph(), b), "straighten_boundary", fmt::format("boundary {}", b), true);
    }
}

bool same_metrics(const MetricsReport& a, const MetricsReport& b, bool compare_durations) {
    auto same_fidelity = a.fidelity.min == b.fidelity.min && a.fidelity.area_weighted == b.fidelity.area_weighted && a.fidelity.uniform == b.fidelity.uniform;
    auto same_features = a.feature_edges.preserved == b.feature_edges.preserved && a.feature_edges.lost == b.feature_edges.lost &&
                         a.feature_edges.ignored == b.feature_edges.ignored;
    auto same_counts = a.charts == b.charts && a.boundaries == b.boundaries && a.corners == b.corners && a.invalid_charts == b.invalid_charts &&
                       a.invalid_boundaries == b.invalid_boundaries && a.invalid_corners == b.invalid_corners &&
                       a.turning_points == b.turning_points && a.operators_applied == b.operators_applied;
    auto same_durations = a.durations.initial_labeling == b.durations.initial_labeling && a.durations.validity == b.durations.validity &&
                          a.durations.monotonicity == b.durations.monotonicity && a.durations.total == b.durations.total;
    return a.status == b.status && same_fidelity && same_features && same_counts && a.error == b.error && (!compare_durations || same_durations);
}

MetricsReport compute_report(const SurfaceMesh& mesh, const Labeling& labeling, const LabelingGraph& graph,
                             const ValidityConfig& config, const StageDurations& durations) {
    ValidityReport validity = validate_labeling(mesh, graph, config);
    MetricsReport report;
    report.fidelity = fidelity(mesh, labeling);
    report.feature_edges = feature_edge_stats(mesh, labeling);
    report.charts = graph.charts().size();
    report.boundaries = graph.boundaries().size();
    report.corners = graph.corners().size();
    report.invalid_charts = validity.invalid_charts.size();
    report.invalid_boundaries = validity.invalid_boundaries.size();
    report.invalid_corners = validity.invalid_corners.size();
    report.turning_points = graph.turning_point_count();
    if (!validity.is_valid())
        report.status = LabelingStatus::Invalid;
    else
        report.status = report.turning_points == 0 ? LabelingStatus::ValidAllMonotone : LabelingStatus::ValidWithTurningPoints;
    report.durations = durations;
    return report;
}

nlohmann::json report_to_json(const MetricsReport& report) {
    nlohmann::json json;
    json["schema_version"] = MetricsReport::SCHEMA_VERSION;
    json["status"] = status_name(report.status);
    json["fidelity"] = {{"min", report.fidelity.min}, {"average_area_weighted", report.fidelity.area_weighted}, {"average_uniform", report.fidelity.uniform}};
    json["feature_edges"] = {{"preserved", report.feature_edges.preserved}, {"lost", report.feature_edges.lost},
                             {"ignored", report.feature_edges.ignored}, {"preserved_ratio", report.feature_edges.preserved_ratio()},
                             {"lost_ratio", report.feature_edges.lost_ratio()}, {"ignored_ratio", report.feature_edges.ignored_ratio()}};
    json["components"] = {{"charts", report.charts}, {"boundaries", report.boundaries}, {"corners", report.corners},
                          {"invalid_charts", report.invalid_charts}, {"invalid_boundaries", report.invalid_boundaries},
                          {"invalid_corners", report.invalid_corners}};
    json["turning_points"] = report.turning_points;
    json["operators_applied"] = report.operators_applied;
    if (!report.error.empty())
        json["error"] = report.error;
    json["durations_seconds"] = {{"initial_labeling", report.durations.initial_labeling}, {"validity", report.durations.validity},
                                 {"monotonicity", report.durations.monotonicity}, {"total", report.durations.total}};
    return json;
}

MetricsReport report_from_json(const nlohmann::json& json) {
    if (json.at("schema_version").get<int>() != MetricsReport::SCHEMA_VERSION)
        throw std::invalid_argument("unsupported report schema version");
    MetricsReport report;
    report.status = status_from_name(json.at("status").get<std::string>());
    const auto& f = json.at("fidelity");
    report.fidelity = {f.at("min").get<double>(), f.at("average_area_weighted").get<double>(), f.at("average_uniform").get<double>()};
    const auto& e = json.at("feature_edges");
    report.feature_edges = {e.at("preserved").get<std::size_t>(), e.at("lost").get<std::size_t>(), e.at("ignored").get<std::size_t>()};
    const auto& c = json.at("components");
    report.charts = c.at("charts").get<std::size_t>();
    report.boundaries = c.at("boundaries").get<std::size_t>();
    report.corners = c.at("corners").get<std::size_t>();
    report.invalid_charts = c.at("invalid_charts").get<std::size_t>();
    report.invalid_boundaries = c.at("invalid_boundaries").get<std::size_t>();
    report.invalid_corners = c.at("invalid_corners").get<std::size_t>();
    report.turning_points = json.at("turning_points").get<std::size_t>();
    report.operators_applied = json.at("operators_applied").get<std::size_t>();
    report.error = json.value("error", std::string());
    const auto& d = json.at("durations_seconds");
    report.durations = {d.at("initial_labeling").get<double>(), d.at("validity").get<double>(), d.at("monotonicity").get<double>(),
                        d.at("total").get<double>()};
    return report;
}

PipelineResult run_pipeline(const SurfaceMesh& mesh, const PipelineConfig& config) {
    PipelineResult result;
    StageDurations durations;
    const auto start = Clock::now();
    try {
        auto stage = Clock::now();
        Labeling initial = config.naive_initial_labeling ? naive_labeling(mesh) : tweaked_graphcut_labeling(mesh, config.graphcut);
        durations.initial_labeling = seconds_since(stage);

        PipelineState state(mesh, std::move(initial), config);
        stage = Clock::now();
        routine_validity(state);
        durations.validity = seconds_since(stage);
        stage = Clock::now();
        if (state.is_valid())
            routine_monotonicity(state);
        durations.monotonicity = seconds_since(stage);
        durations.total = seconds_since(start);

        result.labeling = state.labeling();
        result.log = state.log;
        result.report = compute_report(mesh, state.labeling(), state.graph(), config.validity, durations);
        result.report.operators_applied = state.log.size();
    } catch (const std::exception& error) {
        durations.total = seconds_since(start);
        result.report = MetricsReport{};
        result.report.status = LabelingStatus::Failed;
        result.report.error = error.what();
        result.report.durations = durations;
    }
    return result;
}

} // namespace polycube
