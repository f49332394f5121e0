#pragma once

#include "polycube/graphcut.h"
#include "polycube/labeling_graph.h"
#include "polycube/operators.h"
#include "polycube/validity.h"

#include <json.hpp>

#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace polycube {

enum class LabelingStatus { ValidAllMonotone, ValidWithTurningPoints, Invalid, Failed };

std::string_view status_name(LabelingStatus status);
LabelingStatus status_from_name(std::string_view name);

struct PipelineConfig {
    GraphCutParams graphcut;
    ValidityConfig validity;
    GraphOptions graph;
    int max_iterations = 10;
    bool naive_initial_labeling = false;
    int width = 3;  // rings of the strip inserted along an invalid boundary
    int radius = 3; // rings of the disk inserted on an invalid corner
};

struct OperatorLogEntry {
    std::string name;
    std::string target;
    std::size_t changed = 0;

    bool operator==(const OperatorLogEntry&) const = default;
};

// Current labeling with its graph and validity report, rebuilt after every committed change.
class PipelineState {
public:
    PipelineState(const SurfaceMesh& mesh, Labeling labeling, PipelineConfig config = {});

    const SurfaceMesh& mesh() const { return *mesh_; }
    const Labeling& labeling() const { return labeling_; }
    const LabelingGraph& graph() const { return graph_; }
    const ValidityReport& report() const { return report_; }
    const PipelineConfig& config() const { return config_; }
    bool is_valid() const { return report_.is_valid(); }
    StateTuple tuple() const { return state_tuple(graph_, report_); }

    // commits an applied outcome; with keep_valid the change is rolled back when it breaks validity
    bool commit(const OperatorOutcome& outcome, std::string_view name, std::string target, bool keep_valid = false);

    int iterations = 0;
    std::set<StateTuple> visited;
    std::vector<OperatorLogEntry> log;
    std::size_t escapes = 0; // times the cycle escape of the validity routine fired

private:
    const SurfaceMesh* mesh_;
    Labeling labeling_;
    PipelineConfig config_;
    LabelingGraph graph_;
    ValidityReport report_;
};

void routine_validity(PipelineState& state);
void routine_monotonicity(PipelineState& state);

struct StageDurations {
    double initial_labeling = 0.0; // seconds
    double validity = 0.0;
    double monotonicity = 0.0;
    double total = 0.0;
};

struct MetricsReport {
    static constexpr int SCHEMA_VERSION = 1;

    LabelingStatus status = LabelingStatus::Failed;
    FidelityStats fidelity;
    FeatureEdgeStats feature_edges;
    std::size_t charts = 0;
    std::size_t boundaries = 0;
    std::size_t corners = 0;
    std::size_t invalid_charts = 0;
    std::size_t invalid_boundaries = 0;
    std::size_t invalid_corners = 0;
    std::size_t turning_points = 0;
    std::size_t operators_applied = 0;
    std::string error; // set when the status is failed
    StageDurations durations;
};

bool same_metrics(const MetricsReport& a, const MetricsReport& b, bool compare_durations = true);

MetricsReport compute_report(const SurfaceMesh& mesh, const Labeling& labeling, const LabelingGraph& graph,
                             const ValidityConfig& config = {}, const StageDurations& durations = {});

nlohmann::json report_to_json(const MetricsReport& report);
MetricsReport report_from_json(const nlohmann::json& json);

struct PipelineResult {
    Labeling labeling;
    MetricsReport report;
    std::vector<OperatorLogEntry> log;
};

// initial labeling, validity routine, then monotonicity routine when valid; never throws
PipelineResult run_pipeline(const SurfaceMesh& mesh, const PipelineConfig& config = {});

} // namespace polycube
