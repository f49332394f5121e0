#include "polycube/cli.h"

#include "polycube/io.h"
#include "polycube/pipeline.h"

#include <CLI11.hpp>
#include <fmt/core.h>

#include <cmath>
#include <optional>

namespace polycube {

namespace {

constexpr int EXIT_INVALID = 1;
constexpr int EXIT_INPUT = 2;

struct MeshInput {
    std::string mesh_path;
    std::string feature_path;
    double feature_angle_deg = 45.0;

    void add_to(CLI::App* cmd) {
        cmd->add_option("mesh", mesh_path, "triangle mesh (.obj or .mesh)")->required();
        cmd->add_option("--features", feature_path, "feature edge file, one vertex pair per line");
        cmd->add_option("--feature-angle", feature_angle_deg, "dihedral deviation in degrees marking a feature edge")
            ->check(CLI::Range(0.0, 180.0));
    }

    SurfaceMesh load() const {
        FeatureOptions options;
        options.threshold = feature_angle_deg * M_PI / 180.0;
        if (!feature_path.empty())
            options.supplied_edges = read_feature_edge_file(feature_path);
        return load_mesh(mesh_path, options);
    }
};

struct ValidityFlags {
    bool allow_opposite_labels = true;
    std::string corner_rule = "improved";
    double reflex_fraction = 1.0;

    void add_to(CLI::App* cmd) {
        cmd->add_flag("--allow-opposite-labels", allow_opposite_labels, "accept same-axis boundaries on reflex edges");
        cmd->add_option("--corner-rule", corner_rule, "legacy or improved")->check(CLI::IsMember({"legacy", "improved"}));
        cmd->add_option("--reflex-fraction", reflex_fraction, "share of reflex edges a same-axis boundary needs")
            ->check(CLI::Range(0.0, 1.0));
    }

    ValidityConfig config() const {
        ValidityConfig c;
        c.allow_opposite_labels = allow_opposite_labels;
        c.corner_rule = corner_rule_from_name(corner_rule);
        c.reflex_fraction = reflex_fraction;
        c.check();
        return c;
    }
};

struct LabelFlags {
    MeshInput input;
    ValidityFlags validity;
    std::string output;
    std::string report_path;
    std::string log_path;
    bool naive = false;
    GraphCutParams graphcut;
    std::string smoothness = "uniform-potts";
    int max_iterations = 10;
    double flip_penalty = 1.0;
    int width = 3;
    int radius = 3;
};

struct LabelingInput {
    MeshInput input;
    std::string labeling_path;
    ValidityFlags validity;
    double flip_penalty = 1.0;

    void add_to(CLI::App* cmd) {
        input.add_to(cmd);
        cmd->add_option("labeling", labeling_path, "labeling file, one label 0..5 per line")->required();
        validity.add_to(cmd);
        cmd->add_option("--flip-penalty", flip_penalty, "turning-point smoothing weight")->check(CLI::PositiveNumber);
    }
};

void write_json(const std::string& path, const nlohmann::json& json) {
    write_text(path, json.dump(2) + "\n");
}

int run_label(const LabelFlags& f) {
    PipelineConfig config;
    config.graphcut = f.graphcut;
    config.graphcut.smoothness = smoothness_mode_from_name(f.smoothness);
    config.graphcut.check();
    config.validity = f.validity.config();
    config.graph.flip_penalty = f.flip_penalty;
    config.max_iterations = f.max_iterations;
    config.naive_initial_labeling = f.naive;
    config.width = f.width;
    config.radius = f.radius;

    SurfaceMesh mesh = f.input.load();
    PipelineResult result = run_pipeline(mesh, config);
    std::string output = f.output;
    if (output.empty())
        output = std::filesystem::path(f.input.mesh_path).replace_extension(".flags").string();
    if (result.report.status != LabelingStatus::Failed)
        write_labeling(output, result.labeling);
    if (!f.report_path.empty())
        write_json(f.report_path, report_to_json(result.report));
    if (!f.log_path.empty()) {
        std::string text;
        for (const auto& entry : result.log)
            text += fmt::format("{}\t{}\t{}\n", entry.name, entry.target, entry.changed);
        write_text(f.log_path, text);
    }
    fmt::print(stderr, "{}: {} ({} charts, {} turning points)\n", f.input.mesh_path, status_name(result.report.status),
               result.report.charts, result.report.turning_points);
    if (result.report.status == LabelingStatus::Failed) {
        fmt::print(stderr, "error: {}\n", result.report.error);
        return EXIT_INPUT;
    }
    return 0;
}

OperatorOutcome apply_operator(const SurfaceMesh& mesh, const Labeling& labeling, const LabelingGraph& graph, const std::string& op,
                               index_t target, std::optional<index_t> target2, int width, int radius, const ValidityConfig& validity) {
    if (op == "fix_invalid_boundary")
        return fix_invalid_boundary(mesh, labeling, graph, target, width, validity);
    if (op == "fix_invalid_corner")
        return fix_invalid_corner(mesh, labeling, graph, target, radius, validity);
    if (op == "remove_chart")
        return remove_chart(mesh, labeling, graph, target);
    if (op == "increase_chart_valence")
        return increase_chart_valence(mesh, labeling, graph, target);
    if (op == "join_turning_points_pair") {
        if (!target2)
            throw CLI::ValidationError("--target2", "join_turning_points_pair needs a second turning-point vertex");
        return join_turning_points_pair(mesh, labeling, graph, target, *target2);
    }
    if (op == "pull_closest_corner")
        return pull_closest_corner(mesh, labeling, graph, target);
    if (op == "move_boundary_near_turning_point")
        return move_boundary_near_turning_point(mesh, labeling, graph, target, radius);
    return straighten_boundary(mesh, labeling, graph, target);
}

} // namespace

int cli_main(int argc, const char* const* argv) {
    CLI::App app{"Polycube labeling: compute, validate and repair per-triangle axis labels"};
    app.require_subcommand(1);

    LabelFlags label;
    CLI::App* label_cmd = app.add_subcommand("label", "compute a labeling with the repair pipeline");
    label.input.add_to(label_cmd);
    label.validity.add_to(label_cmd);
    label_cmd->add_option("-o,--output", label.output, "labeling output (default: mesh path with .flags)");
    label_cmd->add_option("--report", label.report_path, "metrics report JSON output");
    label_cmd->add_option("--log-ops", label.log_path, "operator log output");
    label_cmd->add_flag("--naive", label.naive, "start from the nearest-label labeling instead of the graph cut");
    label_cmd->add_option("--compactness", label.graphcut.compactness)->check(CLI::NonNegativeNumber);
    label_cmd->add_option("--fidelity", label.graphcut.fidelity)->check(CLI::PositiveNumber);
    label_cmd->add_option("--sensitivity", label.graphcut.sensitivity)->check(CLI::NonNegativeNumber);
    label_cmd->add_option("--tilt-angle", label.graphcut.tilt_angle, "radians, in (0, pi/8)");
    label_cmd->add_option("--smoothness-mode", label.smoothness)
        ->check(CLI::IsMember({"uniform-potts", "angle-proportional", "crease-discount"}));
    label_cmd->add_option("--max-iterations", label.max_iterations)->check(CLI::NonNegativeNumber);
    label_cmd->add_option("--flip-penalty", label.flip_penalty)->check(CLI::PositiveNumber);
    label_cmd->add_option("--width", label.width, "rings of the strip inserted on invalid boundaries")->check(CLI::PositiveNumber);
    label_cmd->add_option("--radius", label.radius, "rings of the disk inserted on invalid corners")->check(CLI::PositiveNumber);

    LabelingInput validate;
    std::string validate_json;
    CLI::App* validate_cmd = app.add_subcommand("validate", "check a labeling; exit 1 when invalid");
    validate.add_to(validate_cmd);
    validate_cmd->add_option("--json", validate_json, "validity report JSON output");

    LabelingInput report;
    std::string report_out;
    CLI::App* report_cmd = app.add_subcommand("report", "metrics report of an existing labeling");
    report.add_to(report_cmd);
    report_cmd->add_option("-o,--output", report_out, "report JSON output")->required();

    LabelingInput graph;
    std::string graph_out;
    CLI::App* graph_cmd = app.add_subcommand("graph", "dump the labeling graph as JSON");
    graph.add_to(graph_cmd);
    graph_cmd->add_option("-o,--output", graph_out, "graph JSON output")->required();

    LabelingInput viz;
    std::string viz_out;
    CLI::App* viz_cmd = app.add_subcommand("viz", "export a PLY mesh colored by label");
    viz.add_to(viz_cmd);
    viz_cmd->add_option("-o,--output", viz_out, "PLY output")->required();

    LabelingInput fix;
    std::string fix_op, fix_out;
    index_t fix_target = 0;
    std::optional<index_t> fix_target2;
    int fix_width = 3, fix_radius = 3;
    CLI::App* fix_cmd = app.add_subcommand("fix", "apply one repair operator");
    fix.add_to(fix_cmd);
    fix_cmd->add_option("--op", fix_op, "operator name")
        ->required()
        ->check(CLI::IsMember({"fix_invalid_boundary", "fix_invalid_corner", "remove_chart", "increase_chart_valence",
                               "join_turning_points_pair", "pull_closest_corner", "move_boundary_near_turning_point",
                               "straighten_boundary"}));
    fix_cmd->add_option("--target", fix_target, "chart, boundary or corner id; vertex id for turning-point operators")->required();
    fix_cmd->add_option("--target2", fix_target2, "second turning-point vertex for join_turning_points_pair");
    fix_cmd->add_option("--width", fix_width)->check(CLI::PositiveNumber);
    fix_cmd->add_option("--radius", fix_radius)->check(CLI::PositiveNumber);
    fix_cmd->add_option("-o,--output", fix_out, "labeling output")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return EXIT_INPUT;
    }

    try {
        if (*label_cmd)
            return run_label(label);

        // the remaining subcommands all read a mesh and a labeling
        LabelingInput& in = *validate_cmd ? validate : *report_cmd ? report : *graph_cmd ? graph : *viz_cmd ? viz : fix;
        ValidityConfig validity = in.validity.config();
        SurfaceMesh mesh = in.input.load();
        Labeling labeling = read_labeling(in.labeling_path, mesh.nb_triangles());
        GraphOptions options;
        options.flip_penalty = in.flip_penalty;
        LabelingGraph lg(mesh, labeling, options);

        if (*validate_cmd) {
            ValidityReport vr = validate_labeling(mesh, lg, validity);
            if (!validate_json.empty())
                write_json(validate_json, validity_to_json(lg, vr));
            fmt::print(stderr, "{}: {} ({} invalid charts, {} invalid boundaries, {} invalid corners)\n", in.labeling_path,
                       vr.is_valid() ? "valid" : "invalid", vr.invalid_charts.size(), vr.invalid_boundaries.size(),
                       vr.invalid_corners.size());
            return vr.is_valid() ? 0 : EXIT_INVALID;
        }
        if (*report_cmd) {
            write_json(report_out, report_to_json(compute_report(mesh, labeling, lg, validity)));
            return 0;
        }
        if (*graph_cmd) {
            write_json(graph_out, graph_to_json(mesh, lg));
            return 0;
        }
        if (*viz_cmd) {
            export_colored_mesh(viz_out, mesh, labeling);
            return 0;
        }
        OperatorOutcome outcome = apply_operator(mesh, labeling, lg, fix_op, fix_target, fix_target2, fix_width, fix_radius, validity);
        write_labeling(fix_out, outcome.labeling);
        fmt::print(stderr, "{}: {} ({} triangles changed)\n", fix_op, outcome.applied ? "applied" : "not applied", outcome.changed.size());
        return 0;
    } catch (const std::exception& e) {
        fmt::print(stderr, "error: {}\n", e.what());
        return EXIT_INPUT;
    }
}

} // namespace polycube
