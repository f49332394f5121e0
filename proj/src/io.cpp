#include "polycube/io.h"

#include <fmt/core.h>

#include <fstream>
#include <sstream>

namespace polycube {

Labeling read_labeling(const std::filesystem::path& path, std::optional<std::size_t> expected_size) {
    std::ifstream in(path);
    if (!in)
        throw FormatError(fmt::format("cannot open labeling {}", path.string()));
    Labeling labeling;
    std::string line;
    std::size_t line_number = 0;
    while (std::getline(in, line)) {
        ++line_number;
        std::istringstream ls(line);
        std::string token, extra;
        if (!(ls >> token))
            continue;
        std::size_t used = 0;
        int value = -1;
        try {
            value = std::stoi(token, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used != token.size() || (ls >> extra))
            throw FormatError(fmt::format("{}: line {}: expected a single label", path.string(), line_number));
        if (value < 0 || value >= LABEL_COUNT)
            throw FormatError(fmt::format("{}: line {}: label {} outside 0..5", path.string(), line_number, value));
        labeling.push_back(static_cast<Label>(value));
    }
    if (expected_size && labeling.size() != *expected_size)
        throw FormatError(fmt::format("{}: {} labels for {} triangles (length mismatch)", path.string(), labeling.size(), *expected_size));
    return labeling;
}

void write_text(const std::filesystem::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw FormatError(fmt::format("cannot write {}", path.string()));
    out << text;
    if (!out)
        throw FormatError(fmt::format("failed writing {}", path.string()));
}

void write_labeling(const std::filesystem::path& path, const Labeling& labeling) {
    std::string text;
    for (Label l : labeling)
        text += fmt::format("{}\n", to_int(l));
    write_text(path, text);
}

Rgb label_color(Label l) {
    static constexpr Rgb colors[] = {{230, 25, 25}, {115, 12, 12}, {240, 240, 240}, {120, 120, 120}, {25, 25, 230}, {12, 12, 115}};
    return colors[to_int(l)];
}

void export_colored_mesh(const std::filesystem::path& path, const SurfaceMesh& mesh, const Labeling& labeling) {
    check_labeling_size(mesh, labeling);
    TriangleSoup soup = mesh.soup();
    std::string text = fmt::format("ply\nformat ascii 1.0\nelement vertex {}\nproperty double x\nproperty double y\nproperty double z\n"
                                   "element face {}\nproperty list uchar int vertex_indices\nproperty uchar red\nproperty uchar green\n"
                                   "property uchar blue\nend_header\n",
                                   soup.vertices.size(), soup.triangles.size());
    // shortest round-trip representation keeps coordinates bit-identical
    for (const vec3& p : soup.vertices)
        text += fmt::format("{} {} {}\n", p.x(), p.y(), p.z());
    for (index_t t = 0; t < soup.triangles.size(); ++t) {
        Rgb c = label_color(labeling[t]);
        const auto& tri = soup.triangles[t];
        text += fmt::format("3 {} {} {} {} {} {}\n", tri[0], tri[1], tri[2], c[0], c[1], c[2]);
    }
    write_text(path, text);
}

ColoredMesh read_colored_ply(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in)
        throw FormatError(fmt::format("cannot open {}", path.string()));
    std::string line;
    std::size_t nv = 0, nf = 0;
    if (!std::getline(in, line) || line != "ply")
        throw FormatError(fmt::format("{}: not a PLY file", path.string()));
    while (std::getline(in, line) && line != "end_header") {
        std::istringstream ls(line);
        std::string word, kind;
        ls >> word;
        if (word == "format" && (ls >> kind, kind != "ascii"))
            throw FormatError(fmt::format("{}: only ASCII PLY is supported", path.string()));
        if (word == "element") {
            std::size_t count = 0;
            ls >> kind >> count;
            (kind == "vertex" ? nv : nf) = count;
        }
    }
    ColoredMesh result;
    for (std::size_t i = 0; i < nv; ++i) {
        vec3 p;
        if (!(in >> p.x() >> p.y() >> p.z()))
            throw FormatError(fmt::format("{}: truncated vertex list", path.string()));
        result.vertices.push_back(p);
    }
    for (std::size_t i = 0; i < nf; ++i) {
        int n = 0, r = 0, g = 0, b = 0;
        std::array<index_t, 3> f{};
        if (!(in >> n) || n != 3 || !(in >> f[0] >> f[1] >> f[2] >> r >> g >> b))
            throw FormatError(fmt::format("{}: malformed face {}", path.string(), i));
        result.faces.push_back(f);
        result.colors.push_back({static_cast<std::uint8_t>(r), static_cast<std::uint8_t>(g), static_cast<std::uint8_t>(b)});
    }
    return result;
}

void write_obj(const std::filesystem::path& path, const TriangleSoup& soup) {
    std::string text;
    for (const vec3& p : soup.vertices)
        text += fmt::format("v {} {} {}\n", p.x(), p.y(), p.z());
    for (const auto& t : soup.triangles)
        text += fmt::format("f {} {} {}\n", t[0] + 1, t[1] + 1, t[2] + 1);
    write_text(path, text);
}

nlohmann::json graph_to_json(const SurfaceMesh& mesh, const LabelingGraph& graph) {
    nlohmann::json charts = nlohmann::json::array();
    for (index_t c = 0; c < graph.charts().size(); ++c) {
        const Chart& chart = graph.chart(c);
        charts.push_back({{"id", c}, {"label", label_name(chart.label)}, {"size", chart.triangles.size()}, {"valence", chart.valence()},
                          {"neighbors", chart.neighbors}, {"surrounded_by_feature_edges", chart.surrounded_by_feature_edges}});
    }
    nlohmann::json boundaries = nlohmann::json::array();
    for (index_t b = 0; b < graph.boundaries().size(); ++b) {
        const Boundary& boundary = graph.boundary(b);
        nlohmann::json entry = {{"id", b},
                                {"axis", boundary.axis ? nlohmann::json(axis_name(*boundary.axis)) : nlohmann::json(nullptr)},
                                {"length", boundary.length()},
                                {"charts", {boundary.left_chart, boundary.right_chart}},
                                {"on_feature_edges", boundary.on_feature_edges},
                                {"turning_points", boundary.turning_points.size()}};
        entry["corners"] = boundary.is_closed() ? nlohmann::json::array() : nlohmann::json({boundary.start_corner, boundary.end_corner});
        nlohmann::json tps = nlohmann::json::array();
        for (const TurningPoint& tp : boundary.turning_points)
            tps.push_back(tp.vertex);
        entry["turning_point_vertices"] = tps;
        boundaries.push_back(entry);
    }
    nlohmann::json corners = nlohmann::json::array();
    for (index_t c = 0; c < graph.corners().size(); ++c) {
        const Corner& corner = graph.corner(c);
        nlohmann::json axes = nlohmann::json::array();
        nlohmann::json ids = nlohmann::json::array();
        for (const auto& incidence : corner.incidences) {
            const auto& axis = graph.boundary(incidence.boundary).axis;
            axes.push_back(axis ? nlohmann::json(axis_name(*axis)) : nlohmann::json(nullptr));
            ids.push_back(incidence.boundary);
        }
        corners.push_back({{"id", c}, {"vertex", corner.vertex}, {"valence", corner.valence()}, {"boundaries", ids}, {"axes", axes}});
    }
    return {{"schema_version", 1},
            {"triangles", mesh.nb_triangles()},
            {"charts", charts},
            {"boundaries", boundaries},
            {"corners", corners},
            {"turning_points", graph.turning_point_count()}};
}

nlohmann::json validity_to_json(const LabelingGraph& graph, const ValidityReport& report) {
    return {{"schema_version", 1},
            {"is_valid", report.is_valid()},
            {"invalid_charts", report.invalid_charts},
            {"invalid_boundaries", report.invalid_boundaries},
            {"invalid_corners", report.invalid_corners},
            {"charts", graph.charts().size()},
            {"boundaries", graph.boundaries().size()},
            {"corners", graph.corners().size()},
            {"turning_points", graph.turning_point_count()}};
}

} // namespace polycube
