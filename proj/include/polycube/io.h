#pragma once

#include "polycube/labeling_graph.h"
#include "polycube/validity.h"

#include <json.hpp>

#include <array>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <vector>

namespace polycube {

class FormatError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// one integer 0..5 per line; when expected_size is given the line count must match
Labeling read_labeling(const std::filesystem::path& path, std::optional<std::size_t> expected_size = std::nullopt);
void write_labeling(const std::filesystem::path& path, const Labeling& labeling);

using Rgb = std::array<std::uint8_t, 3>;
Rgb label_color(Label l);

// ASCII PLY, per-face RGB
void export_colored_mesh(const std::filesystem::path& path, const SurfaceMesh& mesh, const Labeling& labeling);

struct ColoredMesh {
    std::vector<vec3> vertices;
    std::vector<std::array<index_t, 3>> faces;
    std::vector<Rgb> colors;
};
ColoredMesh read_colored_ply(const std::filesystem::path& path);

void write_obj(const std::filesystem::path& path, const TriangleSoup& soup);

nlohmann::json graph_to_json(const SurfaceMesh& mesh, const LabelingGraph& graph);
nlohmann::json validity_to_json(const LabelingGraph& graph, const ValidityReport& report);

// writes the text to path, throwing FormatError when it cannot
void write_text(const std::filesystem::path& path, const std::string& text);

} // namespace polycube
