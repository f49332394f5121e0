#include "test_util.h"

#include "polycube/cli.h"
#include "polycube/io.h"
#include "polycube/pipeline.h"
#include "polycube/shapes.h"

#include <doctest.h>

#include <fmt/format.h>

#include <map>
#include <string>
#include <vector>

using namespace polycube;

namespace {

int run_cli(std::vector<std::string> args) {
    args.insert(args.begin(), "polycube");
    std::vector<const char*> argv;
    for (const auto& a : args)
        argv.push_back(a.c_str());
    return cli_main(static_cast<int>(argv.size()), argv.data());
}

std::string labeling_text(const std::vector<int>& labels) {
    std::string text;
    for (int l : labels)
        text += fmt::format("{}\n", l);
    return text;
}

} // namespace

TEST_CASE("labeling file round trip") {
    Labeling labeling;
    for (int i = 0; i < 30; ++i)
        labeling.push_back(label_from_int(i * 7 % 6));
    auto path = testutil::scratch_dir() / "round.flags";
    write_labeling(path, labeling);
    CHECK(read_labeling(path) == labeling);
    CHECK(read_labeling(path, labeling.size()) == labeling);
    CHECK(testutil::read_file(path).substr(0, 4) == "0\n1\n");
}

TEST_CASE("labeling file errors") {
    auto bad_value = testutil::write_file("bad_value.flags", "0\n1\n6\n");
    CHECK_THROWS_WITH_AS(read_labeling(bad_value), doctest::Contains("line 3"), FormatError);
    auto bad_token = testutil::write_file("bad_token.flags", "0\n1 2\n");
    CHECK_THROWS_WITH_AS(read_labeling(bad_token), doctest::Contains("line 2"), FormatError);
    auto words = testutil::write_file("words.flags", "zero\n");
    CHECK_THROWS_AS(read_labeling(words), FormatError);
    auto short_file = testutil::write_file("short.flags", labeling_text({0, 1, 2}));
    CHECK_THROWS_WITH_AS(read_labeling(short_file, 12), doctest::Contains("length mismatch"), FormatError);
    CHECK_THROWS_AS(read_labeling(testutil::scratch_dir() / "absent.flags"), FormatError);
    // blank lines are skipped
    auto blanks = testutil::write_file("blanks.flags", "0\n\n1\n");
    CHECK(read_labeling(blanks).size() == 2);
}

TEST_CASE("colored mesh export") {
    SurfaceMesh cube(shapes::unit_cube());
    Labeling naive = naive_labeling(cube);
    auto path = testutil::scratch_dir() / "cube.ply";
    export_colored_mesh(path, cube, naive);
    ColoredMesh colored = read_colored_ply(path);
    REQUIRE(colored.faces.size() == 12);
    REQUIRE(colored.vertices.size() == cube.nb_vertices());
    for (index_t v = 0; v < cube.nb_vertices(); ++v)
        CHECK(colored.vertices[v] == cube.point(v));
    for (index_t t = 0; t < 12; ++t) {
        CHECK(colored.faces[t] == cube.triangle(t));
        CHECK(colored.colors[t] == label_color(naive[t]));
    }
    std::map<Rgb, int> counts;
    for (const Rgb& c : colored.colors)
        counts[c]++;
    CHECK(counts.size() == 6);
    for (const auto& [color, count] : counts)
        CHECK(count == 2);

    Labeling constant(12, Label::PosY);
    export_colored_mesh(path, cube, constant);
    for (const Rgb& c : read_colored_ply(path).colors)
        CHECK(c == Rgb{240, 240, 240});

    // coordinates survive exactly
    SurfaceMesh sphere(shapes::icosphere(2));
    export_colored_mesh(path, sphere, naive_labeling(sphere));
    ColoredMesh sphere_back = read_colored_ply(path);
    for (index_t v = 0; v < sphere.nb_vertices(); ++v)
        CHECK(sphere_back.vertices[v] == sphere.point(v));
    CHECK_THROWS_AS(export_colored_mesh(path, cube, Labeling(3, Label::PosX)), std::exception);
}

TEST_CASE("graph and validity json") {
    SurfaceMesh cube(shapes::unit_cube());
    Labeling naive = naive_labeling(cube);
    LabelingGraph graph(cube, naive);
    nlohmann::json json = graph_to_json(cube, graph);
    CHECK(json["schema_version"] == 1);
    CHECK(json["charts"].size() == 6);
    CHECK(json["boundaries"].size() == 12);
    CHECK(json["corners"].size() == 8);
    CHECK(json["turning_points"] == 0);
    for (const auto& c : json["charts"])
        CHECK(c["valence"] == 4);
    for (const auto& c : json["corners"])
        CHECK(c["valence"] == 3);
    nlohmann::json validity = validity_to_json(graph, validate_labeling(cube, graph));
    CHECK(validity["is_valid"] == true);
    CHECK(validity["invalid_charts"].empty());
}

TEST_CASE("command line") {
    auto mesh = testutil::write_file("cube.obj", testutil::CUBE_OBJ);
    auto dir = testutil::scratch_dir();
    auto flags = dir / "cube_out.flags";
    auto report = dir / "cube_report.json";

    CHECK(run_cli({"label", mesh.string(), "-o", flags.string(), "--report", report.string()}) == 0);
    SurfaceMesh cube(shapes::unit_cube());
    CHECK(read_labeling(flags) == naive_labeling(load_mesh(mesh)));
    MetricsReport metrics = report_from_json(nlohmann::json::parse(testutil::read_file(report)));
    CHECK(metrics.status == LabelingStatus::ValidAllMonotone);

    CHECK(run_cli({"label", mesh.string()}) == 0);
    CHECK(std::filesystem::exists(dir / "cube.flags"));

    CHECK(run_cli({"validate", mesh.string(), flags.string()}) == 0);
    auto constant = testutil::write_file("constant.flags", labeling_text(std::vector<int>(12, 2)));
    auto validity = dir / "validity.json";
    CHECK(run_cli({"validate", mesh.string(), constant.string(), "--json", validity.string()}) == 1);
    nlohmann::json validity_json = nlohmann::json::parse(testutil::read_file(validity));
    CHECK(validity_json["is_valid"] == false);
    CHECK(validity_json["invalid_charts"].size() == 1);

    auto graph = dir / "graph.json";
    CHECK(run_cli({"graph", mesh.string(), flags.string(), "-o", graph.string()}) == 0);
    CHECK(nlohmann::json::parse(testutil::read_file(graph))["charts"].size() == 6);
    auto report2 = dir / "report2.json";
    CHECK(run_cli({"report", mesh.string(), flags.string(), "-o", report2.string()}) == 0);
    CHECK(report_from_json(nlohmann::json::parse(testutil::read_file(report2))).charts == 6);
    auto ply = dir / "viz.ply";
    CHECK(run_cli({"viz", mesh.string(), flags.string(), "-o", ply.string()}) == 0);
    CHECK(read_colored_ply(ply).faces.size() == 12);

    auto fixed = dir / "fixed.flags";
    CHECK(run_cli({"fix", mesh.string(), constant.string(), "--op", "remove_chart", "--target", "0", "-o", fixed.string()}) == 0);
    CHECK(read_labeling(fixed, 12) == read_labeling(constant));

    // errors
    CHECK(run_cli({"label", (dir / "missing.obj").string()}) == 2);
    CHECK(run_cli({"label", mesh.string(), "--bogus"}) == 2);
    CHECK(run_cli({}) == 2);
    auto bad = testutil::write_file("bad.flags", "0\n1\n6\n");
    CHECK(run_cli({"validate", mesh.string(), bad.string()}) == 2);
    auto eleven = testutil::write_file("eleven.flags", labeling_text(std::vector<int>(11, 0)));
    CHECK(run_cli({"validate", mesh.string(), eleven.string()}) == 2);
    CHECK(run_cli({"fix", mesh.string(), flags.string(), "--op", "no_such_op", "--target", "0", "-o", fixed.string()}) == 2);
}
