#include "fixtures.h"

#include "polycube/shapes.h"
#include "polycube/validity.h"

#include <doctest.h>

#include <Eigen/LU>

#include <algorithm>
#include <random>

using namespace polycube;

namespace {

using Axes = std::vector<std::optional<Axis>>;

Axes axes_of(const std::string& letters) {
    Axes axes;
    for (char c : letters)
        axes.push_back(static_cast<Axis>(c - 'X'));
    return axes;
}

bool improved(const std::string& letters) {
    return corner_axes_valid(axes_of(letters), CornerRule::Improved);
}

bool legacy(const std::string& letters) {
    return corner_axes_valid(axes_of(letters), CornerRule::Legacy);
}

// the 24 rotations of the cube as signed permutation matrices of determinant +1
std::vector<Eigen::Matrix3d> cube_rotations() {
    std::vector<Eigen::Matrix3d> result;
    std::array<int, 3> perm = {0, 1, 2};
    do {
        for (int signs = 0; signs < 8; ++signs) {
            Eigen::Matrix3d m = Eigen::Matrix3d::Zero();
            for (int r = 0; r < 3; ++r)
                m(r, perm[r]) = (signs >> r) & 1 ? -1.0 : 1.0;
            if (m.determinant() > 0)
                result.push_back(m);
        }
    } while (std::next_permutation(perm.begin(), perm.end()));
    return result;
}

Label rotate_label(const Eigen::Matrix3d& rotation, Label l) {
    return nearest_label(rotation * direction(l));
}

} // namespace

TEST_CASE("chart validity") {
    fixture::LabeledMesh cube = fixture::naive_box(2);
    LabelingGraph graph(cube.mesh, cube.labeling);
    for (index_t c = 0; c < graph.charts().size(); ++c)
        CHECK(chart_valid(graph, c));

    // a pill: sphere in two halves, each cap has a single neighbor; three bands give a valence-2 middle chart
    SurfaceMesh sphere(shapes::icosphere(2));
    Labeling bands(sphere.nb_triangles());
    for (index_t t = 0; t < sphere.nb_triangles(); ++t) {
        double z = sphere.centroid(t).z();
        bands[t] = z > 0.3 ? Label::PosZ : z < -0.3 ? Label::NegZ : Label::PosX;
    }
    LabelingGraph pill(sphere, bands);
    REQUIRE(pill.charts().size() == 3);
    for (index_t c = 0; c < pill.charts().size(); ++c)
        CHECK_FALSE(chart_valid(pill, c));

    LabelingGraph constant(sphere, Labeling(sphere.nb_triangles(), Label::PosX));
    CHECK_FALSE(chart_valid(constant, 0));
    ValidityReport report = validate_labeling(sphere, constant);
    CHECK(report.invalid_charts.size() == 1);
    CHECK_FALSE(report.is_valid());
}

TEST_CASE("corner conformance table") {
    // incident boundary axes, improved rule, legacy rule
    struct Row {
        std::string axes;
        bool improved;
        bool legacy;
    };
    const Row table[] = {
        {"XYZ", true, true},        // trio
        {"ZZZZ", false, false},     // cone apex
        {"XXZZ", true, false},      // elongation pairs
        {"XXYYZZ", true, false},    // six boundaries grouped in pairs
        {"ZZZZXY", false, false},   // six boundaries that cannot be paired
        {"XXY", false, false},      // valence three without a trio
        {"XXXX", false, false},     // single axis
        {"XYZZZ", false, false},    // trio plus an unpaired extra
    };
    for (const Row& row : table) {
        CAPTURE(row.axes);
        CHECK(improved(row.axes) == row.improved);
        CHECK(legacy(row.axes) == row.legacy);
    }
    CHECK_FALSE(corner_axes_valid({Axis::X, std::nullopt, Axis::Z}, CornerRule::Improved));
    CHECK(corner_rule_from_name("legacy") == CornerRule::Legacy);
    CHECK_THROWS(corner_rule_from_name("strict"));
}

TEST_CASE("corner rules: permutation invariance, axis relabeling and legacy inclusion") {
    std::mt19937_64 rng(4);
    for (std::size_t valence = 3; valence <= 7; ++valence) {
        // every axis multiset of this valence, enumerated as base-3 words
        std::size_t words = 1;
        for (std::size_t i = 0; i < valence; ++i)
            words *= 3;
        for (std::size_t w = 0; w < words; ++w) {
            Axes axes;
            for (std::size_t i = 0, x = w; i < valence; ++i, x /= 3)
                axes.push_back(static_cast<Axis>(x % 3));
            bool reference = corner_axes_valid(axes, CornerRule::Improved);
            if (corner_axes_valid(axes, CornerRule::Legacy))
                CHECK(reference);
            Axes shuffled = axes;
            std::shuffle(shuffled.begin(), shuffled.end(), rng);
            CHECK(corner_axes_valid(shuffled, CornerRule::Improved) == reference);
            std::array<int, 3> perm = {0, 1, 2};
            do {
                Axes mapped;
                for (auto a : axes)
                    mapped.push_back(static_cast<Axis>(perm[to_int(*a)]));
                CHECK(corner_axes_valid(mapped, CornerRule::Improved) == reference);
                CHECK(corner_axes_valid(mapped, CornerRule::Legacy) == corner_axes_valid(axes, CornerRule::Legacy));
            } while (std::next_permutation(perm.begin(), perm.end()));
        }
    }
}

TEST_CASE("opposite labels across a convex crease are invalid") {
    fixture::LabeledMesh m = fixture::opposite_convex_box(4);
    LabelingGraph graph(m.mesh, m.labeling);
    ValidityConfig on, off;
    off.allow_opposite_labels = false;
    std::size_t same_axis = 0;
    for (index_t b = 0; b < graph.boundaries().size(); ++b) {
        if (graph.boundary(b).axis)
            continue;
        ++same_axis;
        CHECK_FALSE(boundary_valid(m.mesh, graph, b, on));
        CHECK_FALSE(boundary_valid(m.mesh, graph, b, off));
    }
    CHECK(same_axis == 1);
    CHECK(validate_labeling(m.mesh, graph).invalid_boundaries.size() == 1);
}

TEST_CASE("opposite labels across a reflex crease depend on the option") {
    auto [m, edge] = fixture::reflex_opposite_l_prism(2);
    LabelingGraph graph(m.mesh, m.labeling);
    index_t b = graph.boundary_of_edge(edge);
    REQUIRE(b != NO_INDEX);
    CHECK_FALSE(graph.boundary(b).axis.has_value());
    for (index_t h : graph.boundary(b).halfedges)
        CHECK(m.mesh.dihedral(m.mesh.edge(h)) > std::numbers::pi);
    ValidityConfig on, off;
    off.allow_opposite_labels = false;
    CHECK(boundary_valid(m.mesh, graph, b, on));
    CHECK_FALSE(boundary_valid(m.mesh, graph, b, off));
    ValidityConfig zero = on;
    zero.reflex_fraction = 0.0;
    CHECK(boundary_valid(m.mesh, graph, b, zero));
    ValidityConfig bad = on;
    bad.reflex_fraction = 1.5;
    CHECK_THROWS(bad.check());
}

TEST_CASE("orthogonal boundaries are valid") {
    fixture::LabeledMesh cube = fixture::naive_box(2);
    LabelingGraph graph(cube.mesh, cube.labeling);
    for (index_t b = 0; b < graph.boundaries().size(); ++b)
        CHECK(boundary_valid(cube.mesh, graph, b));
    ValidityReport report = validate_labeling(cube.mesh, graph);
    CHECK(report.is_valid());
    CHECK(report.invalid_charts.empty());
    CHECK(report.invalid_boundaries.empty());
    CHECK(report.invalid_corners.empty());
}

TEST_CASE("cone apex with four Z boundaries") {
    SurfaceMesh cone(shapes::cone(1.0, 3.0, 16, 6));
    LabelingGraph graph(cone, naive_labeling(cone));
    index_t apex = graph.corner_of_vertex(0);
    REQUIRE(apex != NO_INDEX);
    CHECK(graph.corner(apex).valence() == 4);
    for (const auto& incidence : graph.corner(apex).incidences)
        CHECK(graph.boundary(incidence.boundary).axis == Axis::Z);
    for (CornerRule rule : {CornerRule::Legacy, CornerRule::Improved}) {
        ValidityReport report = validate_labeling(cone, graph, {true, 1.0, rule});
        CHECK(report.invalid_corners == std::vector<index_t>{apex});
    }
}

TEST_CASE("the naive cube stays valid under the 24 rotations") {
    fixture::LabeledMesh cube = fixture::naive_box(2);
    auto rotations = cube_rotations();
    REQUIRE(rotations.size() == 24);
    for (const auto& rotation : rotations) {
        Labeling rotated = cube.labeling;
        for (Label& l : rotated)
            l = rotate_label(rotation, l);
        LabelingGraph graph(cube.mesh, rotated);
        CHECK(validate_labeling(cube.mesh, graph).is_valid());
        CHECK(graph.charts().size() == 6);
    }
}

TEST_CASE("validity is invariant under global axis relabeling") {
    fixture::LabeledMesh m = fixture::opposite_convex_box(3);
    LabelingGraph reference_graph(m.mesh, m.labeling);
    ValidityReport reference = validate_labeling(m.mesh, reference_graph);
    for (const auto& rotation : cube_rotations()) {
        Labeling mapped = m.labeling;
        for (Label& l : mapped)
            l = rotate_label(rotation, l);
        LabelingGraph graph(m.mesh, mapped);
        ValidityReport report = validate_labeling(m.mesh, graph);
        CHECK(report.invalid_charts == reference.invalid_charts);
        CHECK(report.invalid_boundaries == reference.invalid_boundaries);
        CHECK(report.invalid_corners == reference.invalid_corners);
    }
}

TEST_CASE("state tuple") {
    fixture::LabeledMesh m = fixture::hooked_box();
    LabelingGraph graph(m.mesh, m.labeling);
    ValidityReport report = validate_labeling(m.mesh, graph);
    StateTuple tuple = state_tuple(graph, report);
    CHECK(tuple == StateTuple{6, 12, 8, 0, 0, 0, 2});
}
