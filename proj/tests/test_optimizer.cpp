#include "fixtures.h"
#include "oracles.h"

#include "polycube/graphcut.h"
#include "polycube/labeling_graph.h"
#include "polycube/maxflow.h"
#include "polycube/shapes.h"

#include <doctest.h>

#include <Eigen/LU>

#include <cmath>

using namespace polycube;

namespace {

constexpr double INF = std::numeric_limits<double>::infinity();

SurfaceMesh rotated_prism(double jitter = 0.0) {
    TriangleSoup soup = shapes::rotated(shapes::box(vec3(1, 1, 2), 4), vec3::UnitZ(), std::numbers::pi / 4);
    if (jitter > 0.0)
        soup = shapes::jittered(soup, jitter, 3);
    return SurfaceMesh(soup);
}

std::size_t chart_count(const SurfaceMesh& mesh, const Labeling& labeling) {
    return LabelingGraph(mesh, labeling).charts().size();
}

} // namespace

TEST_CASE("min cut on small graphs") {
    CutProblem single{2, 0, 1, {{0, 1, 3.0}}};
    CHECK(min_cut(single).value == 3.0);

    // s=0 a=1 b=2 t=3
    CutProblem diamond{4, 0, 3, {{0, 1, 2}, {0, 2, 2}, {1, 3, 1}, {2, 3, 1}, {1, 2, 3}}};
    CutResult result = min_cut(diamond);
    CHECK(result.value == 2.0);
    CHECK(oracle::min_cut_value(diamond) == 2.0);
    CHECK(oracle::cut_value(diamond, result.source_side) == 2.0);

    CutProblem disconnected{4, 0, 3, {{0, 1, 5}, {2, 3, 5}}};
    CHECK(min_cut(disconnected).value == 0.0);

    CutProblem infinite{3, 0, 2, {{0, 1, INF}, {1, 2, INF}}};
    CHECK(std::isinf(min_cut(infinite).value));
    CutProblem bypass{3, 0, 2, {{0, 1, INF}, {1, 2, 4}, {0, 2, 1}}};
    CHECK(min_cut(bypass).value == 5.0);
}

TEST_CASE("min cut equals exhaustive enumeration") {
    std::mt19937_64 rng(2024);
    for (int i = 0; i < 100; ++i) {
        CutProblem problem = oracle::random_cut_problem(rng);
        CutResult result = min_cut(problem);
        CAPTURE(i);
        CHECK(result.value == doctest::Approx(oracle::min_cut_value(problem)));
        REQUIRE(result.source_side.size() == problem.nb_nodes);
        CHECK(result.source_side[problem.source]);
        CHECK_FALSE(result.source_side[problem.sink]);
        CHECK(oracle::cut_value(problem, result.source_side) == doctest::Approx(result.value));
    }
}

TEST_CASE("alpha expansion without smoothness picks the per-node minimum") {
    std::mt19937_64 rng(3);
    LabelingEnergy energy = oracle::random_energy(rng, 8);
    for (double& w : energy.weights)
        w = 0.0;
    ExpansionResult result = alpha_expansion(energy, Labeling(energy.nb_nodes(), Label::PosX));
    for (index_t i = 0; i < energy.nb_nodes(); ++i)
        CHECK(energy.unary[i][to_int(result.labeling[i])] == *std::min_element(energy.unary[i].begin(), energy.unary[i].end()));
}

TEST_CASE("alpha expansion on a six node strip equals brute force") {
    LabelingEnergy energy;
    // hand-built data costs, labels 0..5 across
    energy.unary = {{0, 4, 4, 4, 4, 4}, {3, 1, 4, 4, 4, 2}, {4, 4, 0, 4, 1, 4},
                    {4, 2, 1, 4, 0, 4}, {5, 4, 4, 0, 4, 4}, {4, 4, 3, 4, 4, 0}};
    for (index_t i = 0; i + 1 < 6; ++i) {
        energy.edges.emplace_back(i, i + 1);
        energy.weights.push_back(1.5);
    }
    auto [best, best_labeling] = oracle::min_energy(energy);
    ExpansionResult result = alpha_expansion(energy, Labeling(6, Label::PosX));
    CHECK(result.energy == doctest::Approx(best));
    CHECK(energy.evaluate(result.labeling) == doctest::Approx(result.energy));

    // started at the optimum, nothing moves
    ExpansionResult fixed = alpha_expansion(energy, best_labeling);
    CHECK(fixed.labeling == best_labeling);
    CHECK(fixed.energy == best);
}

TEST_CASE("alpha expansion descends and stays within the factor two bound") {
    std::mt19937_64 rng(99);
    int exact = 0;
    for (int i = 0; i < 60; ++i) {
        LabelingEnergy energy = oracle::random_energy(rng, 7);
        Labeling initial(energy.nb_nodes());
        for (Label& l : initial)
            l = static_cast<Label>(rng() % LABEL_COUNT);
        ExpansionResult result = alpha_expansion(energy, initial);
        double best = oracle::min_energy(energy).first;
        CHECK(result.energy >= best - 1e-9);
        CHECK(result.energy <= 2.0 * best + 1e-9);
        for (std::size_t k = 1; k < result.energy_trace.size(); ++k)
            CHECK(result.energy_trace[k] < result.energy_trace[k - 1]);
        exact += std::abs(result.energy - best) < 1e-9;
    }
    CHECK(exact >= 50);
}

TEST_CASE("alpha expansion respects masks") {
    LabelingEnergy energy;
    energy.unary = {{INF, 0, INF, INF, INF, INF}, {0, 5, 0, 0, 0, 0}};
    energy.edges = {{0, 1}};
    energy.weights = {10.0};
    ExpansionResult result = alpha_expansion(energy, {Label::PosX, Label::PosX});
    CHECK(result.labeling[0] == Label::NegX);
    CHECK(result.labeling[1] == Label::NegX);
    LabelingEnergy empty;
    empty.unary = {{INF, INF, INF, INF, INF, INF}};
    CHECK_THROWS_AS(alpha_expansion(empty, {Label::PosX}), std::invalid_argument);
}

TEST_CASE("labeling problem costs") {
    SurfaceMesh cube(shapes::box(vec3::Ones(), 2));
    GraphCutParams params;
    LabelingEnergy energy = build_labeling_problem(cube, params, {});
    Labeling naive = naive_labeling(cube);
    for (index_t t = 0; t < cube.nb_triangles(); ++t) {
        CHECK(energy.unary[t][to_int(naive[t])] == 0.0);
        CHECK(energy.unary[t][to_int(opposite(naive[t]))] == doctest::Approx(params.fidelity * std::numbers::pi));
    }
    for (double w : energy.weights)
        CHECK(w == params.compactness);

    GraphCutParams angle = params;
    angle.smoothness = SmoothnessMode::AngleProportional;
    GraphCutParams crease = params;
    crease.smoothness = SmoothnessMode::CreaseDiscount;
    for (index_t e = 0; e < cube.nb_edges(); ++e) {
        bool flat = cube.dihedral(e) == doctest::Approx(std::numbers::pi);
        CHECK(smoothness_weight(cube, e, angle) == doctest::Approx(flat ? 0.0 : std::numbers::pi / 2));
        CHECK(smoothness_weight(cube, e, crease) == doctest::Approx(flat ? 1.0 : std::exp(-std::pow(std::numbers::pi / 2 / 0.25, 2))));
    }
    CHECK(smoothness_mode_from_name("crease-discount") == SmoothnessMode::CreaseDiscount);
    CHECK(smoothness_mode_name(SmoothnessMode::AngleProportional) == "angle-proportional");
}

TEST_CASE("parameter checks") {
    GraphCutParams params;
    CHECK_NOTHROW(params.check());
    for (double tilt : {0.0, -0.1, std::numbers::pi / 8, 1.0}) {
        GraphCutParams bad = params;
        bad.tilt_angle = tilt;
        CHECK_THROWS(bad.check());
    }
    GraphCutParams negative = params;
    negative.fidelity = -1.0;
    CHECK_THROWS(negative.check());
    GraphCutParams negative_compactness = params;
    negative_compactness.compactness = -0.5;
    CHECK_THROWS(negative_compactness.check());
    // zero sensitivity disables the tilt
    GraphCutParams no_sensitivity = params;
    no_sensitivity.sensitivity = 0.0;
    CHECK_NOTHROW(no_sensitivity.check());
}

TEST_CASE("tilting separates tied labels") {
    vec3 n = vec3(1, 1, 0).normalized();
    vec3 tilted = tilt_rotation(0.05) * n;
    double cost_x = std::acos(std::clamp(tilted.dot(direction(Label::PosX)), -1.0, 1.0));
    double cost_y = std::acos(std::clamp(tilted.dot(direction(Label::PosY)), -1.0, 1.0));
    CHECK(std::abs(cost_x - cost_y) > 1e-10);
    CHECK(tilt_rotation(0.05).determinant() == doctest::Approx(1.0));
}

TEST_CASE("tilt candidates") {
    SurfaceMesh cube(shapes::unit_cube());
    auto none = detect_tilt_candidates(cube, 1e-10);
    CHECK(std::count(none.begin(), none.end(), true) == 0);
    auto all = detect_tilt_candidates(cube, 2.0);
    CHECK(std::count(all.begin(), all.end(), true) == 12);

    SurfaceMesh prism = rotated_prism();
    auto flagged = detect_tilt_candidates(prism, 1e-3);
    for (index_t t = 0; t < prism.nb_triangles(); ++t) {
        bool side = std::abs(prism.normal(t).z()) < 0.5;
        CHECK(flagged[t] == side);
    }
}

TEST_CASE("tweaked graph cut labeling") {
    SurfaceMesh cube(shapes::box(vec3::Ones(), 3));
    CHECK(tweaked_graphcut_labeling(cube) == naive_labeling(cube));

    // fragmentation: the jittered prism has 6 geometric faces
    SurfaceMesh prism = rotated_prism(1e-6);
    Labeling tweaked = tweaked_graphcut_labeling(prism);
    CHECK(chart_count(prism, tweaked) <= 6);
    CHECK(chart_count(prism, naive_labeling(prism)) > 6);
    CHECK(tweaked_graphcut_labeling(prism) == tweaked);
}

TEST_CASE("restricted relabeling") {
    SurfaceMesh cube(shapes::box(vec3::Ones(), 2));
    Labeling naive = naive_labeling(cube);
    CHECK(restricted_relabel(cube, naive, {0}, {mask_of(naive[0])}) == naive);

    // one allowed label everywhere gives a constant labeling
    std::vector<index_t> all(cube.nb_triangles());
    std::iota(all.begin(), all.end(), 0);
    Labeling constant = restricted_relabel(cube, naive, all, std::vector<LabelMask>(all.size(), mask_of(Label::NegY)));
    CHECK(std::all_of(constant.begin(), constant.end(), [](Label l) { return l == Label::NegY; }));

    // a two-triangle chart inside +Y can only become +Y
    fixture::LabeledMesh sliver = fixture::sliver_box();
    std::vector<index_t> chart;
    for (index_t t = 0; t < sliver.mesh.nb_triangles(); ++t)
        if (sliver.labeling[t] == Label::PosX && sliver.mesh.normal(t).y() > 0.5)
            chart.push_back(t);
    REQUIRE(chart.size() == 2);
    Labeling absorbed = restricted_relabel(sliver.mesh, sliver.labeling, chart, {mask_of(Label::PosY), mask_of(Label::PosY)});
    CHECK(absorbed == naive_labeling(sliver.mesh));

    CHECK_THROWS_AS(restricted_relabel(cube, naive, {0}, {0}), std::invalid_argument);
}

TEST_CASE("restricted relabeling equals brute force on small subsets") {
    SurfaceMesh mesh(shapes::icosphere(1));
    Labeling base = naive_labeling(mesh);
    GraphCutParams params;
    LabelingEnergy full = build_labeling_problem(mesh, params, {});
    std::mt19937_64 rng(17);
    for (int trial = 0; trial < 20; ++trial) {
        // a connected patch of up to 6 triangles with random masks of 2 or 3 labels
        std::vector<index_t> patch = {static_cast<index_t>(rng() % mesh.nb_triangles())};
        while (patch.size() < 6) {
            index_t next = mesh.neighbor(patch[rng() % patch.size()], static_cast<int>(rng() % 3));
            if (std::find(patch.begin(), patch.end(), next) == patch.end())
                patch.push_back(next);
        }
        std::vector<LabelMask> masks;
        for (std::size_t i = 0; i < patch.size(); ++i)
            masks.push_back(static_cast<LabelMask>((rng() % 62) + 1));
        Labeling result = restricted_relabel(mesh, base, patch, masks, params);

        // brute force over the masked products, everything else fixed
        double best = INF;
        Labeling current = base;
        std::function<void(std::size_t)> recurse = [&](std::size_t i) {
            if (i == patch.size()) {
                best = std::min(best, full.evaluate(current));
                return;
            }
            for (int l = 0; l < LABEL_COUNT; ++l)
                if (masks[i] & (1u << l)) {
                    current[patch[i]] = static_cast<Label>(l);
                    recurse(i + 1);
                }
        };
        recurse(0);
        double got = full.evaluate(result);
        CAPTURE(trial);
        CHECK(got == doctest::Approx(best));
        for (std::size_t i = 0; i < patch.size(); ++i)
            CHECK((masks[i] & mask_of(result[patch[i]])) != 0);
        for (index_t t = 0; t < mesh.nb_triangles(); ++t)
            if (std::find(patch.begin(), patch.end(), t) == patch.end())
                CHECK(result[t] == base[t]);
    }
}
