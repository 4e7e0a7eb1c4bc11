#include "doctest.h"
#include "vkh/diagram.hpp"
#include "vkh/fixtures.hpp"
#include "vkh/json_io.hpp"

using namespace vkh;

TEST_CASE("unknot U0 parses and has two faces") {
    Diagram d = parse_diagram(R"({"name":"u0","free_loops":1,"crossings":[],
        "edges":[],"outer_face_dart":-1,"crossing_order":[]})");
    CHECK(d.num_classical() == 0);
    CHECK(d.free_loops == 1);
    CHECK(d.total_faces() == 2);
    auto [np, nm] = d.crossing_counts();
    CHECK(np == 0);
    CHECK(nm == 0);
}

TEST_CASE("kink U1 has three faces") {
    Diagram d = fx_u1_plus();
    CHECK(d.num_crossings() == 1);
    CHECK(d.num_edges() == 2);
    CHECK(d.total_faces() == 3);
    auto [np, nm] = d.crossing_counts();
    CHECK(np == 1);
    CHECK(nm == 0);
    auto [np2, nm2] = fx_u1_minus().crossing_counts();
    CHECK(np2 == 0);
    CHECK(nm2 == 1);
}

TEST_CASE("trefoil fixture: 3 crossings, 5 faces, all positive") {
    Diagram d = fx_trefoil_right();
    CHECK(d.num_crossings() == 3);
    CHECK(d.num_edges() == 6);
    CHECK(d.total_faces() == 5);
    auto [np, nm] = d.crossing_counts();
    CHECK(np == 3);
    CHECK(nm == 0);
    auto [lp, lm] = fx_trefoil_left().crossing_counts();
    CHECK(lp == 0);
    CHECK(lm == 3);
}

TEST_CASE("crossing counts survive reversing all components") {
    for (auto& d : {fx_trefoil_right(), fx_hopf_plus(), fx_figure8(),
                    fx_virtual_trefoil()}) {
        auto a = d.crossing_counts();
        auto b = d.reversed().crossing_counts();
        CHECK(a == b);
    }
}

TEST_CASE("checkerboard coloring: outer white, adjacent faces differ") {
    for (auto& d : fixture_corpus()) {
        if (d.num_crossings() == 0) continue;
        FaceColoring col = d.checkerboard();
        CHECK(col.color[d.outer_face()] == FaceColor::White);
        for (int e = 0; e < d.num_edges(); ++e) {
            int t = d.dart_index(d.edges[e].tail);
            int h = d.dart_index(d.edges[e].head);
            CHECK(col.color[d.face_of(t)] != col.color[d.face_of(h)]);
        }
        // corners alternate around every crossing
        for (int c = 0; c < d.num_crossings(); ++c)
            for (int k = 0; k < 4; ++k)
                CHECK(d.corner_color(col, c, k) != d.corner_color(col, c, (k + 1) & 3));
    }
}

TEST_CASE("validation rejects a dart used twice") {
    CHECK_THROWS_AS(parse_diagram(R"({"name":"bad","free_loops":0,
        "crossings":[{"id":0,"kind":"classical","darts":[0,1,2,2]}],
        "edges":[{"tail":0,"head":1},{"tail":2,"head":3}],
        "outer_face_dart":0,"crossing_order":[0]})"),
                    ValidationError);
}

TEST_CASE("validation rejects inconsistent strand directions") {
    // both over darts incoming
    CHECK_THROWS_AS(parse_diagram(R"({"name":"bad2","free_loops":0,
        "crossings":[{"id":0,"kind":"classical","darts":[0,1,2,3]}],
        "edges":[{"tail":1,"head":0},{"tail":3,"head":2}],
        "outer_face_dart":0,"crossing_order":[0]})"),
                    ValidationError);
}

TEST_CASE("json round trip") {
    for (auto& d : fixture_corpus()) {
        Diagram d2 = parse_diagram(diagram_to_json(d));
        CHECK(d2.canonical_form() == d.canonical_form());
    }
}

TEST_CASE("virtual ring fixtures are valid two-component diagrams") {
    Diagram d = fx_ring_unknot();
    CHECK(d.num_crossings() == 2);
    CHECK(d.num_classical() == 1);
    Diagram t = fx_ring_trefoil();
    CHECK(t.num_classical() == 4);
    CHECK(t.num_crossings() == 5);
}
