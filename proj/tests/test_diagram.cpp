#include <catch2/catch_amalgamated.hpp>

#include <fstream>
#include <sstream>

#include "spherecover/diagram.hpp"
#include "spherecover/errors.hpp"
#include "spherecover/textio.hpp"

using namespace spherecover;

static std::string data_path(const std::string& file) {
    return std::string(SC_DATA_DIR) + "/" + file;
}

static Diagram load(const std::string& file) { return parse_diagram(read_file(data_path(file))); }

// Single immersed curve of length two crossing itself once.
static Diagram figure_eight(int hand) {
    DiagramData dd;
    dd.name = "f8";
    dd.components = {"c1"};
    dd.curves.push_back({"A", "c1", 2});
    dd.crossings.push_back({"x", "A", "A", 0, 1, hand});
    return assemble_diagram(dd);
}

TEST_CASE("reference two-curve diagram validates with the expected counts") {
    Diagram d = load("banchoff.diagram");
    ValidationReport vr = validate_diagram(d);
    REQUIRE(vr.accepted);
    REQUIRE(vr.failures.empty());
    REQUIRE(vr.n_components == 1);
    REQUIRE(vr.n_curves == 2);
    REQUIRE(vr.n_crossings == 6);
    REQUIRE(vr.n_arcs == 12);
    REQUIRE(vr.n_faces == 8);
    REQUIRE(vr.n_triplets == 2);
    REQUIRE(vr.n_marked == 2);
    REQUIRE(vr.chi == std::vector<int>{2});
}

TEST_CASE("reference diagram triplet partner chains") {
    Diagram d = load("banchoff.diagram");
    auto tr = compute_triplets(d);
    REQUIRE(tr.has_value());
    REQUIRE(tr->size() == 2);
    auto ids = [&](const std::array<int, 3>& orb) {
        std::vector<std::string> out;
        for (int i : orb) out.push_back(d.crossings[i].id);
        return out;
    };
    REQUIRE(ids((*tr)[0]) == std::vector<std::string>{"x0.1", "x2.1", "x1.1"});
    REQUIRE(ids((*tr)[1]) == std::vector<std::string>{"x3.1", "x5.1", "x4.1"});
}

TEST_CASE("reference diagram face inventory") {
    Diagram d = load("banchoff.diagram");
    DiagramMap m = build_map(d);
    auto faces = trace_faces(d, m);
    REQUIRE(faces.size() == 8);
    std::multiset<std::size_t> lens;
    for (const auto& f : faces) lens.insert(f.size());
    REQUIRE(lens == std::multiset<std::size_t>{1, 1, 2, 2, 2, 4, 6, 6});
    // both marked anchors sit in monogons, and in different ones
    int ai = -1, bi = -1;
    for (const auto& mk : d.marked) {
        int dart = m.dart(mk.curve, mk.arc, mk.dir);
        for (std::size_t fi = 0; fi < faces.size(); ++fi)
            for (int x : faces[fi])
                if (x == dart) (mk.id == "A.c1" ? ai : bi) = static_cast<int>(fi);
    }
    REQUIRE(ai != -1);
    REQUIRE(bi != -1);
    REQUIRE(ai != bi);
    REQUIRE(faces[ai].size() == 1);
    REQUIRE(faces[bi].size() == 1);
}

TEST_CASE("figure-eight curve bounds three faces for either handedness") {
    for (int hand : {1, -1}) {
        Diagram d = figure_eight(hand);
        DiagramMap m = build_map(d);
        auto faces = trace_faces(d, m);
        REQUIRE(faces.size() == 3);  // V=1, E=2, so F=3 makes the sphere
    }
}

TEST_CASE("mirroring every crossing preserves the face count") {
    Diagram d = load("banchoff.diagram");
    auto before = trace_faces(d, build_map(d)).size();
    for (auto& x : d.crossings) x.hand = -x.hand;
    auto after = trace_faces(d, build_map(d)).size();
    REQUIRE(before == after);
    ValidationReport vr = validate_diagram(d);
    REQUIRE(vr.accepted);

    Diagram n2 = load("banchoff-n2.diagram");
    auto b2 = trace_faces(n2, build_map(n2)).size();
    for (auto& x : n2.crossings) x.hand = -x.hand;
    REQUIRE(trace_faces(n2, build_map(n2)).size() == b2);
}

TEST_CASE("serialization round trip is byte-stable") {
    for (const std::string& file : {std::string("banchoff.diagram"), std::string("banchoff-n2.diagram")}) {
        std::string text = read_file(data_path(file));
        Diagram d = parse_diagram(text);
        REQUIRE(serialize(d) == text);
        REQUIRE(serialize(parse_diagram(serialize(d))) == text);
    }
}

TEST_CASE("marked sides map L to forward and R to backward") {
    Diagram d = load("banchoff.diagram");
    REQUIRE(d.marked.size() == 2);
    for (const auto& mk : d.marked) {
        if (mk.id == "A.c1") {
            REQUIRE(d.curves[mk.curve].id == "alpha[c1.1]");
            REQUIRE(mk.arc == 5);
            REQUIRE(mk.dir == -1);  // serialized as R
        } else {
            REQUIRE(mk.id == "B.c1");
            REQUIRE(d.curves[mk.curve].id == "beta[c1.1]");
            REQUIRE(mk.arc == 1);
            REQUIRE(mk.dir == 1);  // serialized as L
        }
    }
    std::string text = serialize(d);
    REQUIRE(text.find("marked A.c1 c1 alpha[c1.1]:5:R") != std::string::npos);
    REQUIRE(text.find("marked B.c1 c1 beta[c1.1]:1:L") != std::string::npos);
}

TEST_CASE("assembly orders names naturally, not lexicographically") {
    DiagramData dd;
    dd.name = "nat";
    dd.components = {"c1"};
    dd.curves.push_back({"q10", "c1", 2});
    dd.curves.push_back({"q2", "c1", 2});
    dd.crossings.push_back({"x2", "q2", "q2", 0, 1, 1});
    dd.crossings.push_back({"x10", "q10", "q10", 0, 1, 1});
    Diagram d = assemble_diagram(dd);
    REQUIRE(d.curves[0].id == "q2");
    REQUIRE(d.curves[1].id == "q10");
    REQUIRE(d.crossings[0].id == "x2");
    REQUIRE(d.crossings[1].id == "x10");
}

static std::vector<std::string> failures_of(const DiagramData& dd) {
    return validate_diagram(assemble_diagram(dd)).failures;
}

TEST_CASE("validation rejects structural defects with the right codes") {
    // empty curve
    {
        DiagramData dd;
        dd.components = {"c1"};
        dd.curves.push_back({"A", "c1", 0});
        dd.curves.push_back({"B", "c1", 2});
        dd.crossings.push_back({"x", "B", "B", 0, 1, 1});
        dd.sisters.push_back({"A", "B"});
        auto f = failures_of(dd);
        REQUIRE(std::count(f.begin(), f.end(), "EmptyCurve") == 1);
    }
    // component without curves
    {
        DiagramData dd;
        dd.components = {"c1", "c2"};
        dd.curves.push_back({"A", "c1", 2});
        dd.curves.push_back({"B", "c1", 2});
        dd.crossings.push_back({"x", "A", "A", 0, 1, 1});
        dd.crossings.push_back({"y", "B", "B", 0, 1, 1});
        dd.sisters.push_back({"A", "B"});
        auto f = failures_of(dd);
        REQUIRE(std::count(f.begin(), f.end(), "EmptyComponent") == 1);
    }
    // two crossings claiming one passage
    {
        DiagramData dd;
        dd.components = {"c1"};
        dd.curves.push_back({"A", "c1", 2});
        dd.curves.push_back({"B", "c1", 2});
        dd.crossings.push_back({"x", "A", "A", 0, 1, 1});
        dd.crossings.push_back({"y", "A", "B", 0, 0, 1});
        dd.sisters.push_back({"A", "B"});
        auto f = failures_of(dd);
        REQUIRE(std::count(f.begin(), f.end(), "PassageConflict") == 1);
    }
    // passage never covered
    {
        DiagramData dd;
        dd.components = {"c1"};
        dd.curves.push_back({"A", "c1", 4});
        dd.curves.push_back({"B", "c1", 4});
        dd.crossings.push_back({"x", "A", "A", 0, 1, 1});
        dd.crossings.push_back({"y", "B", "B", 0, 1, 1});
        dd.crossings.push_back({"z", "B", "B", 2, 3, 1});
        dd.sisters.push_back({"A", "B"});
        auto f = failures_of(dd);
        REQUIRE(std::count(f.begin(), f.end(), "MissingPassage") == 1);
    }
    // crossing spanning two sphere components
    {
        DiagramData dd;
        dd.components = {"c1", "c2"};
        dd.curves.push_back({"A", "c1", 1});
        dd.curves.push_back({"B", "c2", 1});
        dd.crossings.push_back({"x", "A", "B", 0, 0, 1});
        dd.sisters.push_back({"A", "B"});
        auto f = failures_of(dd);
        REQUIRE(std::count(f.begin(), f.end(), "CrossingComponents") == 1);
    }
    // missing and self sister pairings
    {
        Diagram d = figure_eight(1);
        auto f = validate_diagram(d).failures;  // no sister assigned
        REQUIRE(std::count(f.begin(), f.end(), "SisterPairing") == 1);
        DiagramData dd;
        dd.components = {"c1"};
        dd.curves.push_back({"A", "c1", 2});
        dd.crossings.push_back({"x", "A", "A", 0, 1, 1});
        dd.sisters.push_back({"A", "A"});
        auto g = failures_of(dd);
        REQUIRE(std::count(g.begin(), g.end(), "SisterPairing") == 1);
    }
    // sisters of different lengths
    {
        DiagramData dd;
        dd.components = {"c1"};
        dd.curves.push_back({"A", "c1", 2});
        dd.curves.push_back({"B", "c1", 4});
        dd.crossings.push_back({"x", "A", "A", 0, 1, 1});
        dd.crossings.push_back({"y", "B", "B", 0, 1, 1});
        dd.crossings.push_back({"z", "B", "B", 2, 3, 1});
        dd.sisters.push_back({"A", "B"});
        auto f = failures_of(dd);
        REQUIRE(std::count(f.begin(), f.end(), "SisterLength") == 1);
    }
    // marked point claiming the wrong component
    {
        DiagramData dd;
        dd.components = {"c1", "c2"};
        dd.curves.push_back({"A", "c1", 2});
        dd.curves.push_back({"B", "c1", 2});
        dd.curves.push_back({"C", "c2", 2});
        dd.curves.push_back({"D", "c2", 2});
        dd.crossings.push_back({"x", "A", "A", 0, 1, 1});
        dd.crossings.push_back({"y", "B", "B", 0, 1, 1});
        dd.crossings.push_back({"z", "C", "C", 0, 1, 1});
        dd.crossings.push_back({"w", "D", "D", 0, 1, 1});
        dd.sisters.push_back({"A", "B"});
        dd.sisters.push_back({"C", "D"});
        dd.marked.push_back({"M", "c2", "A", 0, 1});
        auto f = failures_of(dd);
        REQUIRE(std::count(f.begin(), f.end(), "MarkedAnchor") == 1);
    }
}

TEST_CASE("validation rejects non-spherical embeddings") {
    DiagramData dd;
    dd.components = {"c1"};
    dd.curves.push_back({"A", "c1", 2});
    dd.curves.push_back({"B", "c1", 2});
    dd.crossings.push_back({"x", "A", "B", 0, 0, 1});
    dd.crossings.push_back({"y", "A", "B", 1, 1, 1});
    dd.sisters.push_back({"A", "B"});
    Diagram d = assemble_diagram(dd);
    ValidationReport vr = validate_diagram(d);
    REQUIRE(!vr.accepted);
    auto& f = vr.failures;
    REQUIRE(std::count(f.begin(), f.end(), "EmbeddingInconsistent") == 1);
    REQUIRE(vr.chi == std::vector<int>{0});
}

TEST_CASE("validation rejects marked points sharing a face") {
    std::string text = read_file(data_path("banchoff.diagram"));
    // move both anchors into the big hexagonal face
    auto pos = text.find("marked A.c1 c1 alpha[c1.1]:5:R");
    REQUIRE(pos != std::string::npos);
    text.replace(pos, std::string("marked A.c1 c1 alpha[c1.1]:5:R").size(),
                 "marked A.c1 c1 alpha[c1.1]:0:R");
    pos = text.find("marked B.c1 c1 beta[c1.1]:1:L");
    REQUIRE(pos != std::string::npos);
    text.replace(pos, std::string("marked B.c1 c1 beta[c1.1]:1:L").size(),
                 "marked B.c1 c1 alpha[c1.1]:5:L");
    Diagram d = parse_diagram(text);
    auto f = validate_diagram(d).failures;
    REQUIRE(f == std::vector<std::string>{"MarkedPointRule"});
}

TEST_CASE("parser rejects malformed diagram files") {
    REQUIRE_THROWS_AS(parse_diagram("diagram x\nformat 2\n"), Error);
    REQUIRE_THROWS_AS(parse_diagram("diagram x\nformat 1\ncurve A c1 2\n"), Error);
    REQUIRE_THROWS_AS(
        parse_diagram("diagram x\nformat 1\ncomponent c1\ncurve A c1 2\ncrossing y A:9 A:1 +\n"),
        Error);
    try {
        parse_diagram("diagram x\nformat 1\ncomponent c1\ncurve A c1 2\ncrossing y A:9 A:1 +\n");
        FAIL("expected OutOfRange");
    } catch (const Error& e) {
        REQUIRE(e.exit_code() == 2);
    }
}
