#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <cmath>
#include <random>
#include <set>
#include <string>

#include "helpers.hpp"
#include "pdiv/persistence.hpp"

using namespace pdiv;
using testutil::kInf;

namespace {

const char* kTriangleText =
    "0;0\n1;0\n2;0\n"
    "0 1;1\n0 2;1\n1 2;1\n"
    "0 1 2;2\n";

// Checks the reduction against the rank oracle: at every filtration value t
// (and at the end), the number of bars alive in dimension k must equal
// betti_k of the subcomplex at t.
void check_against_rank_oracle(const Filtration& F) {
    const int max_dim = std::max(0, F.max_dimension());
    const auto diagrams = compute_persistence(F, max_dim);
    std::set<double> thresholds;
    for (const auto& s : F.simplices()) thresholds.insert(s.filtration_value);
    for (double t : thresholds) {
        const auto betti = testutil::betti_numbers(F, t);
        for (int k = 0; k <= max_dim; ++k) {
            INFO("t = " << t << ", dim = " << k);
            REQUIRE(testutil::alive_at(diagrams[static_cast<std::size_t>(k)], t) ==
                    betti[static_cast<std::size_t>(k)]);
        }
    }
}

}  // namespace

TEST_CASE("filtration parsing") {
    SECTION("two vertices and one edge") {
        const Filtration f = parse_filtration("0;0\n1;0\n0 1;1\n");
        REQUIRE(f.size() == 3);
        REQUIRE(f.max_dimension() == 1);
        REQUIRE(f.simplices()[2] == Simplex({0, 1}, 1.0));
    }
    SECTION("the triangle complex") {
        const Filtration f = parse_filtration(kTriangleText);
        REQUIRE(f.size() == 7);
        REQUIRE(f.simplex_counts() == std::vector<std::int64_t>{3, 3, 1});
    }
    SECTION("missing faces are rejected") {
        REQUIRE_THROWS_WITH(parse_filtration("0 1;1\n"), Catch::Matchers::ContainsSubstring("missing face"));
        REQUIRE_THROWS_WITH(parse_filtration("0;0\n1;0\n2;0\n0 1;1\n0 2;1\n0 1 2;2\n"),
                            Catch::Matchers::ContainsSubstring("missing face"));
    }
    SECTION("a face entering after its coface is rejected") {
        REQUIRE_THROWS_WITH(parse_filtration("0;0\n1;2\n0 1;1\n"),
                            Catch::Matchers::ContainsSubstring("after its coface"));
    }
    SECTION("malformed lines carry line numbers") {
        try {
            parse_filtration("0;0\n0 1\n");
            FAIL("expected ParseError");
        } catch (const ParseError& e) {
            REQUIRE(e.line() == 2);
        }
        REQUIRE_THROWS_AS(parse_filtration("0;zero\n"), ParseError);
        REQUIRE_THROWS_AS(parse_filtration(";1\n"), ParseError);
        REQUIRE_THROWS_AS(parse_filtration("0 0;1\n"), ParseError);  // repeated vertex
        REQUIRE_THROWS_AS(parse_filtration("0;inf\n"), ParseError);
    }
    SECTION("duplicate simplices are rejected") {
        REQUIRE_THROWS_WITH(parse_filtration("0;0\n0;1\n"), Catch::Matchers::ContainsSubstring("duplicate"));
    }
    SECTION("comments and blank lines") {
        const Filtration f = parse_filtration("# complex\n\n0;0 # vertex\n");
        REQUIRE(f.size() == 1);
    }
    SECTION("serialization round trip") {
        const Filtration f = parse_filtration(kTriangleText);
        REQUIRE(parse_filtration(serialize_filtration(f)).simplices() == f.simplices());
    }
}

TEST_CASE("rips construction") {
    SECTION("unit square corners") {
        const Filtration f = build_rips({{0, 0}, {1, 0}, {1, 1}, {0, 1}}, 3.0, 2);
        REQUIRE(f.simplex_counts() == std::vector<std::int64_t>{4, 6, 4});
        // every triple spans a diagonal, so all triangles enter at sqrt(2)
        for (const auto& s : f.simplices())
            if (s.dimension() == 2) REQUIRE(s.filtration_value == Catch::Approx(std::sqrt(2.0)).margin(1e-15));
    }
    SECTION("max_eps excludes simplices") {
        const Filtration f = build_rips({{0, 0}, {1, 0}}, 0.5, 2);
        REQUIRE(f.simplex_counts() == std::vector<std::int64_t>{2});
    }
    SECTION("single point") {
        const Filtration f = build_rips({{0.5}}, 1.0, 2);
        REQUIRE(f.size() == 1);
        REQUIRE(f.simplices()[0].dimension() == 0);
    }
    SECTION("input validation") {
        REQUIRE_THROWS_AS(build_rips({}, 1.0, 2), std::invalid_argument);
        REQUIRE_THROWS_AS(build_rips({{0, 0}}, 1.0, 3), std::invalid_argument);
        REQUIRE_THROWS_AS(build_rips({{0, 0}}, -1.0, 2), std::invalid_argument);
        REQUIRE_THROWS_AS(build_rips({{0, 0}, {1, 2, 3}}, 1.0, 2), std::invalid_argument);
    }
}

TEST_CASE("point cloud parsing") {
    const auto points = parse_point_cloud("# square\n0,0\n1,0\n\n1,1\n0,1\n");
    REQUIRE(points.size() == 4);
    REQUIRE(points[2] == std::vector<double>{1.0, 1.0});
    REQUIRE_THROWS_AS(parse_point_cloud("0,0\n1\n"), ParseError);        // ragged
    REQUIRE_THROWS_AS(parse_point_cloud("0,zero\n"), ParseError);        // malformed
    REQUIRE_THROWS_AS(parse_point_cloud("0,,1\n"), ParseError);          // empty field
}

TEST_CASE("persistence of the triangle filtration") {
    const auto diagrams = compute_persistence(parse_filtration(kTriangleText), 1);
    REQUIRE(diagrams.size() == 2);
    REQUIRE(diagrams[0] == PersistenceDiagram({DiagramPoint(0, 1, 2), DiagramPoint(0, kInf)}));
    REQUIRE(diagrams[1] == PersistenceDiagram({DiagramPoint(1, 2)}));
    REQUIRE(*diagrams[0].homology_dimension() == 0);
    REQUIRE(*diagrams[1].homology_dimension() == 1);
}

TEST_CASE("persistence of a single vertex") {
    const auto diagrams = compute_persistence(parse_filtration("0;0\n"), 0);
    REQUIRE(diagrams.size() == 1);
    REQUIRE(diagrams[0] == PersistenceDiagram({DiagramPoint(0, kInf)}));
}

TEST_CASE("persistence of the unit-square rips filtration") {
    const Filtration f = build_rips({{0, 0}, {1, 0}, {1, 1}, {0, 1}}, 3.0, 2);
    const auto diagrams = compute_persistence(f, 1);
    REQUIRE(diagrams[0] == PersistenceDiagram({DiagramPoint(0, 1, 3), DiagramPoint(0, kInf)}));
    REQUIRE(diagrams[1].points().size() == 1);
    REQUIRE(diagrams[1].points()[0].birth == 1.0);
    REQUIRE(diagrams[1].points()[0].death == Catch::Approx(std::sqrt(2.0)).margin(1e-12));
}

TEST_CASE("two distant points with a small radius stay disconnected") {
    const auto diagrams = compute_persistence(build_rips({{0, 0}, {1, 0}}, 0.5, 2), 0);
    REQUIRE(diagrams[0] == PersistenceDiagram({DiagramPoint(0, kInf, 2)}));
}

TEST_CASE("reduction agrees with the rank oracle on reference complexes") {
    check_against_rank_oracle(parse_filtration(kTriangleText));
    check_against_rank_oracle(build_rips({{0, 0}, {1, 0}, {1, 1}, {0, 1}}, 3.0, 2));
    // an octahedron boundary has a 2-cycle; exercise dimension 2
    const std::vector<std::vector<double>> octahedron = {{1, 0, 0},  {-1, 0, 0}, {0, 1, 0},
                                                         {0, -1, 0}, {0, 0, 1},  {0, 0, -1}};
    check_against_rank_oracle(build_rips(octahedron, 1.5, 2));
}

TEST_CASE("rank oracle and euler consistency on random rips filtrations") {
    std::mt19937_64 rng(141);
    std::uniform_int_distribution<int> count(3, 7);
    std::uniform_real_distribution<double> coord(0.0, 2.0);
    std::uniform_real_distribution<double> eps(0.5, 2.5);
    for (int trial = 0; trial < 50; ++trial) {
        std::vector<std::vector<double>> points;
        const int n = count(rng);
        for (int i = 0; i < n; ++i) points.push_back({coord(rng), coord(rng)});
        const Filtration f = build_rips(points, eps(rng), 2);
        check_against_rank_oracle(f);

        const int max_dim = std::max(0, f.max_dimension());
        const auto diagrams = compute_persistence(f, max_dim);
        std::int64_t euler_simplices = 0;
        const auto counts = f.simplex_counts();
        for (std::size_t k = 0; k < counts.size(); ++k)
            euler_simplices += (k % 2 == 0 ? counts[k] : -counts[k]);
        std::int64_t euler_bars = 0;
        for (std::size_t k = 0; k < diagrams.size(); ++k) {
            const std::int64_t alive = infinite_count(diagrams[k]);
            euler_bars += (k % 2 == 0 ? alive : -alive);
        }
        REQUIRE(euler_simplices == euler_bars);
        REQUIRE(infinite_count(diagrams[0]) == testutil::connected_components(f));
    }
}

TEST_CASE("input order of simplices with equal value and dimension is irrelevant") {
    std::mt19937_64 rng(77);
    const char* base =
        "0;0\n1;0\n2;0\n3;0\n"
        "0 1;1\n2 3;1\n1 2;1\n0 3;1\n0 2;1\n"
        "0 1 2;2\n0 2 3;2\n";
    const Filtration reference = parse_filtration(base);
    const auto reference_diagrams = compute_persistence(reference, 1);
    auto lines_text = std::string(base);
    for (int trial = 0; trial < 10; ++trial) {
        auto lines = split_lines(lines_text);
        std::vector<std::string> shuffled(lines.begin(), lines.end());
        std::shuffle(shuffled.begin(), shuffled.end(), rng);
        std::string text;
        for (const auto& l : shuffled) text += l + "\n";
        const auto diagrams = compute_persistence(parse_filtration(text), 1);
        REQUIRE(diagrams[0] == reference_diagrams[0]);
        REQUIRE(diagrams[1] == reference_diagrams[1]);
    }
}

TEST_CASE("creator destroyer bookkeeping") {
    // every simplex is a creator or a destroyer: each visible finite bar uses
    // one of each, each infinite bar one creator, and dropped zero-length
    // pairs use one of each. So simplices - (2*finite + infinite) is the
    // dropped-pair count times two.
    const Filtration f = build_rips({{0, 0}, {2, 0}, {1, 1.5}, {3, 1.5}}, 4.0, 2);
    const int max_dim = std::max(0, f.max_dimension());
    const auto diagrams = compute_persistence(f, max_dim);
    std::int64_t total = 0;
    for (const auto c : f.simplex_counts()) total += c;
    std::int64_t paired = 0, unpaired = 0;
    for (const auto& d : diagrams)
        for (const auto& p : d.points()) (p.has_infinite_death() ? unpaired : paired) += p.multiplicity;
    REQUIRE(total >= 2 * paired + unpaired);
    REQUIRE((total - (2 * paired + unpaired)) % 2 == 0);
}

TEST_CASE("compute_persistence validates max_homology_dim") {
    REQUIRE_THROWS_AS(compute_persistence(parse_filtration("0;0\n"), -1), std::invalid_argument);
}
