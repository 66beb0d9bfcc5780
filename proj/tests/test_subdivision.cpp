#include <doctest.h>

#include <map>
#include <random>

#include "lgdeg/errors.hpp"
#include "lgdeg/oracle.hpp"
#include "lgdeg/subdivision.hpp"
#include "support.hpp"

using namespace lgdeg;
using testing::iv;
using testing::pts;

namespace {

HeightFunction heights(std::initializer_list<long> xs) {
    HeightFunction h;
    for (long x : xs) h.heights.emplace_back(x);
    return h;
}

IntVector weighted_sum(const PointConfiguration& config, const IntVector& phi) {
    IntVector out(config.dim() + 1, 0);
    for (std::size_t i = 0; i < config.size(); ++i) out = add(out, scale(config.lifted(i), phi[i]));
    return out;
}

// True if some unimodular 2x2 matrix maps the first ray set onto the second.
bool unimodular_equivalent(const std::vector<IntVector>& a, const std::vector<IntVector>& b) {
    if (a.size() != b.size()) return false;
    std::set<IntVector> target(b.begin(), b.end());
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < a.size(); ++j) {
            Integer da = a[i][0] * a[j][1] - a[i][1] * a[j][0];
            if (abs(da) != 1) continue;
            for (std::size_t k = 0; k < b.size(); ++k)
                for (std::size_t l = 0; l < b.size(); ++l) {
                    // Solve a_i U = b_k, a_j U = b_l over the integers.
                    IntMatrix inv{{a[j][1] * da, -a[i][1] * da}, {-a[j][0] * da, a[i][0] * da}};
                    IntMatrix rhs{b[k], b[l]};
                    IntMatrix u = multiply(inv, rhs);
                    if (abs(det(u)) != 1) continue;
                    std::set<IntVector> image;
                    for (const auto& r : a) image.insert(row_times(r, u));
                    if (image == target) return true;
                }
        }
    return false;
}

std::vector<PointConfiguration> small_random_configs(std::uint64_t seed, std::size_t count, std::size_t maxPoints) {
    std::mt19937_64 rng(seed);
    std::vector<PointConfiguration> out;
    for (std::size_t t = 0; t < count; ++t) {
        std::size_t d = 1 + t % 3;
        std::size_t lo = d + 1, hi = std::min<std::size_t>(maxPoints, d + 4);
        std::size_t n = lo + rng() % (hi - lo + 1);
        long r = d == 1 ? 4 : (d == 2 ? 2 : 1);
        out.emplace_back(testing::random_spanning_points(rng, d, n, r));
    }
    return out;
}

}  // namespace

TEST_CASE("induced subdivisions") {
    auto sq = testing::fixture("square");
    Subdivision trivial = induced_subdivision(sq, heights({0, 0, 0, 0}));
    REQUIRE(trivial.cells.size() == 1);
    CHECK(trivial.cells[0].marking == IndexSet{0, 1, 2, 3});
    CHECK(!trivial.isTriangulation);

    PointConfiguration line(pts({{0}, {1}, {2}}));
    Subdivision s = induced_subdivision(line, heights({0, -1, 0}));
    CHECK(s.isTriangulation);
    CHECK(to_triangulation(s).cells() == std::vector<Simplex>{{0, 1}, {1, 2}});

    Subdivision diag = induced_subdivision(sq, heights({1, 0, 1, 0}));
    CHECK(to_triangulation(diag).cells() == std::vector<Simplex>{{0, 1, 3}, {1, 2, 3}});
    auto [tp, tm] = circuit_triangulations(find_circuits(sq)[0]);
    CHECK(to_triangulation(diag) == tp);

    Subdivision coarse = induced_subdivision(line, heights({0, 0, 1}));
    REQUIRE(coarse.cells.size() == 2);
    CHECK(coarse.cells[0].marking == IndexSet{0, 1});
    CHECK_THROWS_AS(induced_subdivision(line, heights({0, 0})), ArgumentError);
}

TEST_CASE("regularity certificates") {
    auto sq = testing::fixture("square");
    auto [tp, tm] = circuit_triangulations(find_circuits(sq)[0]);
    for (const auto& t : {tp, tm}) {
        auto cert = is_regular(sq, t);
        REQUIRE(cert.has_value());
        CHECK(cert->slack > 0);
        CHECK(to_triangulation(induced_subdivision(sq, cert->height)) == t);
    }
    Subdivision trivial = make_subdivision({Cell{{0, 1, 2, 3}}}, 2);
    auto cert = is_regular(sq, trivial);
    REQUIRE(cert.has_value());
    CHECK(cert->height.heights == RatVector(4, 0));
    CHECK(cert->slack == 1);

    Subdivision overlapping = make_subdivision({Cell{{0, 1, 2}}, Cell{{0, 2, 3}}, Cell{{0, 1, 3}}}, 2);
    CHECK_THROWS_AS(is_regular(sq, overlapping), ArgumentError);
    CHECK_THROWS_AS(is_regular(sq, Triangulation({{0, 1, 2}})), ArgumentError);
}

TEST_CASE("the non-regular fixture has no certificate") {
    auto config = testing::fixture("nonregular");
    Triangulation twisted({{0, 1, 3}, {0, 2, 5}, {0, 3, 5}, {1, 2, 4}, {1, 3, 4}, {2, 4, 5}, {3, 4, 5}});
    auto all = oracle::all_triangulations(config);
    CHECK(all.size() == 18);
    CHECK(enumerate_regular_triangulations(config).triangulations.size() == 16);
    REQUIRE(std::find(all.begin(), all.end(), twisted) != all.end());

    std::vector<IntVector> gkz;
    std::size_t twistedIndex = 0;
    for (std::size_t i = 0; i < all.size(); ++i) {
        if (all[i] == twisted) twistedIndex = i;
        gkz.push_back(gkz_vertex(config, all[i]));
    }
    auto graph = oracle::hull_graph(gkz);
    bool isVertex = std::find(graph.vertices.begin(), graph.vertices.end(), twistedIndex) != graph.vertices.end();
    CHECK(!isVertex);
    CHECK(!is_regular(config, twisted).has_value());

    Subdivision coarse = to_subdivision(twisted);
    CHECK(!is_regular(config, coarse).has_value());
}

TEST_CASE("placing triangulations") {
    PointConfiguration simplex(pts({{0, 0}, {1, 0}, {0, 1}}));
    CHECK(placing_triangulation(simplex, {2, 0, 1}).cells() == std::vector<Simplex>{{0, 1, 2}});
    auto sq = testing::fixture("square");
    auto [tp, tm] = circuit_triangulations(find_circuits(sq)[0]);
    Triangulation placed = placing_triangulation(sq, {0, 1, 2, 3});
    CHECK((placed == tp || placed == tm));
    auto five = testing::fixture("fivepoint");
    Triangulation t = placing_triangulation(five);
    CHECK(is_regular(five, t).has_value());
    CHECK_THROWS_AS(placing_triangulation(sq, {0, 1, 2}), ArgumentError);
    CHECK_THROWS_AS(placing_triangulation(sq, {0, 1, 2, 2}), ArgumentError);
}

TEST_CASE("GKZ vectors") {
    auto sq = testing::fixture("square");
    CHECK(gkz_vertex(sq, Triangulation({{0, 1, 3}, {1, 2, 3}})) == iv({1, 2, 1, 2}));
    PointConfiguration simplex(pts({{0, 0}, {2, 0}, {0, 1}}));
    CHECK(gkz_vertex(simplex, Triangulation({{0, 1, 2}})) == iv({2, 2, 2}));
    CHECK(hull_volume(testing::fixture("fivepoint")) == 4);
    CHECK(hull_volume(testing::fixture("sixpoint")) == 5);
}

TEST_CASE("secondary polytopes of the fixtures") {
    auto sq = testing::fixture("square");
    auto secSq = enumerate_regular_triangulations(sq);
    CHECK(secSq.triangulations.size() == 2);
    CHECK(secSq.edges.size() == 1);
    CHECK(secSq.dim == 1);
    auto raysSq = secondary_fan_rays(sq, secSq);
    REQUIRE(raysSq.size() == 2);
    CHECK(add(raysSq[0], raysSq[1]) == IntVector(1, 0));

    auto five = testing::fixture("fivepoint");
    auto sec = enumerate_regular_triangulations(five);
    CHECK(sec.triangulations.size() == 4);
    CHECK(sec.edges.size() == 4);
    std::set<IntVector> distinct(sec.gkz.begin(), sec.gkz.end());
    CHECK(distinct.size() == 4);
    for (const auto& phi : sec.gkz) CHECK(weighted_sum(five, phi) == weighted_sum(five, sec.gkz[0]));
    auto rays = secondary_fan_rays(five, sec);
    CHECK(unimodular_equivalent(rays, {iv({1, 1}), iv({0, 1}), iv({-2, -3}), iv({1, 0})}));

    PointConfiguration simplex(pts({{0, 0}, {1, 0}, {0, 1}}));
    auto secS = enumerate_regular_triangulations(simplex);
    CHECK(secS.triangulations.size() == 1);
    CHECK(secondary_fan_rays(simplex, secS).empty());
    CHECK(lafforgue_vertices(simplex, secS).size() == 3);
    CHECK(lafforgue_vertices(sq, secSq).size() == 8);

    std::size_t used = 0;
    for (const auto& t : sec.triangulations) used += t.used_points().size();
    CHECK(lafforgue_vertices(five, sec).size() == used);

    CHECK_THROWS_AS(enumerate_regular_triangulations(five, 3), ResourceError);
    try {
        enumerate_regular_triangulations(five, 2);
    } catch (const ResourceError& e) {
        CHECK(e.partial == 2);
    }
}

TEST_CASE("ray unimodular check rejects inequivalent sets") {
    CHECK(!unimodular_equivalent({iv({1, 0}), iv({0, 1}), iv({-1, -1}), iv({1, 1})},
                                 {iv({1, 1}), iv({0, 1}), iv({-2, -3}), iv({1, 0})}));
}

TEST_CASE("round trip and dimension on random configurations") {
    for (const auto& config : small_random_configs(31, 60, 7)) {
        auto sec = enumerate_regular_triangulations(config);
        for (const auto& t : sec.triangulations) {
            auto cert = is_regular(config, t);
            REQUIRE(cert.has_value());
            CHECK(to_triangulation(induced_subdivision(config, cert->height)) == t);
        }
        IntMatrix diffs;
        for (const auto& phi : sec.gkz) diffs.push_back(sub(phi, sec.gkz[0]));
        CHECK(rank(diffs) == config.size() - config.dim() - 1);
        CHECK(sec.dim == config.size() - config.dim() - 1);
    }
}

TEST_CASE("flip BFS agrees with the brute-force hull oracle") {
    auto configs = small_random_configs(32, 45, 7);
    for (const char* name : {"square", "star13", "circuit121", "fivepoint", "sixpoint", "nonregular"})
        configs.push_back(testing::fixture(name));
    for (const auto& config : configs) {
        auto sec = enumerate_regular_triangulations(config);
        auto all = oracle::all_triangulations(config);
        std::vector<IntVector> gkz;
        for (const auto& t : all) gkz.push_back(gkz_vertex(config, t));
        auto graph = oracle::hull_graph(gkz);

        std::set<Triangulation> hullVertices;
        for (auto v : graph.vertices) hullVertices.insert(all[v]);
        std::set<Triangulation> bfs(sec.triangulations.begin(), sec.triangulations.end());
        CHECK(bfs == hullVertices);

        std::set<std::pair<Triangulation, Triangulation>> hullEdges, bfsEdges;
        for (auto [u, v] : graph.edges) hullEdges.insert(std::minmax(all[u], all[v]));
        for (const auto& e : sec.edges) {
            const auto& from = sec.triangulations[e.from];
            const auto& to = sec.triangulations[e.to];
            bfsEdges.insert(std::minmax(from, to));
            CHECK(modify(from, e.circuit) == to);
            CHECK(sec.circuits[e.circuitIndex].support == e.circuit.support);
        }
        CHECK(bfsEdges == hullEdges);
    }
}
