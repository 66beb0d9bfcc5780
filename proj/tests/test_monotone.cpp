#include <doctest.h>

#include <random>

#include "lgdeg/errors.hpp"
#include "lgdeg/monotone.hpp"
#include "lgdeg/oracle.hpp"
#include "support.hpp"

using namespace lgdeg;
using testing::iv;
using testing::pts;

namespace {

MonotonePathVertex with_decorations(std::initializer_list<std::pair<long, long>> dm) {
    MonotonePathVertex v;
    for (auto [d, m] : dm) v.decorations.push_back({Integer(m), Integer(m / d), Integer(d)});
    return v;
}

std::vector<std::vector<std::size_t>> sequences(const std::vector<MonotonePathVertex>& vs) {
    std::vector<std::vector<std::size_t>> out;
    for (const auto& v : vs) out.push_back(v.sequence);
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<std::vector<std::size_t>> oracle_paths(const SecondaryPolytope& sec, const std::vector<Integer>& f) {
    std::vector<std::pair<std::size_t, std::size_t>> edges;
    for (const auto& e : sec.edges) edges.emplace_back(e.from, e.to);
    return oracle::fiber_polytope_vertex_paths(sec.gkz, edges, f);
}

// theta . phi lies strictly below every segment of the path's (f, theta) image.
bool witness_holds(const SecondaryPolytope& sec, const std::vector<Integer>& f, const MonotonePathVertex& v) {
    auto theta = [&](std::size_t t) {
        Rational s = 0;
        for (std::size_t i = 0; i < sec.gkz[t].size(); ++i) s += v.coherenceWitness[i] * sec.gkz[t][i];
        return s;
    };
    for (std::size_t j = 1; j < v.sequence.size(); ++j) {
        std::size_t a = v.sequence[j - 1], b = v.sequence[j];
        for (std::size_t w = 0; w < sec.gkz.size(); ++w) {
            if (w == a || w == b) continue;
            Rational line = theta(a) + Rational(f[w] - f[a], f[b] - f[a]) * (theta(b) - theta(a));
            if (!(theta(w) < line)) return false;
        }
    }
    return true;
}

}  // namespace

TEST_CASE("f values") {
    PointConfiguration simplex(pts({{0, 0}, {2, 0}, {0, 1}}));
    auto sec = enumerate_regular_triangulations(simplex);
    CHECK(f_values(sec, sharpened_spec(simplex, {0})) == std::vector<Integer>{2});

    auto six = testing::fixture("sixpoint");
    auto secSix = enumerate_regular_triangulations(six);
    auto f = f_values(secSix, fano_mirror_spec(six, 5));
    CHECK(*std::min_element(f.begin(), f.end()) == 0);
    CHECK(*std::max_element(f.begin(), f.end()) == 5);
    for (const auto& x : f) CHECK((x >= 0 && x <= 5));

    auto sq = testing::fixture("square");
    auto secSq = enumerate_regular_triangulations(sq);
    auto fs = f_values(secSq, sharpened_spec(sq, {0}));
    auto [tp, tm] = circuit_triangulations(find_circuits(sq)[0]);
    Integer fPlus = fs[*secSq.index_of(tp)], fMinus = fs[*secSq.index_of(tm)];
    CHECK(fMinus - fPlus == 1);

    CHECK_THROWS_AS(sharpened_spec(sq, {}), ArgumentError);
    CHECK_THROWS_AS(sharpened_spec(sq, {7}), ArgumentError);
    CHECK_THROWS_AS(fano_mirror_spec(sq, 0), ArgumentError);
    CHECK_THROWS_AS(fano_mirror_spec(testing::fixture("fivepoint"), 0), ArgumentError);
}

TEST_CASE("monotone vertices of the fixtures") {
    auto sq = testing::fixture("square");
    auto secSq = enumerate_regular_triangulations(sq);
    auto spec = sharpened_spec(sq, {0});
    auto vs = enumerate_monotone_vertices(secSq, spec);
    REQUIRE(vs.size() == 1);
    REQUIRE(vs[0].decorations.size() == 1);
    CHECK(vs[0].decorations[0].m == 1);

    auto six = testing::fixture("sixpoint");
    auto secSix = enumerate_regular_triangulations(six);
    auto specSix = fano_mirror_spec(six, 5);
    auto vsSix = enumerate_monotone_vertices(secSix, specSix);
    CHECK(vsSix.size() == 6);
    std::multiset<std::size_t> lengths;
    for (const auto& v : vsSix) {
        lengths.insert(v.sequence.size());
        Integer total = 0;
        for (const auto& d : v.decorations) total += d.m;
        CHECK(total == 5);
    }
    CHECK(lengths == std::multiset<std::size_t>{3, 3, 3, 3, 4, 4});
    CHECK(sequences(vsSix) == oracle_paths(secSix, f_values(secSix, specSix)));

    auto five = testing::fixture("fivepoint");
    auto secFive = enumerate_regular_triangulations(five);
    auto specFive = fano_mirror_spec(five, 4);
    auto vsFive = enumerate_monotone_vertices(secFive, specFive);
    CHECK(sequences(vsFive) == oracle_paths(secFive, f_values(secFive, specFive)));
    CHECK(vsFive.size() == 2);
}

TEST_CASE("decorate") {
    auto six = testing::fixture("sixpoint");
    auto sec = enumerate_regular_triangulations(six);
    auto spec = fano_mirror_spec(six, 5);
    for (const auto& v : enumerate_monotone_vertices(sec, spec)) {
        for (std::size_t j = 0; j < v.decorations.size(); ++j) {
            const auto& d = v.decorations[j];
            CHECK(d.m == d.e * d.d);
            if (d.e == 1) CHECK(d.d == d.m);
            const auto& edge = sec.edges[v.edges[j]];
            std::size_t a = v.sequence[j], b = v.sequence[j + 1];
            CHECK(((edge.from == a && edge.to == b) || (edge.from == b && edge.to == a)));
            CHECK(modify(sec.triangulations[a], edge.circuit) == sec.triangulations[b]);
        }
    }
    auto f = f_values(sec, spec);
    std::size_t lo = static_cast<std::size_t>(std::min_element(f.begin(), f.end()) - f.begin());
    std::size_t hi = static_cast<std::size_t>(std::max_element(f.begin(), f.end()) - f.begin());
    if (!sec.edge_between(lo, hi)) CHECK_THROWS_AS(decorate(sec, spec, {lo, hi}), ArgumentError);
    const auto& e = sec.edges[0];
    if (f[e.from] > f[e.to]) CHECK_THROWS_AS(decorate(sec, spec, {e.from, e.to}), ArgumentError);
    else if (f[e.from] < f[e.to]) CHECK_THROWS_AS(decorate(sec, spec, {e.to, e.from}), ArgumentError);
}

TEST_CASE("radar screens") {
    auto one = radar_screen(with_decorations({{1, 3}}));
    REQUIRE(one.sectors.size() == 3);
    for (const auto& s : one.sectors) {
        CHECK(s.widthTurns == Rational(1, 3));
        CHECK(s.endpoints == 1);
        CHECK(!s.outerRadius.has_value());
    }
    CHECK(one.basis.size() == 3);

    auto path = radar_screen(with_decorations({{1, 1}, {1, 1}, {1, 3}}));
    REQUIRE(path.basis.size() == 5);
    std::vector<std::size_t> annuli;
    for (const auto& b : path.basis) annuli.push_back(b.annulus);
    CHECK(annuli == std::vector<std::size_t>{1, 2, 3, 3, 3});
    CHECK(path.sectors[0].innerRadius == 0);
    CHECK(*path.sectors[0].outerRadius == 1);
    CHECK(*path.sectors[1].outerRadius == 2);
    CHECK(!path.sectors.back().outerRadius.has_value());

    auto two = radar_screen(with_decorations({{2, 4}}));
    REQUIRE(two.sectors.size() == 2);
    CHECK(two.sectors[0].widthTurns == Rational(1, 2));
    CHECK(two.sectors[0].endpoints == 2);
    CHECK(two.basis.size() == 4);
    CHECK(two.basis[0].angleTurns == Rational(1, 8));
    CHECK(two.basis[1].angleTurns == Rational(3, 8));

    auto custom = radar_screen(with_decorations({{1, 1}, {1, 2}}), std::vector<Rational>{Rational(5, 2)});
    CHECK(*custom.sectors[0].outerRadius == Rational(5, 2));
    CHECK_THROWS_AS(radar_screen(with_decorations({{1, 1}, {1, 2}}), std::vector<Rational>{}), ArgumentError);
    CHECK_THROWS_AS(radar_screen(with_decorations({{1, 1}, {1, 2}, {1, 1}}), std::vector<Rational>{2, 1}),
                    ArgumentError);

    auto plot = radar_plot(path);
    CHECK(plot.endpoints.size() == 5);
    CHECK(plot.polylines.size() == 2 + path.sectors.size());
}

TEST_CASE("monotone invariants on random configurations") {
    std::mt19937_64 rng(41);
    std::size_t checked = 0;
    for (int trial = 0; trial < 60; ++trial) {
        std::size_t d = 1 + trial % 3;
        std::size_t n = d + 2 + rng() % 3;
        if (n > 7) n = 7;
        PointConfiguration config(testing::random_spanning_points(rng, d, n, d == 1 ? 4 : (d == 2 ? 2 : 1)));
        auto sec = enumerate_regular_triangulations(config);
        IndexSet sharp{rng() % n};
        if (trial % 3 == 0) sharp.push_back((sharp[0] + 1) % n);
        auto spec = sharpened_spec(config, sharp);
        auto f = f_values(sec, spec);
        auto vs = enumerate_monotone_vertices(sec, spec);
        CHECK(sequences(vs) == oracle_paths(sec, f));
        Integer lo = *std::min_element(f.begin(), f.end()), hi = *std::max_element(f.begin(), f.end());
        for (const auto& v : vs) {
            Integer total = 0;
            for (const auto& dec : v.decorations) total += dec.m;
            CHECK(total == hi - lo);
            CHECK(witness_holds(sec, f, v));
            auto screen = radar_screen(v);
            CHECK(Integer(static_cast<unsigned long>(screen.basis.size())) == total);
            std::map<std::size_t, Rational> widths;
            for (const auto& s : screen.sectors) widths[s.annulus] += s.widthTurns;
            for (const auto& [j, w] : widths) CHECK(w == 1);
        }
        ++checked;
    }
    CHECK(checked == 60);
}
