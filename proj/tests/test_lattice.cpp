#include <doctest.h>

#include <random>

#include "lgdeg/errors.hpp"
#include "lgdeg/lattice.hpp"
#include "support.hpp"

using namespace lgdeg;
using testing::iv;
using testing::pts;

namespace {

// Brute-force facet oracle: every d-subset spanning a hyperplane with all points on one side.
std::vector<Facet> facets_by_subsets(const std::vector<LatticePoint>& points) {
    std::size_t d = points[0].size();
    std::size_t n = points.size();
    std::set<std::pair<IntVector, Integer>> found;
    std::vector<bool> mask(n, false);
    std::fill(mask.begin(), mask.begin() + static_cast<long>(d), true);
    do {
        IntMatrix rows;
        for (std::size_t i = 0; i < n; ++i)
            if (mask[i]) {
                auto q = points[i];
                q.emplace_back(1);
                rows.push_back(q);
            }
        IntMatrix ker = kernel(rows, d + 1);
        if (ker.size() != 1) continue;
        IntVector normal(ker[0].begin(), ker[0].begin() + static_cast<long>(d));
        Integer offset = ker[0][d];
        int side = 0;
        bool ok = true;
        for (const auto& p : points) {
            Integer v = dot(normal, p) + offset;
            int s = sgn(v);
            if (s == 0) continue;
            if (side == 0) side = s;
            else if (s != side) ok = false;
        }
        if (!ok || side == 0) continue;
        if (side < 0) {
            for (auto& x : normal) x = -x;
            offset = -offset;
        }
        Integer g = content(normal);
        for (auto& x : normal) x /= g;
        offset /= g;
        found.insert({normal, offset});
    } while (std::prev_permutation(mask.begin(), mask.end()));
    std::vector<Facet> out;
    for (const auto& [nrm, off] : found) out.push_back(Facet{nrm, off});
    return out;
}

IntMatrix random_matrix(std::mt19937_64& rng, std::size_t r, std::size_t c, long bound) {
    std::uniform_int_distribution<long> dist(-bound, bound);
    IntMatrix m(r, IntVector(c));
    for (auto& row : m)
        for (auto& x : row) x = dist(rng);
    return m;
}

IntMatrix random_unimodular(std::mt19937_64& rng, std::size_t n) {
    IntMatrix u = identity(n);
    std::uniform_int_distribution<std::size_t> idx(0, n - 1);
    std::uniform_int_distribution<long> mult(-2, 2);
    for (int step = 0; step < 8; ++step) {
        std::size_t i = idx(rng), j = idx(rng);
        if (i == j) continue;
        long k = mult(rng);
        for (std::size_t c = 0; c < n; ++c) u[i][c] += k * u[j][c];
    }
    return u;
}

}  // namespace

TEST_CASE("affine relations of the square and the (1,3) circuit") {
    auto sq = affine_relations(testing::fixture("square"));
    REQUIRE(sq.rank == 1);
    CHECK(sq.basis[0] == iv({1, -1, 1, -1}));
    auto star = affine_relations(testing::fixture("star13"));
    REQUIRE(star.rank == 1);
    CHECK(star.basis[0] == iv({3, -1, -1, -1}));
    auto simplex = affine_relations(PointConfiguration(pts({{0, 0}, {1, 0}, {0, 1}})));
    CHECK(simplex.rank == 0);
    CHECK(simplex.basis.empty());
}

TEST_CASE("normalized volume") {
    CHECK(normalized_volume(pts({{0, 0}, {1, 0}, {0, 1}})) == 1);
    CHECK(normalized_volume(pts({{0, 0}, {2, 0}, {0, 1}})) == 2);
    CHECK(normalized_volume(pts({{0, 0}, {1, 1}, {2, 2}})) == 0);
    CHECK_THROWS_AS(normalized_volume(pts({{0, 0}, {1, 0}})), ArgumentError);
}

TEST_CASE("lattice index") {
    CHECK(lattice_index({iv({1, 0}), iv({0, 1})}, 2) == 1);
    CHECK(lattice_index({iv({1, 0}), iv({1, 2})}, 2) == 2);
    CHECK(lattice_index({iv({2})}, 1) == 2);
    CHECK(lattice_index({iv({2, 4})}, 2) == 2);
    CHECK(lattice_index({}, 3) == 1);
    CHECK(!lattice_index_in_ambient({iv({2, 4})}, 2).has_value());
}

TEST_CASE("convex hull examples") {
    auto sq = convex_hull(pts({{0, 0}, {1, 0}, {1, 1}, {0, 1}}));
    CHECK(sq.facets().size() == 4);
    CHECK(sq.vertex_set().size() == 4);

    auto five = testing::fixture("fivepoint");
    CHECK(five.vertex_set() == IndexSet{0, 1, 2, 3});
    CHECK(!five.is_vertex(4));
    CHECK(five.in_interior(to_rational(five.point(4))));

    auto tri = convex_hull(pts({{0, 0}, {1, 0}, {0, 1}}));
    std::vector<Facet> expected{{iv({-1, -1}), 1}, {iv({0, 1}), 0}, {iv({1, 0}), 0}};
    CHECK(tri.facets() == expected);
}

TEST_CASE("construction rejects bad input") {
    CHECK_THROWS_AS(PointConfiguration(pts({{0, 0}, {1, 1}, {2, 2}})), DimensionError);
    CHECK_THROWS_AS(PointConfiguration(pts({{0, 0}, {1, 0}, {0, 1}, {1, 0}})), ArgumentError);
    CHECK_THROWS_AS(PointConfiguration(pts({{0, 0}, {1, 0, 0}})), ArgumentError);
    CHECK_THROWS_AS(PointConfiguration({}), ArgumentError);
}

TEST_CASE("minimal face queries") {
    auto sq = testing::fixture("square");
    CHECK(sq.minimal_face(RatVector{Rational(1, 2), 0}) == IndexSet{0, 1});
    CHECK(sq.minimal_face(RatVector{Rational(1, 2), Rational(1, 2)}) == IndexSet{0, 1, 2, 3});
    CHECK(sq.minimal_face(RatVector{1, 1}) == IndexSet{2});
    CHECK(!sq.contains(RatVector{2, 0}));
}

TEST_CASE("HNF and SNF transforms on random matrices") {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 200; ++trial) {
        std::size_t r = 1 + trial % 4, c = 1 + (trial / 4) % 4;
        IntMatrix m = random_matrix(rng, r, c, 6);
        HnfResult h = hnf(m);
        CHECK(multiply(h.u, m) == h.h);
        CHECK(abs(det(h.u)) == 1);
        CHECK(h.rank == rank(m));
        SnfResult s = snf(m, c);
        IntMatrix lmr = multiply(multiply(s.left, m), s.right);
        for (std::size_t i = 0; i < r; ++i)
            for (std::size_t j = 0; j < c; ++j) {
                Integer expect = (i == j && i < s.diagonal.size()) ? s.diagonal[i] : Integer(0);
                CHECK(lmr[i][j] == expect);
            }
        for (std::size_t i = 0; i + 1 < s.diagonal.size(); ++i) CHECK(s.diagonal[i + 1] % s.diagonal[i] == 0);
        if (r == c && det(m) != 0) {
            Integer prod = 1;
            for (const auto& x : s.diagonal) prod *= x;
            CHECK(prod == abs(det(m)));
            CHECK(lattice_index(m, c) == abs(det(m)));
        }
    }
}

TEST_CASE("relation lattice invariants on random configurations") {
    std::mt19937_64 rng(12);
    for (int trial = 0; trial < 100; ++trial) {
        std::size_t d = 1 + trial % 3;
        std::size_t n = d + 1 + static_cast<std::size_t>(trial % 5);
        PointConfiguration config(testing::random_spanning_points(rng, d, n, 3));
        auto rel = affine_relations(config);
        CHECK(rel.rank + d + 1 == n);
        CHECK(hnf(rel.basis).h == rel.basis);
        for (const auto& r : rel.basis) {
            Integer s = 0;
            IntVector moment(d, 0);
            for (std::size_t i = 0; i < n; ++i) {
                s += r[i];
                moment = add(moment, scale(config.point(i), r[i]));
            }
            CHECK(s == 0);
            CHECK(moment == IntVector(d, 0));
        }
    }
}

TEST_CASE("hull facets agree with the subset oracle") {
    std::mt19937_64 rng(13);
    for (int trial = 0; trial < 80; ++trial) {
        std::size_t d = 2 + trial % 2;
        std::size_t n = d + 1 + static_cast<std::size_t>(trial % 6);
        auto points = testing::random_spanning_points(rng, d, n, 3);
        PointConfiguration config(points);
        CHECK(config.facets() == facets_by_subsets(points));
        for (const auto& f : config.facets()) {
            IntMatrix onFacet;
            for (const auto& p : points) {
                Integer v = dot(f.normal, p) + f.offset;
                CHECK(v >= 0);
                if (v == 0) {
                    auto q = p;
                    q.emplace_back(1);
                    onFacet.push_back(q);
                }
            }
            CHECK(rank(onFacet) == d);
        }
    }
}

TEST_CASE("normalized volume is invariant under unimodular maps and permutations") {
    std::mt19937_64 rng(14);
    for (int trial = 0; trial < 100; ++trial) {
        std::size_t d = 1 + trial % 4;
        auto simplex = testing::random_spanning_points(rng, d, d + 1, 4);
        Integer v = normalized_volume(simplex);
        IntMatrix u = random_unimodular(rng, d);
        std::vector<LatticePoint> mapped;
        for (const auto& p : simplex) mapped.push_back(row_times(p, u));
        CHECK(normalized_volume(mapped) == v);
        std::shuffle(mapped.begin(), mapped.end(), rng);
        CHECK(normalized_volume(mapped) == v);
    }
}

TEST_CASE("quotient and reembedding") {
    Quotient q = quotient_by({iv({1, 1, 0})}, 3);
    CHECK(q.rank() == 2);
    CHECK(q.project(iv({1, 1, 0})) == IntVector(2, 0));
    CHECK(lattice_index({q.project(iv({1, 0, 0})), q.project(iv({0, 0, 1}))}, 2) == 1);

    Reembedding r = reembed(pts({{0, 0, 0}, {2, 0, 2}, {0, 1, 0}}));
    CHECK(r.dim == 2);
    CHECK(normalized_volume(r.points) == 2);
}

TEST_CASE("barycentric coordinates") {
    RatVector l = barycentric(pts({{0, 0}, {2, 0}, {0, 2}}), RatVector{1, 1});
    CHECK(l == RatVector{0, Rational(1, 2), Rational(1, 2)});
}
