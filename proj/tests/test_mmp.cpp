#include <doctest.h>

#include <random>

#include "lgdeg/errors.hpp"
#include "lgdeg/mmp.hpp"
#include "lgdeg/oracle.hpp"
#include "support.hpp"

using namespace lgdeg;
using testing::iv;
using testing::pts;

namespace {

std::size_t origin_index(const PointConfiguration& config) {
    for (std::size_t i = 0; i < config.size(); ++i)
        if (config.point(i) == IntVector(config.dim(), 0)) return i;
    return config.size();
}

// phi_T(alpha0) straight from the cells of T.
Integer rank_oracle(const PointConfiguration& config, const Triangulation& t, std::size_t alpha0) {
    Integer s = 0;
    for (const auto& cell : t.cells())
        if (std::binary_search(cell.begin(), cell.end(), alpha0)) s += oracle::pyramid_volume(cell_points(config, cell));
    return s;
}

std::vector<std::vector<std::string>> sorted_names(const MMPResult& r) {
    std::vector<std::vector<std::string>> out;
    for (const auto& s : r.sequences) out.push_back(s.names);
    std::sort(out.begin(), out.end());
    return out;
}

// The origin plus boundary points of a random polytope containing it in its interior.
std::optional<PointConfiguration> random_fano(std::mt19937_64& rng, std::size_t d, std::size_t n) {
    auto raw = testing::random_spanning_points(rng, d, n, 2);
    PointConfiguration hull(raw);
    IntVector zero(d, 0);
    if (!hull.in_interior(to_rational(zero))) return std::nullopt;
    std::vector<LatticePoint> kept{zero};
    for (std::size_t i = 0; i < hull.size(); ++i)
        if (hull.point(i) != zero && hull.on_boundary(i)) kept.push_back(hull.point(i));
    if (kept.size() < d + 2) return std::nullopt;
    return PointConfiguration(kept);
}

}  // namespace

TEST_CASE("fan of the star triangulation of P2 and its single contraction") {
    auto config = testing::fixture("star13");
    auto sec = enumerate_regular_triangulations(config);
    REQUIRE(sec.triangulations.size() == 2);
    std::size_t a0 = origin_index(config);
    std::size_t star = sec.gkz[0][a0] > 0 ? 0 : 1;
    auto fan = fan_from_triangulation(config, sec.triangulations[star], a0);
    CHECK(fan.alpha0IsVertex);
    CHECK(fan.fan.rank == 2);
    CHECK(fan.fan.cones.size() == 3);
    CHECK(vol(fan) == 3);
    CHECK(fan_name(fan.fan) == "P2");
    auto walls = wall_circuits(config, fan);
    CHECK(walls.size() == 3);
    for (const auto& w : walls) {
        CHECK_FALSE(w.flat);
        CHECK(w.circuit.coefficient(a0) == -3);
        CHECK(w.signature == Signature{3, 1, 0});
        CHECK(w.supp.size() == 1);
    }
    auto [step, next] = classify_and_contract(config, fan, walls[0]);
    CHECK(step.kind == ContractionKind::MoriFiber);
    CHECK(step.vol0 == 3);
    CHECK(step.vol0Direct == 3);
    CHECK(step.baseFan.volume == 1);
    CHECK(step.fiberFan.rank == 2);
    CHECK(step.fiberFan.volume == 3);
    CHECK_FALSE(next.alpha0IsVertex);
    CHECK(fan_name(next.fan) == "pt");

    auto result = enumerate_mmp_sequences(config, sec, a0);
    REQUIRE(result.sequences.size() == 1);
    CHECK(result.sequences[0].names == std::vector<std::string>{"P2", "pt"});
    auto ledger = k0_ledger(result.sequences[0]);
    REQUIRE(ledger.size() == 1);
    CHECK(ledger[0].drop == 3);
    CHECK(result.wallSearchSequences == 1);
}

TEST_CASE("six-point configuration: sequences, names and ledger") {
    auto config = testing::fixture("sixpoint");
    auto sec = enumerate_regular_triangulations(config);
    REQUIRE(sec.triangulations.size() == 10);
    std::size_t a0 = 5;
    auto result = enumerate_mmp_sequences(config, sec, a0);
    REQUIRE(result.sequences.size() == 6);
    std::vector<std::vector<std::string>> expected = {
        {"Bl1(P1xP1)", "F1", "P1"},       {"Bl1(P1xP1)", "F1", "P1"},
        {"Bl1(P1xP1)", "F1", "P2", "pt"}, {"Bl1(P1xP1)", "F1", "P2", "pt"},
        {"Bl1(P1xP1)", "P1xP1", "P1"},    {"Bl1(P1xP1)", "P1xP1", "P1"},
    };
    CHECK(sorted_names(result) == expected);
    CHECK(result.wallSearchSequences >= result.sequences.size());

    for (const auto& seq : result.sequences) {
        auto ledger = k0_ledger(seq);
        REQUIRE(ledger.size() == seq.steps.size());
        CHECK(ledger.front().rankBefore == 5);
        CHECK(seq.fans.front().fan.cones.size() == 5);
        CHECK(wall_circuits(config, seq.fans.front()).size() == 5);
        CHECK(seq.steps.front().kind == ContractionKind::Divisorial);
        CHECK(seq.steps.back().kind == ContractionKind::MoriFiber);
        for (std::size_t j = 0; j < ledger.size(); ++j) {
            CHECK(ledger[j].rankBefore == rank_oracle(config, sec.triangulations[seq.triangulations[j]], a0));
            CHECK(ledger[j].rankAfter == rank_oracle(config, sec.triangulations[seq.triangulations[j + 1]], a0));
        }
        if (seq.names.size() == 4) {
            std::vector<Integer> drops;
            for (const auto& e : ledger) drops.push_back(e.drop);
            CHECK(drops == std::vector<Integer>{1, 1, 3});
        }
        if (seq.names[1] == "F1" && seq.names.size() == 3) {
            const auto& last = seq.steps.back();
            CHECK(last.vol0 == 2);
            CHECK(last.baseFan.volume == 2);
            CHECK(fan_name(last.baseFan) == "P1");
            CHECK(ledger.back().drop == 4);
        }
    }
}

TEST_CASE("one-dimensional fan volume is the sum of the ray lengths") {
    PointConfiguration config(pts({{-2}, {0}, {3}}));
    Triangulation t({{0, 1}, {1, 2}});
    auto fan = fan_from_triangulation(config, t, 1);
    CHECK(fan.fan.rank == 1);
    CHECK(vol(fan) == 5);
    CHECK(fan.rayIndices.at(0) == 2);
    CHECK(fan.rayIndices.at(2) == 3);
    CHECK(fan_name(fan.fan) == "P1[2:3]");
    auto walls = wall_circuits(config, fan);
    REQUIRE(walls.size() == 1);
    CHECK(walls[0].circuit.relation == iv({3, -5, 2}));
}

TEST_CASE("alpha0 inside an edge gives a lower-rank fan") {
    auto config = testing::fixture("sixpoint");
    // Triangulation without the origin: the origin sits on the diagonal from (0,-1) to (0,1).
    Triangulation t({{0, 1, 2}, {1, 2, 3}, {0, 1, 4}});
    auto fan = fan_from_triangulation(config, t, 5);
    CHECK_FALSE(fan.alpha0IsVertex);
    CHECK(fan.tau == IndexSet{1, 2});
    CHECK(fan.fan.rank == 1);
    CHECK(fan_name(fan.fan) == "P1");
    auto walls = wall_circuits(config, fan);
    REQUIRE(walls.size() == 1);
    CHECK_THROWS_AS(classify_and_contract(config, fan, walls[0]), PreconditionError);
}

TEST_CASE("configurations outside the nef-Fano class are refused") {
    auto square = testing::fixture("square");
    auto sec = enumerate_regular_triangulations(square);
    CHECK_FALSE(nef_fano_check(square, 0).ok);
    CHECK_THROWS_AS(enumerate_mmp_sequences(square, sec, 0), PreconditionError);
    CHECK_THROWS_AS(enumerate_mmp_sequences(square, sec, 0, {true, 1000000}), ArgumentError);

    auto five = testing::fixture("fivepoint");
    CHECK(nef_fano_check(five, 4).ok);
    PointConfiguration inner(pts({{0, 0}, {2, 0}, {0, 2}, {-2, -2}, {1, 0}}));
    auto check = nef_fano_check(inner, 0);
    CHECK_FALSE(check.ok);
    CHECK(check.problems.size() == 1);
}

TEST_CASE("atlas names are invariant under GL2(Z)") {
    auto make = [](std::vector<LatticePoint> rays) {
        QuotientFan f;
        f.rank = 2;
        for (std::size_t i = 0; i < rays.size(); ++i) f.generators[i] = rays[i];
        for (std::size_t i = 0; i < rays.size(); ++i) f.cones.push_back({i, (i + 1) % rays.size()});
        f.volume = 0;
        return f;
    };
    CHECK(fan_name(make(pts({{1, 0}, {0, 1}, {-1, -1}}))) == "P2");
    CHECK(fan_name(make(pts({{2, 1}, {1, 1}, {-3, -2}}))) == "P2");
    CHECK(fan_name(make(pts({{1, 0}, {0, 1}, {-1, -2}, {0, -1}}))) == "F2");
    CHECK(fan_name(make(pts({{0, -1}, {1, 1}, {-1, 0}, {1, 0}}))) == "F1");
    CHECK(fan_name(make(pts({{1, 2}, {-1, -2}, {0, 1}, {0, -1}}))) == "P1xP1");
    CHECK(fan_name(make(pts({{1, 0}, {0, 1}, {-1, 0}, {-1, -1}, {0, -1}}))) == "Bl1(P1xP1)");
    CHECK(fan_name(make(pts({{2, 1}, {-1, 1}, {-1, -2}}))).rfind("fan(", 0) == 0);
}

TEST_CASE("random nef-Fano configurations: additivity, bijection and decorations") {
    std::mt19937_64 rng(20260415);
    std::size_t done = 0, attempts = 0, totalSteps = 0, divisorial = 0, threeDim = 0;
    while (done < 100 && attempts < 5000) {
        ++attempts;
        std::size_t d = done % 5 == 4 ? 3 : 2;
        std::size_t n = d == 3 ? 6 : 4 + rng() % 5;
        auto config = random_fano(rng, d, n);
        if (!config || config->size() > 8) continue;
        std::size_t a0 = origin_index(*config);
        auto sec = enumerate_regular_triangulations(*config);
        auto result = enumerate_mmp_sequences(*config, sec, a0);
        CHECK(result.sequences.size() == result.monotone.size());
        CHECK(result.wallSearchSequences >= result.sequences.size());
        for (const auto& seq : result.sequences) {
            auto ledger = k0_ledger(seq);
            Integer total = 0;
            for (std::size_t j = 0; j < ledger.size(); ++j) {
                const auto& step = seq.steps[j];
                CHECK(step.vol0 == step.vol0Direct);
                bool unitRays = true;
                for (auto i : erase_one(step.core.core(), a0)) unitRays = unitRays && seq.fans[j].rayIndices.at(i) == 1;
                if (unitRays) CHECK(step.rw == 1);
                CHECK(ledger[j].drop == ledger[j].baseVolume * ledger[j].vol0);
                CHECK(ledger[j].drop == seq.mValues[j]);
                CHECK(ledger[j].rankBefore ==
                      rank_oracle(*config, sec.triangulations[seq.triangulations[j]], a0));
                total += ledger[j].drop;
                ++totalSteps;
            }
            CHECK(total == rank_oracle(*config, sec.triangulations[seq.triangulations.front()], a0));
            CHECK(seq.steps.back().kind == ContractionKind::MoriFiber);
            for (const auto& step : seq.steps) divisorial += step.kind == ContractionKind::Divisorial;
        }
        threeDim += d == 3;
        ++done;
    }
    CHECK(done == 100);
    CHECK(totalSteps > 100);
    CHECK(divisorial > 0);
    CHECK(threeDim >= 20);
    MESSAGE("steps " << totalSteps << ", divisorial " << divisorial << ", attempts " << attempts);
}
