#pragma once

#include <string>
#include <vector>

#include "lgdeg/io.hpp"
#include "lgdeg/lattice.hpp"

namespace testing {

inline lgdeg::PointConfiguration fixture(const std::string& name) {
    return lgdeg::load_configuration(std::string(LGDEG_FIXTURE_DIR) + "/" + name + ".json").config;
}

inline lgdeg::IntVector iv(std::initializer_list<long> xs) {
    lgdeg::IntVector v;
    for (long x : xs) v.emplace_back(x);
    return v;
}

inline std::vector<lgdeg::LatticePoint> pts(std::initializer_list<std::initializer_list<long>> rows) {
    std::vector<lgdeg::LatticePoint> out;
    for (auto r : rows) out.push_back(iv(r));
    return out;
}

}  // namespace testing

#include <algorithm>
#include <random>
#include <set>

namespace testing {

// Distinct points in [-r, r]^d that affinely span, with n points.
inline std::vector<lgdeg::LatticePoint> random_spanning_points(std::mt19937_64& rng, std::size_t d,
                                                               std::size_t n, long r) {
    std::uniform_int_distribution<long> coord(-r, r);
    while (true) {
        std::set<lgdeg::LatticePoint> seen;
        while (seen.size() < n) {
            lgdeg::LatticePoint p;
            for (std::size_t k = 0; k < d; ++k) p.emplace_back(coord(rng));
            seen.insert(p);
        }
        std::vector<lgdeg::LatticePoint> out(seen.begin(), seen.end());
        std::shuffle(out.begin(), out.end(), rng);
        lgdeg::IntMatrix rows;
        for (const auto& p : out) {
            auto q = p;
            q.emplace_back(1);
            rows.push_back(q);
        }
        if (lgdeg::rank(rows) == d + 1) return out;
    }
}

}  // namespace testing
