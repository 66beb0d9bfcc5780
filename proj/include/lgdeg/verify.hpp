#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "lgdeg/lattice.hpp"

// Cross-module invariant suite, checked against the slow reference computations.
namespace lgdeg::verify {

struct InvariantReport {
    std::string module;
    std::string name;
    std::size_t runs = 0;
    std::size_t failures = 0;
    std::string firstFailure;
    bool passed() const { return failures == 0; }
};

class Suite {
public:
    // Runs one instance of an invariant; `body` returns an empty string on success and a
    // diagnostic otherwise. Library errors thrown by `body` count as failures.
    void check(const std::string& module, const std::string& name, const std::function<std::string()>& body);
    std::vector<InvariantReport> results() const;
    bool all_passed() const;

private:
    std::vector<std::pair<std::string, std::string>> order_;
    std::map<std::pair<std::string, std::string>, InvariantReport> reports_;
};

struct ConfigOptions {
    std::optional<std::size_t> alpha0;  // defaults to the interior origin when present
    std::optional<IndexSet> sharp;      // defaults to {alpha0}, else {0}
    std::size_t cap = 200000;
    std::size_t oracleLimit = 7;        // brute-force oracles only run when |A| <= this
    std::uint64_t seed = 1;
};

// Every per-configuration invariant of the lattice, subdivision, circuit, monotone-path
// and MMP layers.
void verify_configuration(Suite& suite, const PointConfiguration& config, const ConfigOptions& options);

struct RandomCounts {
    std::size_t configurations = 40;  // |A| <= 7, d = 1..3
    std::size_t nefFano = 100;        // d <= 3, |A| <= 8
    std::size_t circuits = 200;
    std::size_t matrices = 100;
};
void verify_random(Suite& suite, std::uint64_t seed, const RandomCounts& counts);

// n distinct points in [-r, r]^d whose affine span is R^d.
std::vector<LatticePoint> random_spanning_points(std::mt19937_64& rng, std::size_t d, std::size_t n, long r);
IntMatrix random_unimodular(std::mt19937_64& rng, std::size_t d);
// The origin plus the boundary points of a random polytope with the origin in its interior.
std::optional<PointConfiguration> random_nef_fano(std::mt19937_64& rng, std::size_t d, std::size_t n,
                                                  std::size_t maxPoints);

}  // namespace lgdeg::verify
