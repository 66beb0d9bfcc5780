#pragma once

#include <optional>
#include <vector>

#include "lgdeg/circuits.hpp"
#include "lgdeg/triangulation.hpp"

namespace lgdeg {

struct HeightFunction {
    RatVector heights;
};

struct RegularityCertificate {
    HeightFunction height;
    Rational slack;
};

Subdivision induced_subdivision(const PointConfiguration& config, const HeightFunction& eta);

// Global LP over all cells; certificate is checked against induced_subdivision.
std::optional<RegularityCertificate> is_regular(const PointConfiguration& config, const Subdivision& s);
// Local folding LP over interior walls and unused points; certificate is checked
// against induced_subdivision.
std::optional<RegularityCertificate> is_regular(const PointConfiguration& config, const Triangulation& t);
// Local folding LP without the round-trip check.
std::optional<RegularityCertificate> folding_certificate(const PointConfiguration& config,
                                                         const Triangulation& t);

// Default order is lexicographic on coordinates.
std::vector<std::size_t> lexicographic_order(const PointConfiguration& config);
Triangulation placing_triangulation(const PointConfiguration& config, const std::vector<std::size_t>& order);
Triangulation placing_triangulation(const PointConfiguration& config);

IntVector gkz_vertex(const PointConfiguration& config, const Triangulation& t);
// Normalized volume of Q.
Integer hull_volume(const PointConfiguration& config);

struct SecondaryEdge {
    std::size_t from = 0;
    std::size_t to = 0;
    Circuit circuit;  // oriented so that `from` is positively supported
    std::size_t circuitIndex = 0;  // position in find_circuits(config)
    std::vector<IndexSet> links;
};

struct SecondaryPolytope {
    std::vector<Triangulation> triangulations;
    std::vector<IntVector> gkz;
    std::vector<RegularityCertificate> certificates;
    std::vector<SecondaryEdge> edges;
    std::vector<Circuit> circuits;
    std::size_t dim = 0;

    std::optional<std::size_t> index_of(const Triangulation& t) const;
    std::optional<std::size_t> edge_between(std::size_t a, std::size_t b) const;
};

SecondaryPolytope enumerate_regular_triangulations(const PointConfiguration& config, std::size_t cap = 200000);

// Coordinates of phi_T - phi_0 in the HNF basis of the affine relation lattice.
std::vector<IntVector> gale_coordinates(const PointConfiguration& config, const SecondaryPolytope& sec);
std::vector<IntVector> secondary_fan_rays(const PointConfiguration& config, const SecondaryPolytope& sec);

struct LafforgueVertex {
    std::size_t triangulation;
    std::size_t point;
    IntVector vector;
};
std::vector<LafforgueVertex> lafforgue_vertices(const PointConfiguration& config, const SecondaryPolytope& sec);

}  // namespace lgdeg
