#pragma once

#include <set>
#include <utility>
#include <vector>

#include "lgdeg/triangulation.hpp"

// Slow, independent reference computations used to cross-check the library.
namespace lgdeg::oracle {

// Normalized volume of conv(points) by pyramid decomposition over hull facets.
Integer pyramid_volume(const std::vector<LatticePoint>& points);

// Minimal affinely dependent subsets with their relations, by exhaustive scan.
struct SignedSet {
    IndexSet plus;
    IndexSet minus;
};
std::vector<SignedSet> circuits_by_scan(const PointConfiguration& config);

// Every triangulation of (Q, A) with vertex-marked cells, regular or not.
std::vector<Triangulation> all_triangulations(const PointConfiguration& config);

// Vertices and edges of conv(points) from its facet description.
struct HullGraph {
    std::vector<std::size_t> vertices;
    std::set<std::pair<std::size_t, std::size_t>> edges;  // (smaller, larger) point index
};
HullGraph hull_graph(const std::vector<IntVector>& points);

// Every strictly f-increasing edge path from an f-minimal to an f-maximal vertex of
// the graph, with the doubled path integral sum_j (f_j - f_{j-1}) (x_{j-1} + x_j).
// For constant f every vertex is a trivial path whose integral is the vertex.
struct PathIntegral {
    std::vector<std::size_t> path;
    IntVector integral;
};
std::vector<PathIntegral> monotone_path_integrals(const std::vector<IntVector>& vertices,
                                                  const std::vector<std::pair<std::size_t, std::size_t>>& edges,
                                                  const std::vector<Integer>& f);

// Paths whose integrals are vertices of the fiber polytope conv{integrals}.
std::vector<std::vector<std::size_t>> fiber_polytope_vertex_paths(
    const std::vector<IntVector>& vertices, const std::vector<std::pair<std::size_t, std::size_t>>& edges,
    const std::vector<Integer>& f);

}  // namespace lgdeg::oracle
