#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "lgdeg/arith.hpp"

namespace lgdeg {

using LatticePoint = IntVector;
using IndexSet = std::vector<std::size_t>;  // always sorted ascending

// Inward facet inequality normal . x >= -offset, normal primitive.
struct Facet {
    IntVector normal;
    Integer offset;
    bool operator==(const Facet& o) const { return normal == o.normal && offset == o.offset; }
};

// Facets of conv(points); the points must affinely span Z^k with k >= 1.
// Sorted lexicographically by (normal, offset).
std::vector<Facet> hull_facets(const std::vector<IntVector>& points);

class PointConfiguration {
public:
    explicit PointConfiguration(std::vector<LatticePoint> points);

    std::size_t dim() const { return dim_; }
    std::size_t size() const { return points_.size(); }
    const LatticePoint& point(std::size_t i) const { return points_[i]; }
    const std::vector<LatticePoint>& points() const { return points_; }
    const IndexSet& vertex_set() const { return vertices_; }
    const std::vector<Facet>& facets() const { return facets_; }
    bool is_vertex(std::size_t i) const;

    // Indices of the points of A on the smallest face of Q containing x.
    IndexSet minimal_face(const RatVector& x) const;
    bool contains(const RatVector& x) const;
    bool in_interior(const RatVector& x) const;
    bool on_boundary(std::size_t i) const;

    // Homogenized point (alpha, 1).
    IntVector lifted(std::size_t i) const;

private:
    std::size_t dim_ = 0;
    std::vector<LatticePoint> points_;
    std::vector<Facet> facets_;
    IndexSet vertices_;
};

PointConfiguration convex_hull(const std::vector<LatticePoint>& points);

struct AffineRelationLattice {
    IntMatrix basis;  // HNF rows in Z^A
    std::size_t rank = 0;
};
AffineRelationLattice affine_relations(const PointConfiguration& config);
// Relations of an arbitrary point list (no spanning requirement).
IntMatrix affine_relations(const std::vector<LatticePoint>& points);

// |det| of the edge-vector matrix of d+1 points in Z^d.
Integer normalized_volume(const std::vector<LatticePoint>& simplex);

// Index of the span of the generators inside its saturation (1 for an empty list).
Integer lattice_index(const std::vector<IntVector>& generators, std::size_t ambient);
// Index inside Z^ambient; nullopt when the span has lower rank.
std::optional<Integer> lattice_index_in_ambient(const std::vector<IntVector>& generators,
                                                std::size_t ambient);

// Coordinates of the points in their saturated affine span, relative to the first point.
struct Reembedding {
    std::size_t dim = 0;
    std::vector<LatticePoint> points;
};
Reembedding reembed(const std::vector<LatticePoint>& points);

// Saturated sublattice Lin_R(vectors) ∩ Z^n and the quotient map onto Z^n / that lattice.
struct Quotient {
    std::size_t ambient = 0;
    std::size_t subRank = 0;
    IntMatrix right;    // unimodular; x * right gives coordinates adapted to the sublattice
    IntVector torsion;  // invariant factors > 1 of span inside its saturation
    IntVector project(const IntVector& x) const;   // last ambient - subRank coordinates
    IntVector restrict(const IntVector& x) const;  // first subRank coordinates (x in the span)
    std::size_t rank() const { return ambient - subRank; }
};
Quotient quotient_by(const std::vector<IntVector>& vectors, std::size_t ambient);

// Affine coordinates of x with respect to the affinely independent points in simplex
// (d+1 points spanning R^d).
RatVector barycentric(const std::vector<LatticePoint>& simplex, const RatVector& x);

}  // namespace lgdeg
