#pragma once

#include <string>
#include <vector>

#include "lgdeg/lattice.hpp"

namespace lgdeg {

using Simplex = IndexSet;

// Canonical encoding: sorted list of sorted vertex-index tuples.
class Triangulation {
public:
    Triangulation() = default;
    explicit Triangulation(std::vector<Simplex> cells);

    const std::vector<Simplex>& cells() const { return cells_; }
    std::size_t size() const { return cells_.size(); }
    bool has_cell(const Simplex& s) const;
    IndexSet used_points() const;
    std::string encode() const;

    bool operator==(const Triangulation& o) const { return cells_ == o.cells_; }
    bool operator!=(const Triangulation& o) const { return cells_ != o.cells_; }
    bool operator<(const Triangulation& o) const { return cells_ < o.cells_; }

private:
    std::vector<Simplex> cells_;
};

struct Cell {
    IndexSet marking;
    bool operator==(const Cell& o) const { return marking == o.marking; }
    bool operator<(const Cell& o) const { return marking < o.marking; }
};

struct Subdivision {
    std::vector<Cell> cells;  // sorted by marking
    bool isTriangulation = false;
    bool operator==(const Subdivision& o) const { return cells == o.cells; }
};

Subdivision make_subdivision(std::vector<Cell> cells, std::size_t dim);
Subdivision to_subdivision(const Triangulation& t);
Triangulation to_triangulation(const Subdivision& s);

std::vector<LatticePoint> cell_points(const PointConfiguration& config, const IndexSet& cell);
Integer cell_volume(const PointConfiguration& config, const Simplex& cell);

IndexSet set_union(const IndexSet& a, const IndexSet& b);
IndexSet set_minus(const IndexSet& a, const IndexSet& b);
IndexSet set_intersection(const IndexSet& a, const IndexSet& b);
bool is_subset(const IndexSet& a, const IndexSet& b);
IndexSet erase_one(const IndexSet& a, std::size_t x);

}  // namespace lgdeg
