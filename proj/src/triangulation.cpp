#include "lgdeg/triangulation.hpp"

#include <algorithm>
#include <iterator>

namespace lgdeg {

Triangulation::Triangulation(std::vector<Simplex> cells) : cells_(std::move(cells)) {
    for (auto& c : cells_) std::sort(c.begin(), c.end());
    std::sort(cells_.begin(), cells_.end());
    cells_.erase(std::unique(cells_.begin(), cells_.end()), cells_.end());
}

bool Triangulation::has_cell(const Simplex& s) const {
    return std::binary_search(cells_.begin(), cells_.end(), s);
}

IndexSet Triangulation::used_points() const {
    IndexSet out;
    for (const auto& c : cells_) out.insert(out.end(), c.begin(), c.end());
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

std::string Triangulation::encode() const {
    std::string s = "[";
    for (std::size_t i = 0; i < cells_.size(); ++i) {
        if (i) s += ",";
        s += "(";
        for (std::size_t j = 0; j < cells_[i].size(); ++j) {
            if (j) s += ",";
            s += std::to_string(cells_[i][j]);
        }
        s += ")";
    }
    return s + "]";
}

Subdivision make_subdivision(std::vector<Cell> cells, std::size_t dim) {
    Subdivision s;
    for (auto& c : cells) std::sort(c.marking.begin(), c.marking.end());
    std::sort(cells.begin(), cells.end());
    s.cells = std::move(cells);
    s.isTriangulation = std::all_of(s.cells.begin(), s.cells.end(),
                                    [&](const Cell& c) { return c.marking.size() == dim + 1; });
    return s;
}

Subdivision to_subdivision(const Triangulation& t) {
    Subdivision s;
    for (const auto& c : t.cells()) s.cells.push_back(Cell{c});
    s.isTriangulation = true;
    return s;
}

Triangulation to_triangulation(const Subdivision& s) {
    std::vector<Simplex> cells;
    for (const auto& c : s.cells) cells.push_back(c.marking);
    return Triangulation(std::move(cells));
}

std::vector<LatticePoint> cell_points(const PointConfiguration& config, const IndexSet& cell) {
    std::vector<LatticePoint> pts;
    pts.reserve(cell.size());
    for (auto i : cell) pts.push_back(config.point(i));
    return pts;
}

Integer cell_volume(const PointConfiguration& config, const Simplex& cell) {
    return normalized_volume(cell_points(config, cell));
}

IndexSet set_union(const IndexSet& a, const IndexSet& b) {
    IndexSet out;
    std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

IndexSet set_minus(const IndexSet& a, const IndexSet& b) {
    IndexSet out;
    std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

IndexSet set_intersection(const IndexSet& a, const IndexSet& b) {
    IndexSet out;
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

bool is_subset(const IndexSet& a, const IndexSet& b) {
    return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

IndexSet erase_one(const IndexSet& a, std::size_t x) {
    IndexSet out;
    out.reserve(a.size());
    for (auto i : a)
        if (i != x) out.push_back(i);
    return out;
}

}  // namespace lgdeg
