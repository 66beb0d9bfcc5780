#include "lgdeg/subdivision.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <numeric>
#include <set>

#include "lgdeg/errors.hpp"
#include "lgdeg/lp.hpp"

namespace lgdeg {

namespace {

// Integer row L * (e_p - sum_i lambda_i e_{basis_i}) with L clearing denominators.
IntVector affine_defect_row(std::size_t n, std::size_t p, const IndexSet& basis, const RatVector& lambda) {
    Integer den = 1;
    for (const auto& l : lambda) den = lcm(den, l.get_den());
    IntVector row(n, 0);
    row[p] += den;
    for (std::size_t i = 0; i < basis.size(); ++i)
        row[basis[i]] -= lambda[i].get_num() * (den / lambda[i].get_den());
    return row;
}

IntVector negate(IntVector v) {
    for (auto& x : v) x = -x;
    return v;
}

IndexSet spanning_subset(const PointConfiguration& config, const IndexSet& marking) {
    IndexSet basis;
    IntMatrix rows;
    for (auto i : marking) {
        rows.push_back(config.lifted(i));
        if (rank(rows) == rows.size()) {
            basis.push_back(i);
            if (basis.size() == config.dim() + 1) break;
        } else {
            rows.pop_back();
        }
    }
    return basis;
}

void check_triangulation_shape(const PointConfiguration& config, const Triangulation& t) {
    Integer total = 0;
    for (const auto& c : t.cells()) {
        if (c.size() != config.dim() + 1) throw ArgumentError("triangulation cell has the wrong size");
        for (auto i : c)
            if (i >= config.size()) throw ArgumentError("cell index out of range");
        Integer v = cell_volume(config, c);
        if (v == 0) throw ArgumentError("degenerate triangulation cell");
        total += v;
    }
    if (total != hull_volume(config)) throw ArgumentError("cells do not cover Q exactly");
}

}  // namespace

Subdivision induced_subdivision(const PointConfiguration& config, const HeightFunction& eta) {
    std::size_t n = config.size();
    std::size_t d = config.dim();
    if (eta.heights.size() != n) throw ArgumentError("height function length differs from |A|");
    Integer den = 1;
    for (const auto& h : eta.heights) den = lcm(den, h.get_den());
    std::vector<IntVector> lifted(n);
    IntMatrix homog;
    for (std::size_t i = 0; i < n; ++i) {
        lifted[i] = config.point(i);
        lifted[i].push_back(eta.heights[i].get_num() * (den / eta.heights[i].get_den()));
        IntVector h = lifted[i];
        h.push_back(1);
        homog.push_back(std::move(h));
    }
    if (rank(homog) < d + 2) {
        IndexSet all(n);
        std::iota(all.begin(), all.end(), 0);
        return make_subdivision({Cell{all}}, d);
    }
    std::vector<Cell> cells;
    for (const auto& f : hull_facets(lifted)) {
        if (f.normal[d] <= 0) continue;
        Cell c;
        for (std::size_t i = 0; i < n; ++i)
            if (dot(f.normal, lifted[i]) + f.offset == 0) c.marking.push_back(i);
        cells.push_back(std::move(c));
    }
    return make_subdivision(std::move(cells), d);
}

std::optional<RegularityCertificate> is_regular(const PointConfiguration& config, const Subdivision& s) {
    std::size_t n = config.size();
    std::size_t d = config.dim();
    Integer total = 0;
    std::vector<IndexSet> bases;
    for (const auto& c : s.cells) {
        for (auto i : c.marking)
            if (i >= n) throw ArgumentError("cell index out of range");
        IndexSet basis = spanning_subset(config, c.marking);
        if (basis.size() != d + 1) throw ArgumentError("subdivision cell is not full-dimensional");
        bases.push_back(basis);
        total += hull_volume(PointConfiguration(cell_points(config, c.marking)));
    }
    if (total != hull_volume(config)) throw ArgumentError("cells do not cover Q exactly");

    IntMatrix strict, eq;
    for (std::size_t k = 0; k < s.cells.size(); ++k) {
        const auto& marking = s.cells[k].marking;
        std::vector<LatticePoint> basisPts = cell_points(config, bases[k]);
        for (std::size_t p = 0; p < n; ++p) {
            bool marked = std::binary_search(marking.begin(), marking.end(), p);
            if (marked && std::binary_search(bases[k].begin(), bases[k].end(), p)) continue;
            RatVector lambda = barycentric(basisPts, to_rational(config.point(p)));
            IntVector row = affine_defect_row(n, p, bases[k], lambda);
            if (marked) eq.push_back(std::move(row));
            else strict.push_back(negate(std::move(row)));
        }
    }
    SlackResult lp = max_uniform_slack(strict, eq, n);
    if (lp.slack <= 0) return std::nullopt;
    RegularityCertificate cert{HeightFunction{lp.x}, lp.slack};
    Subdivision check = induced_subdivision(config, cert.height);
    Subdivision canon = make_subdivision(s.cells, d);
    if (!(check == canon)) throw InvariantError("regularity certificate does not reproduce the subdivision");
    return cert;
}

std::optional<RegularityCertificate> folding_certificate(const PointConfiguration& config,
                                                         const Triangulation& t) {
    std::size_t n = config.size();
    std::map<IndexSet, std::vector<std::size_t>> facets;
    for (std::size_t k = 0; k < t.size(); ++k) {
        const auto& s = t.cells()[k];
        for (auto v : s) facets[erase_one(s, v)].push_back(k);
    }
    IntMatrix strict;
    for (const auto& [facet, owners] : facets) {
        if (owners.size() > 2) throw ArgumentError("facet shared by more than two cells");
        if (owners.size() != 2) continue;
        const auto& s1 = t.cells()[owners[0]];
        const auto& s2 = t.cells()[owners[1]];
        std::size_t apex = set_minus(s2, s1).front();
        RatVector lambda = barycentric(cell_points(config, s1), to_rational(config.point(apex)));
        strict.push_back(negate(affine_defect_row(n, apex, s1, lambda)));
    }
    IndexSet used = t.used_points();
    for (std::size_t p = 0; p < n; ++p) {
        if (std::binary_search(used.begin(), used.end(), p)) continue;
        bool placed = false;
        for (const auto& s : t.cells()) {
            RatVector lambda = barycentric(cell_points(config, s), to_rational(config.point(p)));
            if (std::any_of(lambda.begin(), lambda.end(), [](const Rational& l) { return l < 0; })) continue;
            strict.push_back(negate(affine_defect_row(n, p, s, lambda)));
            placed = true;
            break;
        }
        if (!placed) throw ArgumentError("triangulation does not cover an unused point");
    }
    SlackResult lp = max_uniform_slack(strict, {}, n);
    if (lp.slack <= 0) return std::nullopt;
    return RegularityCertificate{HeightFunction{lp.x}, lp.slack};
}

std::optional<RegularityCertificate> is_regular(const PointConfiguration& config, const Triangulation& t) {
    check_triangulation_shape(config, t);
    auto cert = folding_certificate(config, t);
    if (!cert) return std::nullopt;
    Subdivision check = induced_subdivision(config, cert->height);
    if (!(check == to_subdivision(t))) throw ArgumentError("cells do not form a triangulation of Q");
    return cert;
}

std::vector<std::size_t> lexicographic_order(const PointConfiguration& config) {
    std::vector<std::size_t> order(config.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return config.point(a) < config.point(b); });
    return order;
}

namespace {

Integer orientation(const PointConfiguration& config, const IndexSet& facet, const LatticePoint& x) {
    const auto& base = config.point(facet[0]);
    IntMatrix m;
    for (std::size_t i = 1; i < facet.size(); ++i) m.push_back(sub(config.point(facet[i]), base));
    m.push_back(sub(x, base));
    return det(m);
}

}  // namespace

Triangulation placing_triangulation(const PointConfiguration& config, const std::vector<std::size_t>& order) {
    std::size_t n = config.size();
    std::size_t d = config.dim();
    {
        std::vector<std::size_t> check = order;
        std::sort(check.begin(), check.end());
        for (std::size_t i = 0; i < n; ++i)
            if (check.size() != n || check[i] != i) throw ArgumentError("order is not a permutation of A");
    }
    IndexSet initial;
    IntMatrix rows;
    for (auto i : order) {
        rows.push_back(config.lifted(i));
        if (rank(rows) == rows.size()) initial.push_back(i);
        else rows.pop_back();
        if (initial.size() == d + 1) break;
    }
    std::sort(initial.begin(), initial.end());
    std::vector<Simplex> cells{initial};
    for (auto p : order) {
        if (std::binary_search(initial.begin(), initial.end(), p)) continue;
        std::map<IndexSet, std::vector<std::size_t>> owners;
        for (std::size_t k = 0; k < cells.size(); ++k)
            for (auto v : cells[k]) owners[erase_one(cells[k], v)].push_back(k);
        std::vector<Simplex> added;
        for (const auto& [facet, own] : owners) {
            if (own.size() != 1) continue;
            std::size_t opposite = set_minus(cells[own[0]], facet).front();
            Integer sp = orientation(config, facet, config.point(p));
            Integer so = orientation(config, facet, config.point(opposite));
            if (sgn(sp) * sgn(so) < 0) {
                Simplex s = facet;
                s.push_back(p);
                std::sort(s.begin(), s.end());
                added.push_back(std::move(s));
            }
        }
        cells.insert(cells.end(), added.begin(), added.end());
    }
    return Triangulation(std::move(cells));
}

Triangulation placing_triangulation(const PointConfiguration& config) {
    return placing_triangulation(config, lexicographic_order(config));
}

IntVector gkz_vertex(const PointConfiguration& config, const Triangulation& t) {
    IntVector phi(config.size(), 0);
    for (const auto& c : t.cells()) {
        Integer v = cell_volume(config, c);
        for (auto i : c) phi[i] += v;
    }
    return phi;
}

Integer hull_volume(const PointConfiguration& config) {
    Integer total = 0;
    Triangulation t = placing_triangulation(config);
    for (const auto& c : t.cells()) total += cell_volume(config, c);
    return total;
}

std::optional<std::size_t> SecondaryPolytope::index_of(const Triangulation& t) const {
    for (std::size_t i = 0; i < triangulations.size(); ++i)
        if (triangulations[i] == t) return i;
    return std::nullopt;
}

std::optional<std::size_t> SecondaryPolytope::edge_between(std::size_t a, std::size_t b) const {
    for (std::size_t e = 0; e < edges.size(); ++e)
        if ((edges[e].from == a && edges[e].to == b) || (edges[e].from == b && edges[e].to == a)) return e;
    return std::nullopt;
}

SecondaryPolytope enumerate_regular_triangulations(const PointConfiguration& config, std::size_t cap) {
    if (cap == 0) throw ArgumentError("cap must be positive");
    SecondaryPolytope sec;
    sec.dim = config.size() - config.dim() - 1;
    sec.circuits = find_circuits(config);
    std::map<IndexSet, std::size_t> circuitIndex;
    for (std::size_t i = 0; i < sec.circuits.size(); ++i) circuitIndex[sec.circuits[i].support] = i;

    std::map<Triangulation, std::size_t> index;
    std::set<Triangulation> nonregular;
    std::set<std::pair<std::size_t, std::size_t>> seenEdges;
    std::deque<std::size_t> queue;

    auto add_vertex = [&](const Triangulation& t, RegularityCertificate cert) {
        if (sec.triangulations.size() >= cap)
            throw ResourceError("regular triangulation cap exceeded", sec.triangulations.size());
        std::size_t id = sec.triangulations.size();
        sec.triangulations.push_back(t);
        sec.gkz.push_back(gkz_vertex(config, t));
        sec.certificates.push_back(std::move(cert));
        index.emplace(t, id);
        queue.push_back(id);
        return id;
    };

    Triangulation seed = placing_triangulation(config);
    auto seedCert = folding_certificate(config, seed);
    if (!seedCert) throw InvariantError("placing triangulation failed the regularity LP");
    add_vertex(seed, *seedCert);

    while (!queue.empty()) {
        std::size_t i = queue.front();
        queue.pop_front();
        Triangulation current = sec.triangulations[i];
        for (auto& f : flips(config, current)) {
            std::size_t j;
            auto it = index.find(f.result);
            if (it != index.end()) {
                j = it->second;
            } else {
                if (nonregular.count(f.result)) continue;
                auto cert = folding_certificate(config, f.result);
                if (!cert) {
                    nonregular.insert(f.result);
                    continue;
                }
                j = add_vertex(f.result, *cert);
            }
            auto key = std::minmax(i, j);
            if (!seenEdges.insert(key).second) continue;
            SecondaryEdge e;
            e.from = i;
            e.to = j;
            auto ci = circuitIndex.find(f.circuit.core());
            if (ci == circuitIndex.end()) throw InvariantError("flip circuit missing from the circuit list");
            e.circuitIndex = ci->second;
            e.circuit = std::move(f.circuit);
            e.links = std::move(f.links);
            sec.edges.push_back(std::move(e));
        }
    }
    return sec;
}

std::vector<IntVector> gale_coordinates(const PointConfiguration& config, const SecondaryPolytope& sec) {
    AffineRelationLattice rel = affine_relations(config);
    std::vector<std::size_t> pivots;
    for (const auto& row : rel.basis) {
        std::size_t p = 0;
        while (row[p] == 0) ++p;
        pivots.push_back(p);
    }
    std::vector<IntVector> out;
    for (const auto& phi : sec.gkz) {
        IntVector delta = sub(phi, sec.gkz.front());
        IntVector c(rel.rank, 0);
        for (std::size_t i = 0; i < rel.rank; ++i) {
            Integer v = delta[pivots[i]];
            for (std::size_t l = 0; l < i; ++l) v -= c[l] * rel.basis[l][pivots[i]];
            if (v % rel.basis[i][pivots[i]] != 0) throw InvariantError("GKZ difference is not an integral relation");
            c[i] = v / rel.basis[i][pivots[i]];
        }
        if (row_times(c, rel.basis) != delta && rel.rank > 0)
            throw InvariantError("GKZ difference leaves the relation lattice");
        out.push_back(std::move(c));
    }
    return out;
}

std::vector<IntVector> secondary_fan_rays(const PointConfiguration& config, const SecondaryPolytope& sec) {
    if (sec.dim == 0) return {};
    std::vector<IntVector> coords = gale_coordinates(config, sec);
    std::sort(coords.begin(), coords.end());
    coords.erase(std::unique(coords.begin(), coords.end()), coords.end());
    std::vector<IntVector> rays;
    for (const auto& f : hull_facets(coords)) rays.push_back(f.normal);
    std::sort(rays.begin(), rays.end());
    return rays;
}

std::vector<LafforgueVertex> lafforgue_vertices(const PointConfiguration& config, const SecondaryPolytope& sec) {
    (void)config;
    std::vector<LafforgueVertex> out;
    for (std::size_t t = 0; t < sec.triangulations.size(); ++t) {
        for (auto a : sec.triangulations[t].used_points()) {
            IntVector v = sec.gkz[t];
            v[a] += 1;
            out.push_back({t, a, std::move(v)});
        }
    }
    return out;
}

}  // namespace lgdeg
