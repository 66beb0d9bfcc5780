#include "lgdeg/oracle.hpp"

#include <bitset>
#include <map>

#include "lgdeg/errors.hpp"

namespace lgdeg::oracle {

Integer pyramid_volume(const std::vector<LatticePoint>& points) {
    std::size_t d = points.at(0).size();
    if (d == 1) {
        Integer lo = points[0][0], hi = points[0][0];
        for (const auto& p : points) {
            lo = std::min(lo, p[0]);
            hi = std::max(hi, p[0]);
        }
        return hi - lo;
    }
    const LatticePoint& apex = points[0];
    Integer total = 0;
    for (const auto& f : hull_facets(points)) {
        Integer height = dot(f.normal, apex) + f.offset;
        if (height == 0) continue;
        std::vector<LatticePoint> face;
        for (const auto& p : points)
            if (dot(f.normal, p) + f.offset == 0) face.push_back(p);
        Reembedding r = reembed(face);
        if (r.dim != d - 1) throw InvariantError("facet is not a hyperplane section");
        total += height * pyramid_volume(r.points);
    }
    return total;
}

std::vector<SignedSet> circuits_by_scan(const PointConfiguration& config) {
    std::size_t n = config.size();
    std::size_t d = config.dim();
    std::vector<SignedSet> out;
    if (n > 20) throw ArgumentError("circuit scan limited to 20 points");
    for (std::size_t mask = 1; mask < (std::size_t{1} << n); ++mask) {
        IndexSet s;
        for (std::size_t i = 0; i < n; ++i)
            if (mask >> i & 1) s.push_back(i);
        if (s.size() < 2 || s.size() > d + 2) continue;
        IntMatrix columns(d + 1, IntVector(s.size()));
        for (std::size_t k = 0; k < s.size(); ++k) {
            IntVector l = config.lifted(s[k]);
            for (std::size_t r = 0; r <= d; ++r) columns[r][k] = l[r];
        }
        IntMatrix ker = kernel(columns, s.size());
        if (ker.size() != 1) continue;
        bool full = true;
        for (const auto& x : ker[0])
            if (x == 0) full = false;
        if (!full) continue;
        SignedSet z;
        for (std::size_t k = 0; k < s.size(); ++k) (ker[0][k] > 0 ? z.plus : z.minus).push_back(s[k]);
        out.push_back(std::move(z));
    }
    return out;
}

namespace {

constexpr std::size_t kMaxSimplices = 256;
using Bits = std::bitset<kMaxSimplices>;

struct CliqueSearch {
    std::vector<Integer> volume;
    std::vector<Bits> adjacent;
    Integer target;
    std::vector<Bits> found;

    Integer volume_of(const Bits& b) const {
        Integer v = 0;
        for (std::size_t i = 0; i < volume.size(); ++i)
            if (b[i]) v += volume[i];
        return v;
    }

    // Bron-Kerbosch with pivoting, pruned by the remaining candidate volume.
    void run(Bits r, const Integer& rv, Bits p, Bits x) {
        if (rv == target) {
            found.push_back(r);
            return;
        }
        if (p.none()) return;
        if (rv + volume_of(p) < target) return;
        std::size_t pivot = 0;
        std::size_t best = 0;
        Bits px = p | x;
        for (std::size_t u = 0; u < volume.size(); ++u) {
            if (!px[u]) continue;
            std::size_t c = (p & adjacent[u]).count();
            if (c >= best) {
                best = c;
                pivot = u;
            }
        }
        Bits candidates = p & ~adjacent[pivot];
        for (std::size_t v = 0; v < volume.size(); ++v) {
            if (!candidates[v]) continue;
            Bits r2 = r;
            r2.set(v);
            run(r2, rv + volume[v], p & adjacent[v], x & adjacent[v]);
            p.reset(v);
            x.set(v);
        }
    }
};

bool properly_intersect(const IndexSet& s, const IndexSet& t, const std::vector<SignedSet>& circuits) {
    for (const auto& z : circuits) {
        if (is_subset(z.plus, s) && is_subset(z.minus, t)) return false;
        if (is_subset(z.minus, s) && is_subset(z.plus, t)) return false;
    }
    return true;
}

}  // namespace

std::vector<Triangulation> all_triangulations(const PointConfiguration& config) {
    std::size_t n = config.size();
    std::size_t d = config.dim();
    std::vector<IndexSet> simplices;
    CliqueSearch search;
    std::vector<bool> mask(n, false);
    std::fill(mask.begin(), mask.begin() + static_cast<long>(d + 1), true);
    do {
        IndexSet s;
        for (std::size_t i = 0; i < n; ++i)
            if (mask[i]) s.push_back(i);
        Integer v = normalized_volume(cell_points(config, s));
        if (v == 0) continue;
        simplices.push_back(std::move(s));
        search.volume.push_back(v);
    } while (std::prev_permutation(mask.begin(), mask.end()));
    if (simplices.size() > kMaxSimplices) throw ArgumentError("too many simplices for the brute-force oracle");
    std::vector<SignedSet> circuits = circuits_by_scan(config);
    search.adjacent.assign(simplices.size(), Bits());
    for (std::size_t i = 0; i < simplices.size(); ++i)
        for (std::size_t j = i + 1; j < simplices.size(); ++j)
            if (properly_intersect(simplices[i], simplices[j], circuits)) {
                search.adjacent[i].set(j);
                search.adjacent[j].set(i);
            }
    search.target = pyramid_volume(config.points());
    Bits all;
    for (std::size_t i = 0; i < simplices.size(); ++i) all.set(i);
    search.run(Bits(), 0, all, Bits());
    std::vector<Triangulation> out;
    for (const auto& b : search.found) {
        std::vector<Simplex> cells;
        for (std::size_t i = 0; i < simplices.size(); ++i)
            if (b[i]) cells.push_back(simplices[i]);
        out.emplace_back(std::move(cells));
    }
    std::sort(out.begin(), out.end());
    return out;
}

HullGraph hull_graph(const std::vector<IntVector>& points) {
    HullGraph g;
    if (points.empty()) return g;
    Reembedding r = reembed(points);
    std::size_t k = r.dim;
    if (k == 0) {
        g.vertices.push_back(0);
        return g;
    }
    std::vector<Facet> facets = hull_facets(r.points);
    std::vector<std::vector<std::size_t>> incident(points.size());
    for (std::size_t i = 0; i < points.size(); ++i)
        for (std::size_t f = 0; f < facets.size(); ++f)
            if (dot(facets[f].normal, r.points[i]) + facets[f].offset == 0) incident[i].push_back(f);
    auto normal_rank = [&](const std::vector<std::size_t>& fs) {
        IntMatrix m;
        for (auto f : fs) m.push_back(facets[f].normal);
        return m.empty() ? std::size_t{0} : rank(m);
    };
    for (std::size_t i = 0; i < points.size(); ++i)
        if (normal_rank(incident[i]) == k) g.vertices.push_back(i);
    for (std::size_t a = 0; a < g.vertices.size(); ++a)
        for (std::size_t b = a + 1; b < g.vertices.size(); ++b) {
            std::size_t u = g.vertices[a], v = g.vertices[b];
            std::vector<std::size_t> common;
            std::set_intersection(incident[u].begin(), incident[u].end(), incident[v].begin(), incident[v].end(),
                                  std::back_inserter(common));
            if (normal_rank(common) == k - 1) g.edges.insert({u, v});
        }
    return g;
}

std::vector<PathIntegral> monotone_path_integrals(const std::vector<IntVector>& vertices,
                                                  const std::vector<std::pair<std::size_t, std::size_t>>& edges,
                                                  const std::vector<Integer>& f) {
    std::vector<PathIntegral> out;
    if (vertices.empty()) return out;
    Integer lo = *std::min_element(f.begin(), f.end());
    Integer hi = *std::max_element(f.begin(), f.end());
    std::vector<std::vector<std::size_t>> up(vertices.size());
    for (auto [a, b] : edges) {
        if (f[a] < f[b]) up[a].push_back(b);
        if (f[b] < f[a]) up[b].push_back(a);
    }
    // A constant f projects Sec to a point; the fiber polytope is then Sec itself.
    if (lo == hi) {
        for (std::size_t v = 0; v < vertices.size(); ++v) out.push_back({{v}, vertices[v]});
        return out;
    }
    std::vector<std::size_t> path;
    IntVector zero(vertices[0].size(), 0);
    auto walk = [&](auto&& self, std::size_t v, const IntVector& acc) -> void {
        path.push_back(v);
        if (f[v] == hi) {
            out.push_back({path, acc});
        } else {
            for (auto w : up[v]) self(self, w, add(acc, scale(add(vertices[v], vertices[w]), f[w] - f[v])));
        }
        path.pop_back();
    };
    for (std::size_t v = 0; v < vertices.size(); ++v)
        if (f[v] == lo) walk(walk, v, zero);
    return out;
}

std::vector<std::vector<std::size_t>> fiber_polytope_vertex_paths(
    const std::vector<IntVector>& vertices, const std::vector<std::pair<std::size_t, std::size_t>>& edges,
    const std::vector<Integer>& f) {
    auto integrals = monotone_path_integrals(vertices, edges, f);
    std::vector<IntVector> points;
    for (const auto& p : integrals) points.push_back(p.integral);
    // Distinct points only; a vertex reached by two paths would be a tie.
    std::map<IntVector, std::size_t> first;
    std::vector<IntVector> unique;
    std::vector<std::size_t> owner;
    for (std::size_t i = 0; i < points.size(); ++i)
        if (first.emplace(points[i], unique.size()).second) {
            unique.push_back(points[i]);
            owner.push_back(i);
        }
    std::vector<std::vector<std::size_t>> out;
    for (auto v : hull_graph(unique).vertices) out.push_back(integrals[owner[v]].path);
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace lgdeg::oracle
