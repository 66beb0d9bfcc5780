#include "lgdeg/lattice.hpp"

#include <algorithm>
#include <cstdint>
#include <set>

#include "lgdeg/errors.hpp"

namespace lgdeg {

namespace {

class Bits {
public:
    explicit Bits(std::size_t n = 0) : words_((n + 63) / 64, 0) {}
    void set(std::size_t i) { words_[i / 64] |= (std::uint64_t{1} << (i % 64)); }
    bool test(std::size_t i) const { return (words_[i / 64] >> (i % 64)) & 1u; }
    Bits operator&(const Bits& o) const {
        Bits r;
        r.words_.resize(words_.size());
        for (std::size_t i = 0; i < words_.size(); ++i) r.words_[i] = words_[i] & o.words_[i];
        return r;
    }
    bool subset_of(const Bits& o) const {
        for (std::size_t i = 0; i < words_.size(); ++i)
            if (words_[i] & ~o.words_[i]) return false;
        return true;
    }
    std::size_t count() const {
        std::size_t c = 0;
        for (auto w : words_) c += static_cast<std::size_t>(__builtin_popcountll(w));
        return c;
    }

private:
    std::vector<std::uint64_t> words_;
};

struct Ray {
    IntVector v;
    Bits tight;
};

IntVector integral_direction(const RatVector& x) {
    Integer den = 1;
    for (const auto& q : x) den = lcm(den, q.get_den());
    IntVector out(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) out[i] = x[i].get_num() * (den / x[i].get_den());
    return primitive(out);
}

}  // namespace

std::vector<Facet> hull_facets(const std::vector<IntVector>& points) {
    if (points.empty()) throw ArgumentError("hull of an empty point set");
    std::size_t k = points[0].size();
    std::size_t dims = k + 1;
    std::size_t n = points.size();
    IntMatrix g(n);
    for (std::size_t i = 0; i < n; ++i) {
        g[i] = points[i];
        g[i].push_back(1);
    }

    // Greedy basis of homogenized points.
    std::vector<std::size_t> basis;
    IntMatrix chosen;
    for (std::size_t i = 0; i < n && basis.size() < dims; ++i) {
        chosen.push_back(g[i]);
        if (rank(chosen) == chosen.size()) {
            basis.push_back(i);
        } else {
            chosen.pop_back();
        }
    }
    if (basis.size() < dims) throw DimensionError("points do not affinely span their ambient space");

    RatMatrix b = to_rational(chosen);
    // Columns of b^{-1}: solve b x = e_j, i.e. x^T b^T = e_j^T.
    RatMatrix bt(dims, RatVector(dims));
    for (std::size_t i = 0; i < dims; ++i)
        for (std::size_t j = 0; j < dims; ++j) bt[i][j] = b[j][i];
    std::vector<Ray> rays;
    for (std::size_t j = 0; j < dims; ++j) {
        RatVector e(dims, 0);
        e[j] = 1;
        auto x = solve_left(bt, e);
        Ray r{integral_direction(*x), Bits(n)};
        for (std::size_t i = 0; i < dims; ++i)
            if (i != j) r.tight.set(basis[i]);
        rays.push_back(std::move(r));
    }

    std::vector<bool> in_basis(n, false);
    for (auto i : basis) in_basis[i] = true;
    for (std::size_t c = 0; c < n; ++c) {
        if (in_basis[c]) continue;
        std::vector<Integer> s(rays.size());
        std::vector<std::size_t> pos, neg;
        for (std::size_t r = 0; r < rays.size(); ++r) {
            s[r] = dot(g[c], rays[r].v);
            if (s[r] > 0) pos.push_back(r);
            else if (s[r] < 0) neg.push_back(r);
        }
        if (neg.empty()) {
            for (std::size_t r = 0; r < rays.size(); ++r)
                if (s[r] == 0) rays[r].tight.set(c);
            continue;
        }
        std::vector<Ray> next;
        for (std::size_t a : pos) {
            for (std::size_t bb : neg) {
                Bits common = rays[a].tight & rays[bb].tight;
                if (common.count() + 2 < dims) continue;
                bool adjacent = true;
                for (std::size_t o = 0; o < rays.size() && adjacent; ++o) {
                    if (o == a || o == bb) continue;
                    if (common.subset_of(rays[o].tight)) adjacent = false;
                }
                if (!adjacent) continue;
                IntVector v(dims);
                for (std::size_t i = 0; i < dims; ++i) v[i] = s[a] * rays[bb].v[i] - s[bb] * rays[a].v[i];
                Ray nr{primitive(v), common};
                nr.tight.set(c);
                next.push_back(std::move(nr));
            }
        }
        std::vector<Ray> kept;
        for (std::size_t r = 0; r < rays.size(); ++r) {
            if (s[r] < 0) continue;
            if (s[r] == 0) rays[r].tight.set(c);
            kept.push_back(std::move(rays[r]));
        }
        for (auto& r : next) kept.push_back(std::move(r));
        rays = std::move(kept);
    }

    std::vector<Facet> facets;
    for (const auto& r : rays) {
        IntVector normal(r.v.begin(), r.v.begin() + static_cast<std::ptrdiff_t>(k));
        Integer g0 = content(normal);
        Facet f;
        f.normal.resize(k);
        for (std::size_t i = 0; i < k; ++i) f.normal[i] = normal[i] / g0;
        f.offset = r.v[k] / g0;
        facets.push_back(std::move(f));
    }
    std::sort(facets.begin(), facets.end(), [](const Facet& x, const Facet& y) {
        if (x.normal != y.normal) return x.normal < y.normal;
        return x.offset < y.offset;
    });
    facets.erase(std::unique(facets.begin(), facets.end()), facets.end());
    return facets;
}

PointConfiguration::PointConfiguration(std::vector<LatticePoint> points) : points_(std::move(points)) {
    if (points_.empty()) throw ArgumentError("empty point configuration");
    dim_ = points_[0].size();
    if (dim_ == 0) throw ArgumentError("points must have dimension at least 1");
    for (const auto& p : points_)
        if (p.size() != dim_) throw ArgumentError("points have mixed dimensions");
    std::set<LatticePoint> seen(points_.begin(), points_.end());
    if (seen.size() != points_.size()) throw ArgumentError("points are not pairwise distinct");
    IntMatrix lifted_rows;
    for (std::size_t i = 0; i < points_.size(); ++i) lifted_rows.push_back(lifted(i));
    if (rank(lifted_rows) != dim_ + 1)
        throw DimensionError("points do not affinely span R^" + std::to_string(dim_));
    facets_ = hull_facets(points_);
    for (std::size_t i = 0; i < points_.size(); ++i)
        if (minimal_face(to_rational(points_[i])) == IndexSet{i}) vertices_.push_back(i);
}

IntVector PointConfiguration::lifted(std::size_t i) const {
    IntVector v = points_[i];
    v.push_back(1);
    return v;
}

bool PointConfiguration::is_vertex(std::size_t i) const {
    return std::binary_search(vertices_.begin(), vertices_.end(), i);
}

namespace {

Rational facet_value(const Facet& f, const RatVector& x) {
    Rational s = f.offset;
    for (std::size_t i = 0; i < x.size(); ++i) s += f.normal[i] * x[i];
    return s;
}

}  // namespace

IndexSet PointConfiguration::minimal_face(const RatVector& x) const {
    std::vector<const Facet*> tight;
    for (const auto& f : facets_)
        if (facet_value(f, x) == 0) tight.push_back(&f);
    IndexSet out;
    for (std::size_t i = 0; i < points_.size(); ++i) {
        bool on = true;
        for (const auto* f : tight)
            if (dot(f->normal, points_[i]) + f->offset != 0) {
                on = false;
                break;
            }
        if (on) out.push_back(i);
    }
    return out;
}

bool PointConfiguration::contains(const RatVector& x) const {
    for (const auto& f : facets_)
        if (facet_value(f, x) < 0) return false;
    return true;
}

bool PointConfiguration::in_interior(const RatVector& x) const {
    for (const auto& f : facets_)
        if (facet_value(f, x) <= 0) return false;
    return true;
}

bool PointConfiguration::on_boundary(std::size_t i) const {
    for (const auto& f : facets_)
        if (dot(f.normal, points_[i]) + f.offset == 0) return true;
    return false;
}

PointConfiguration convex_hull(const std::vector<LatticePoint>& points) {
    return PointConfiguration(points);
}

IntMatrix affine_relations(const std::vector<LatticePoint>& points) {
    if (points.empty()) return {};
    std::size_t d = points[0].size();
    IntMatrix m(d + 1, IntVector(points.size()));
    for (std::size_t j = 0; j < points.size(); ++j) {
        for (std::size_t i = 0; i < d; ++i) m[i][j] = points[j][i];
        m[d][j] = 1;
    }
    return kernel(m, points.size());
}

AffineRelationLattice affine_relations(const PointConfiguration& config) {
    AffineRelationLattice out;
    out.basis = affine_relations(config.points());
    out.rank = out.basis.size();
    return out;
}

Integer normalized_volume(const std::vector<LatticePoint>& simplex) {
    if (simplex.empty()) throw ArgumentError("normalized_volume needs d+1 points");
    std::size_t d = simplex[0].size();
    if (simplex.size() != d + 1) throw ArgumentError("normalized_volume needs exactly d+1 points");
    IntMatrix edges;
    for (std::size_t i = 1; i < simplex.size(); ++i) edges.push_back(sub(simplex[i], simplex[0]));
    return abs(det(edges));
}

Integer lattice_index(const std::vector<IntVector>& generators, std::size_t ambient) {
    if (generators.empty()) return 1;
    SnfResult s = snf(generators, ambient);
    Integer idx = 1;
    for (const auto& x : s.diagonal) idx *= x;
    return idx;
}

std::optional<Integer> lattice_index_in_ambient(const std::vector<IntVector>& generators,
                                                std::size_t ambient) {
    if (ambient == 0) return Integer(1);
    if (generators.empty()) return std::nullopt;
    SnfResult s = snf(generators, ambient);
    if (s.diagonal.size() < ambient) return std::nullopt;
    Integer idx = 1;
    for (const auto& x : s.diagonal) idx *= x;
    return idx;
}

Quotient quotient_by(const std::vector<IntVector>& vectors, std::size_t ambient) {
    Quotient q;
    q.ambient = ambient;
    if (vectors.empty()) {
        q.right = identity(ambient);
        return q;
    }
    SnfResult s = snf(vectors, ambient);
    q.subRank = s.diagonal.size();
    q.right = s.right;
    for (const auto& x : s.diagonal)
        if (x > 1) q.torsion.push_back(x);
    return q;
}

IntVector Quotient::project(const IntVector& x) const {
    IntVector full = row_times(x, right);
    return IntVector(full.begin() + static_cast<std::ptrdiff_t>(subRank), full.end());
}

IntVector Quotient::restrict(const IntVector& x) const {
    IntVector full = row_times(x, right);
    full.resize(subRank);
    return full;
}

Reembedding reembed(const std::vector<LatticePoint>& points) {
    Reembedding out;
    if (points.empty()) return out;
    std::vector<IntVector> diffs;
    for (const auto& p : points) diffs.push_back(sub(p, points[0]));
    Quotient q = quotient_by(diffs, points[0].size());
    out.dim = q.subRank;
    for (const auto& d : diffs) out.points.push_back(q.restrict(d));
    return out;
}

RatVector barycentric(const std::vector<LatticePoint>& simplex, const RatVector& x) {
    RatMatrix b(simplex.size());
    for (std::size_t i = 0; i < simplex.size(); ++i) {
        b[i] = to_rational(simplex[i]);
        b[i].push_back(1);
    }
    RatVector rhs = x;
    rhs.push_back(1);
    auto sol = solve_left(b, rhs);
    if (!sol) throw ArgumentError("barycentric coordinates of a degenerate simplex");
    return *sol;
}

}  // namespace lgdeg
