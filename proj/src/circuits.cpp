#include "lgdeg/circuits.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "lgdeg/errors.hpp"

namespace lgdeg {

Integer Circuit::coefficient(std::size_t index) const {
    auto it = std::lower_bound(support.begin(), support.end(), index);
    if (it == support.end() || *it != index) return 0;
    return relation[static_cast<std::size_t>(it - support.begin())];
}

Circuit Circuit::negated() const {
    Circuit c = *this;
    for (auto& x : c.relation) x = -x;
    std::swap(c.plus, c.minus);
    return c;
}

Circuit make_circuit(const std::vector<LatticePoint>& points, IndexSet support, IntVector relation) {
    if (support.size() != relation.size()) throw ArgumentError("relation length differs from support");
    std::vector<std::pair<std::size_t, Integer>> entries;
    for (std::size_t i = 0; i < support.size(); ++i) entries.emplace_back(support[i], relation[i]);
    std::sort(entries.begin(), entries.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    Circuit c;
    for (auto& [i, a] : entries) {
        c.support.push_back(i);
        c.relation.push_back(a);
    }
    c.relation = primitive(c.relation);
    std::vector<IntVector> lifted;
    for (std::size_t k = 0; k < c.support.size(); ++k) {
        std::size_t i = c.support[k];
        if (c.relation[k] > 0) c.plus.push_back(i);
        else if (c.relation[k] < 0) c.minus.push_back(i);
        else c.zero.push_back(i);
        IntVector v = points[i];
        v.push_back(1);
        lifted.push_back(std::move(v));
    }
    std::size_t ambient = points.empty() ? 0 : points[0].size() + 1;
    c.torsionOrder = lattice_index(lifted, ambient);
    return c;
}

Circuit circuit_on(const std::vector<LatticePoint>& points, IndexSet support) {
    std::sort(support.begin(), support.end());
    std::vector<LatticePoint> pts;
    for (auto i : support) pts.push_back(points[i]);
    IntMatrix rel = affine_relations(pts);
    if (rel.size() != 1) throw ArgumentError("point set does not carry a unique affine relation");
    return make_circuit(points, support, rel[0]);
}

Circuit orient_standalone(const Circuit& c) {
    if (c.plus.size() > c.minus.size()) return c.negated();
    if (c.plus.size() == c.minus.size()) {
        for (const auto& a : c.relation) {
            if (a == 0) continue;
            return a < 0 ? c.negated() : c;
        }
    }
    return c;
}

Circuit extended_circuit(const std::vector<LatticePoint>& points) {
    IndexSet support(points.size());
    for (std::size_t i = 0; i < points.size(); ++i) support[i] = i;
    return orient_standalone(circuit_on(points, support));
}

std::vector<Circuit> find_circuits(const PointConfiguration& config) {
    std::vector<Circuit> out;
    std::size_t n = config.size();
    std::size_t maxSize = std::min(n, config.dim() + 2);
    for (std::size_t k = 3; k <= maxSize; ++k) {
        std::vector<bool> mask(n, false);
        std::fill(mask.begin(), mask.begin() + static_cast<std::ptrdiff_t>(k), true);
        do {
            IndexSet subset;
            std::vector<LatticePoint> pts;
            for (std::size_t i = 0; i < n; ++i)
                if (mask[i]) {
                    subset.push_back(i);
                    pts.push_back(config.point(i));
                }
            IntMatrix rel = affine_relations(pts);
            if (rel.size() != 1) continue;
            bool full = std::none_of(rel[0].begin(), rel[0].end(), [](const Integer& x) { return x == 0; });
            if (!full) continue;
            out.push_back(orient_standalone(make_circuit(config.points(), subset, rel[0])));
        } while (std::prev_permutation(mask.begin(), mask.end()));
    }
    return out;
}

Signature signature(const IntVector& relation) {
    Signature s;
    for (const auto& a : relation) {
        if (a > 0) ++s.p;
        else if (a < 0) ++s.q;
        else ++s.r;
    }
    return s;
}

Signature signature(const Circuit& c) { return signature(c.relation); }

std::pair<Triangulation, Triangulation> circuit_triangulations(const Circuit& c) {
    std::vector<Simplex> plus, minus;
    for (auto i : c.plus) plus.push_back(erase_one(c.support, i));
    for (auto i : c.minus) minus.push_back(erase_one(c.support, i));
    return {Triangulation(plus), Triangulation(minus)};
}

namespace {

Integer ipow(const Integer& base, const Integer& exp) {
    Integer out;
    mpz_pow_ui(out.get_mpz_t(), base.get_mpz_t(), exp.get_ui());
    return out;
}

}  // namespace

CircuitScalars circuit_scalars(const Circuit& c) {
    CircuitScalars s;
    Integer plusSum = 0;
    s.dPlus = 0;
    s.dMinus = 0;
    s.cNum = 1;
    s.cDen = 1;
    for (auto i : c.plus) {
        Integer a = c.coefficient(i);
        plusSum += a;
        s.dPlus = gcd(s.dPlus, a);
        s.cNum *= ipow(a, a);
    }
    for (auto j : c.minus) {
        Integer a = abs(c.coefficient(j));
        s.dMinus = gcd(s.dMinus, a);
        s.cDen *= ipow(a, a);
    }
    Integer g = gcd(s.cNum, s.cDen);
    s.cNum /= g;
    s.cDen /= g;
    s.vA = c.torsionOrder * plusSum;
    for (auto i : c.plus) {
        for (auto j : c.minus) {
            Integer ai = c.coefficient(i);
            Integer aj = abs(c.coefficient(j));
            s.twist.push_back({i, j, Rational(-gcd(ai, aj), lcm(ai, aj))});
        }
    }
    for (auto& t : s.twist) t.turns.canonicalize();
    s.torsionWarning = c.torsionOrder > 1;
    return s;
}

Inertia congruence_inertia(const RatMatrix& m) {
    RatMatrix a = m;
    std::size_t n = a.size();
    for (std::size_t k = 0; k < n; ++k) {
        if (a[k][k] == 0) {
            std::size_t j = k + 1;
            while (j < n && a[j][j] == 0) ++j;
            if (j < n) {
                std::swap(a[k], a[j]);
                for (auto& row : a) std::swap(row[k], row[j]);
            } else {
                j = k + 1;
                while (j < n && a[k][j] == 0) ++j;
                if (j == n) continue;
                for (std::size_t t = 0; t < n; ++t) a[k][t] += a[j][t];
                for (std::size_t t = 0; t < n; ++t) a[t][k] += a[t][j];
            }
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            if (a[i][k] == 0) continue;
            Rational f = a[i][k] / a[k][k];
            for (std::size_t j = k + 1; j < n; ++j) a[i][j] -= f * a[k][j];
        }
        for (std::size_t i = k + 1; i < n; ++i) a[i][k] = a[k][i] = 0;
    }
    Inertia out;
    for (std::size_t k = 0; k < n; ++k) {
        if (a[k][k] > 0) ++out.positive;
        else if (a[k][k] < 0) ++out.negative;
        else ++out.zero;
    }
    return out;
}

std::optional<Inertia> sylvester_inertia(const RatMatrix& m) {
    std::size_t n = m.size();
    RatMatrix a = m;
    // Gaussian elimination without pivoting: pivot k equals D_k / D_{k-1}.
    Inertia out;
    int prevSign = 1;
    Rational minor = 1;
    for (std::size_t k = 0; k < n; ++k) {
        if (a[k][k] == 0) return std::nullopt;
        minor *= a[k][k];
        int s = sgn(minor);
        if (s != prevSign) ++out.negative;
        else ++out.positive;
        prevSign = s;
        for (std::size_t i = k + 1; i < n; ++i) {
            Rational f = a[i][k] / a[k][k];
            for (std::size_t j = k; j < n; ++j) a[i][j] -= f * a[k][j];
        }
    }
    return out;
}

MorseData morse_data(const Circuit& c) {
    if (c.plus.empty() || c.minus.empty()) throw ArgumentError("morse_data needs both signs");
    MorseData md;
    md.order = c.plus;
    md.order.insert(md.order.end(), c.zero.begin(), c.zero.end());
    md.order.insert(md.order.end(), c.minus.begin(), c.minus.end());
    md.corner = c.zero.size();
    CircuitScalars s = circuit_scalars(c);
    Rational cA(s.cNum, s.cDen);
    Integer a0 = c.coefficient(c.plus.front());
    Integer aLast = c.coefficient(c.minus.back());
    std::vector<Integer> diag;
    for (std::size_t k = 1; k < c.plus.size(); ++k) diag.push_back(c.coefficient(c.plus[k]));
    for (std::size_t k = 0; k + 1 < c.minus.size(); ++k) diag.push_back(c.coefficient(c.minus[k]));
    std::size_t n = diag.size();
    Rational factor = -cA * Rational(a0 * a0);
    Rational shared = Rational(1) / Rational(aLast);
    md.hessian.assign(n, RatVector(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            Rational v = shared;
            if (i == j) v += Rational(1) / Rational(diag[i]);
            md.hessian[i][j] = factor * v;
        }
    md.inertia = congruence_inertia(md.hessian);
    md.sylvester = sylvester_inertia(md.hessian);
    return md;
}

SupportWitness is_supported(const Triangulation& t, const Circuit& c, int sign) {
    SupportWitness w;
    const IndexSet& side = sign > 0 ? c.plus : c.minus;
    IndexSet core = c.core();
    if (side.empty()) return w;
    std::vector<Simplex> cells;
    for (auto z : side) cells.push_back(erase_one(core, z));
    for (const auto& cell : cells) {
        bool face = std::any_of(t.cells().begin(), t.cells().end(),
                                [&](const Simplex& s) { return is_subset(cell, s); });
        if (!face) return w;
    }
    std::set<IndexSet> links;
    for (const auto& s : t.cells()) {
        for (const auto& cell : cells) {
            if (!is_subset(cell, s)) continue;
            IndexSet j = set_minus(s, cell);
            if (!set_intersection(j, core).empty()) return w;
            for (const auto& other : cells)
                if (!t.has_cell(set_union(j, other))) return w;
            links.insert(j);
        }
    }
    if (links.empty()) return w;
    w.supported = true;
    w.links.assign(links.begin(), links.end());
    return w;
}

namespace {

Triangulation replace_cells(const Triangulation& t, const Circuit& c, const std::vector<IndexSet>& links,
                            int sign) {
    const IndexSet& from = sign > 0 ? c.plus : c.minus;
    const IndexSet& to = sign > 0 ? c.minus : c.plus;
    IndexSet core = c.core();
    std::set<Simplex> removed;
    for (const auto& j : links)
        for (auto z : from) removed.insert(set_union(j, erase_one(core, z)));
    std::vector<Simplex> cells;
    for (const auto& s : t.cells())
        if (!removed.count(s)) cells.push_back(s);
    for (const auto& j : links)
        for (auto z : to) cells.push_back(set_union(j, erase_one(core, z)));
    return Triangulation(std::move(cells));
}

}  // namespace

Triangulation modify(const Triangulation& t, const Circuit& c) {
    SupportWitness plus = is_supported(t, c, 1);
    if (plus.supported) return replace_cells(t, c, plus.links, 1);
    SupportWitness minus = is_supported(t, c, -1);
    if (minus.supported) return replace_cells(t, c, minus.links, -1);
    throw PreconditionError("triangulation is not supported on the circuit");
}

std::vector<Flip> flips(const PointConfiguration& config, const Triangulation& t) {
    std::map<IndexSet, std::vector<std::size_t>> facets;
    for (std::size_t k = 0; k < t.size(); ++k) {
        const auto& s = t.cells()[k];
        for (auto v : s) facets[erase_one(s, v)].push_back(k);
    }
    std::map<std::pair<IndexSet, IntVector>, Circuit> candidates;
    auto add = [&](Circuit c) {
        auto key = std::make_pair(c.support, c.relation);
        candidates.emplace(std::move(key), std::move(c));
    };
    for (const auto& [facet, owners] : facets) {
        if (owners.size() != 2) continue;
        const auto& s1 = t.cells()[owners[0]];
        const auto& s2 = t.cells()[owners[1]];
        IndexSet u = set_union(s1, s2);
        std::vector<LatticePoint> pts = cell_points(config, u);
        IntMatrix rel = affine_relations(pts);
        if (rel.size() != 1) throw InvariantError("adjacent cells do not form an extended circuit");
        IndexSet core;
        IntVector coeffs;
        for (std::size_t i = 0; i < u.size(); ++i)
            if (rel[0][i] != 0) {
                core.push_back(u[i]);
                coeffs.push_back(rel[0][i]);
            }
        Circuit c = make_circuit(config.points(), core, coeffs);
        std::size_t apex = set_minus(s1, s2).front();
        if (c.coefficient(apex) < 0) c = c.negated();
        add(std::move(c));
    }
    IndexSet used = t.used_points();
    for (std::size_t p = 0; p < config.size(); ++p) {
        if (std::binary_search(used.begin(), used.end(), p)) continue;
        RatVector x = to_rational(config.point(p));
        for (const auto& s : t.cells()) {
            RatVector lambda = barycentric(cell_points(config, s), x);
            if (std::any_of(lambda.begin(), lambda.end(), [](const Rational& l) { return l < 0; })) continue;
            Integer den = 1;
            for (const auto& l : lambda) den = lcm(den, l.get_den());
            IndexSet core{p};
            IntVector coeffs{den};
            for (std::size_t i = 0; i < s.size(); ++i) {
                if (lambda[i] == 0) continue;
                core.push_back(s[i]);
                coeffs.push_back(-(lambda[i].get_num() * (den / lambda[i].get_den())));
            }
            add(make_circuit(config.points(), core, coeffs));
            break;
        }
    }
    std::vector<Flip> out;
    for (auto& [key, c] : candidates) {
        SupportWitness w = is_supported(t, c, 1);
        if (!w.supported) continue;
        Flip f;
        f.result = replace_cells(t, c, w.links, 1);
        f.circuit = c;
        f.links = std::move(w.links);
        out.push_back(std::move(f));
    }
    return out;
}

}  // namespace lgdeg
