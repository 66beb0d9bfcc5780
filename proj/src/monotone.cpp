#include "lgdeg/monotone.hpp"

#include <cmath>
#include <numbers>
#include <set>

#include "lgdeg/errors.hpp"
#include "lgdeg/lp.hpp"

namespace lgdeg {

SharpenedPencilSpec sharpened_spec(const PointConfiguration& config, IndexSet sharpSet) {
    std::sort(sharpSet.begin(), sharpSet.end());
    sharpSet.erase(std::unique(sharpSet.begin(), sharpSet.end()), sharpSet.end());
    if (sharpSet.empty()) throw ArgumentError("sharp set is empty");
    for (auto i : sharpSet)
        if (i >= config.size()) throw ArgumentError("sharp index out of range");
    return SharpenedPencilSpec{std::move(sharpSet)};
}

SharpenedPencilSpec fano_mirror_spec(const PointConfiguration& config, std::size_t alpha0) {
    if (alpha0 >= config.size()) throw ArgumentError("alpha0 index out of range");
    if (config.point(alpha0) != IntVector(config.dim(), 0)) throw ArgumentError("alpha0 is not the origin");
    if (!config.in_interior(to_rational(config.point(alpha0)))) throw ArgumentError("alpha0 is not interior to Q");
    return SharpenedPencilSpec{{alpha0}};
}

Integer f_value(const SharpenedPencilSpec& spec, const IntVector& phi) {
    Integer s = 0;
    for (auto i : spec.sharpSet) s += phi[i];
    return s;
}

std::vector<Integer> f_values(const SecondaryPolytope& sec, const SharpenedPencilSpec& spec) {
    std::vector<Integer> out;
    for (const auto& phi : sec.gkz) out.push_back(f_value(spec, phi));
    return out;
}

MonotonePathVertex decorate(const SecondaryPolytope& sec, const SharpenedPencilSpec& spec,
                            const std::vector<std::size_t>& sequence) {
    if (sequence.empty()) throw ArgumentError("empty path");
    MonotonePathVertex v;
    v.sequence = sequence;
    for (auto t : sequence) {
        if (t >= sec.triangulations.size()) throw ArgumentError("path vertex out of range");
        v.fValues.push_back(f_value(spec, sec.gkz[t]));
    }
    for (std::size_t j = 1; j < sequence.size(); ++j) {
        auto e = sec.edge_between(sequence[j - 1], sequence[j]);
        if (!e) throw ArgumentError("consecutive path vertices are not joined by an edge");
        v.edges.push_back(*e);
        Decoration dec;
        dec.m = v.fValues[j] - v.fValues[j - 1];
        if (dec.m <= 0) throw ArgumentError("path is not strictly f-increasing");
        dec.e = content(sub(sec.gkz[sequence[j]], sec.gkz[sequence[j - 1]]));
        if (dec.m % dec.e != 0) throw InvariantError("edge lattice length does not divide the f increment");
        dec.d = dec.m / dec.e;
        v.decorations.push_back(dec);
    }
    return v;
}

std::optional<std::pair<RatVector, Rational>> coherence_witness(const SecondaryPolytope& sec,
                                                                const std::vector<Integer>& f,
                                                                const std::vector<std::size_t>& sequence) {
    std::size_t n = sec.gkz.empty() ? 0 : sec.gkz[0].size();
    // theta(w) strictly below the line through the images of u and v.
    auto below = [&](std::size_t w, std::size_t u, std::size_t v) {
        IntVector row(n, 0);
        Integer delta = f[v] - f[u];
        for (std::size_t i = 0; i < n; ++i)
            row[i] = delta * sec.gkz[w][i] - (f[v] - f[w]) * sec.gkz[u][i] - (f[w] - f[u]) * sec.gkz[v][i];
        return primitive(row);
    };
    // An edge [u, v] is the full face maximizing a functional constant on it iff every other
    // neighbour of u is strictly worse, so only the neighbours of u need rows.
    std::set<IntVector> rows;
    for (std::size_t j = 1; j < sequence.size(); ++j) {
        std::size_t u = sequence[j - 1], v = sequence[j];
        for (const auto& e : sec.edges) {
            std::size_t w = e.from == u ? e.to : e.to == u ? e.from : u;
            if (w != u && w != v) rows.insert(below(w, u, v));
        }
    }
    IntMatrix strict(rows.begin(), rows.end());
    SlackResult lp = max_uniform_slack(strict, {}, n);
    if (lp.slack <= 0) return std::nullopt;
    return std::make_pair(lp.x, lp.slack);
}

std::vector<MonotonePathVertex> enumerate_monotone_vertices(const SecondaryPolytope& sec,
                                                            const SharpenedPencilSpec& spec, std::size_t cap) {
    std::vector<Integer> f = f_values(sec, spec);
    if (f.empty()) return {};
    Integer lo = *std::min_element(f.begin(), f.end());
    Integer hi = *std::max_element(f.begin(), f.end());
    std::vector<std::vector<std::size_t>> up(sec.triangulations.size());
    for (const auto& e : sec.edges) {
        if (f[e.from] < f[e.to]) up[e.from].push_back(e.to);
        else if (f[e.to] < f[e.from]) up[e.to].push_back(e.from);
    }
    for (auto& row : up) std::sort(row.begin(), row.end());

    std::vector<MonotonePathVertex> out;
    std::size_t explored = 0;
    std::vector<std::size_t> path;
    auto dfs = [&](auto&& self, std::size_t v) -> void {
        if (++explored > cap) throw ResourceError("monotone path search cap exceeded", out.size());
        path.push_back(v);
        auto witness = coherence_witness(sec, f, path);
        if (witness) {
            if (f[v] == hi) {
                MonotonePathVertex mv = decorate(sec, spec, path);
                mv.coherenceWitness = std::move(witness->first);
                mv.slack = witness->second;
                out.push_back(std::move(mv));
            } else {
                for (auto w : up[v]) self(self, w);
            }
        }
        path.pop_back();
    };
    for (std::size_t v = 0; v < f.size(); ++v)
        if (f[v] == lo) dfs(dfs, v);
    return out;
}

RadarScreen radar_screen(const MonotonePathVertex& v, const std::optional<std::vector<Rational>>& radial) {
    std::size_t r = v.decorations.size();
    std::vector<Rational> g(r + 1);
    g[0] = 0;
    if (radial) {
        if (r > 0 && radial->size() != r - 1) throw ArgumentError("radial function needs one radius per interior annulus boundary");
        for (std::size_t j = 1; j < r; ++j) g[j] = (*radial)[j - 1];
    } else {
        for (std::size_t j = 1; j < r; ++j) g[j] = Rational(j);
    }
    for (std::size_t j = 1; j < r; ++j)
        if (g[j] <= g[j - 1]) throw ArgumentError("radial function must be positive and increasing");

    RadarScreen screen;
    std::size_t label = 0;
    for (std::size_t j = 1; j <= r; ++j) {
        const Decoration& dec = v.decorations[j - 1];
        std::size_t sectors = dec.e.get_ui();
        Rational width(dec.d, dec.m);
        width.canonicalize();
        std::size_t per = dec.d.get_ui();
        Rational radius = j < r ? Rational((g[j - 1] + g[j]) / 2) : Rational(g[j - 1] + 1);
        for (std::size_t k = 0; k < sectors; ++k) {
            Sector s;
            s.annulus = j;
            s.index = k;
            s.startTurns = width * k;
            s.widthTurns = width;
            s.innerRadius = g[j - 1];
            if (j < r) s.outerRadius = g[j];
            s.endpoints = per;
            for (std::size_t p = 0; p < per; ++p) {
                BasisLabel b;
                b.label = ++label;
                b.annulus = j;
                b.sector = k;
                b.position = p;
                b.angleTurns = s.startTurns + width * Rational(2 * p + 1, 2 * per);
                b.angleTurns.canonicalize();
                b.radius = radius;
                screen.basis.push_back(b);
            }
            screen.sectors.push_back(s);
        }
    }
    return screen;
}

RadarPlot radar_plot(const RadarScreen& screen, std::size_t circleSegments) {
    RadarPlot plot;
    const double tau = 2 * std::numbers::pi;
    double outer = 1;
    for (const auto& s : screen.sectors) {
        outer = std::max(outer, s.innerRadius.get_d() + 1);
        if (s.outerRadius) outer = std::max(outer, s.outerRadius->get_d() + 1);
    }
    std::set<double> radii;
    for (const auto& s : screen.sectors)
        if (s.outerRadius) radii.insert(s.outerRadius->get_d());
    for (double rad : radii) {
        std::vector<std::pair<double, double>> circle;
        for (std::size_t i = 0; i <= circleSegments; ++i) {
            double a = tau * static_cast<double>(i) / static_cast<double>(circleSegments);
            circle.emplace_back(rad * std::cos(a), rad * std::sin(a));
        }
        plot.polylines.push_back(std::move(circle));
    }
    for (const auto& s : screen.sectors) {
        double a = tau * s.startTurns.get_d();
        double r0 = s.innerRadius.get_d();
        double r1 = s.outerRadius ? s.outerRadius->get_d() : outer;
        plot.polylines.push_back({{r0 * std::cos(a), r0 * std::sin(a)}, {r1 * std::cos(a), r1 * std::sin(a)}});
    }
    for (const auto& b : screen.basis) {
        double a = tau * b.angleTurns.get_d();
        plot.endpoints.emplace_back(b.radius.get_d() * std::cos(a), b.radius.get_d() * std::sin(a));
    }
    return plot;
}

}  // namespace lgdeg
