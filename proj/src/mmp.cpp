#include "lgdeg/mmp.hpp"

#include <algorithm>
#include <functional>
#include <set>

#include "lgdeg/errors.hpp"

namespace lgdeg {

namespace {

Integer abs_det(const std::vector<IntVector>& rows) {
    if (rows.empty()) return 1;
    return abs(det(rows));
}

void finish_volume(QuotientFan& fan) {
    std::sort(fan.cones.begin(), fan.cones.end());
    fan.cones.erase(std::unique(fan.cones.begin(), fan.cones.end()), fan.cones.end());
    fan.volume = 0;
    for (const auto& cone : fan.cones) {
        std::vector<IntVector> rows;
        for (auto i : cone) rows.push_back(fan.generators.at(i));
        if (rows.size() != fan.rank) throw InvariantError("cone size does not match the fan rank");
        fan.volume += abs_det(rows);
    }
}

// Fan with the given cones whose generators are images of alpha - base in Z^d / q.
QuotientFan quotient_fan(const PointConfiguration& config, const Quotient& q, const IntVector& base,
                         std::vector<IndexSet> cones) {
    QuotientFan fan;
    fan.rank = q.rank();
    fan.cones = std::move(cones);
    for (const auto& cone : fan.cones)
        for (auto i : cone) {
            IntVector g = q.project(sub(config.point(i), base));
            if (content(g) == 0) throw InvariantError("a fan generator projects to zero");
            fan.generators.emplace(i, std::move(g));
        }
    finish_volume(fan);
    return fan;
}

// The nonzero part of a wall relation as a circuit of A, with the alpha0 entry negative.
Circuit core_circuit(const PointConfiguration& config, const WallCircuit& w, std::size_t alpha0) {
    IndexSet idx;
    IntVector coeffs;
    for (std::size_t k = 0; k < w.circuit.support.size(); ++k)
        if (w.circuit.relation[k] != 0) {
            idx.push_back(w.circuit.support[k]);
            coeffs.push_back(w.circuit.relation[k]);
        }
    Circuit c = make_circuit(config.points(), idx, coeffs);
    if (affine_relations(cell_points(config, c.support)).size() != 1)
        throw InvariantError("wall core is not a circuit of A");
    // The A-level relation must agree with the quotient relation.
    IntVector sum(config.dim() + 1, 0);
    for (std::size_t k = 0; k < c.support.size(); ++k)
        sum = add(sum, scale(config.lifted(c.support[k]), c.relation[k]));
    if (content(sum) != 0) throw InvariantError("wall relation does not lift to A");
    if (c.coefficient(alpha0) >= 0) throw InvariantError("core circuit has a nonnegative alpha0 entry");
    return c;
}

}  // namespace

StackyFanData fan_from_triangulation(const PointConfiguration& config, const Triangulation& t, std::size_t alpha0) {
    if (alpha0 >= config.size()) throw ArgumentError("alpha0 index out of range");
    StackyFanData out;
    out.source = t;
    out.alpha0 = alpha0;
    const IntVector& a0 = config.point(alpha0);
    RatVector x = to_rational(a0);
    bool found = false;
    for (const auto& s : t.cells()) {
        RatVector lambda = barycentric(cell_points(config, s), x);
        if (std::any_of(lambda.begin(), lambda.end(), [](const Rational& l) { return l < 0; })) continue;
        for (std::size_t k = 0; k < s.size(); ++k)
            if (lambda[k] > 0) out.tau.push_back(s[k]);
        found = true;
        break;
    }
    if (!found) throw ArgumentError("alpha0 is not covered by the triangulation");
    out.alpha0IsVertex = out.tau == IndexSet{alpha0};
    std::vector<IntVector> span;
    for (auto i : out.tau)
        if (i != alpha0) span.push_back(sub(config.point(i), a0));
    Quotient q = quotient_by(span, config.dim());
    std::vector<IndexSet> cones;
    for (const auto& s : t.cells())
        if (is_subset(out.tau, s)) cones.push_back(set_minus(s, out.tau));
    out.fan = quotient_fan(config, q, a0, std::move(cones));
    for (const auto& [i, g] : out.fan.generators) out.rayIndices.emplace(i, content(g));
    return out;
}

Integer vol(const StackyFanData& fan) { return fan.fan.volume; }

std::vector<WallCircuit> wall_circuits(const PointConfiguration& config, const StackyFanData& fan) {
    std::vector<WallCircuit> out;
    const QuotientFan& qf = fan.fan;
    if (qf.rank == 0) return out;
    std::map<IndexSet, std::vector<std::size_t>> walls;
    for (std::size_t k = 0; k < qf.cones.size(); ++k)
        for (auto v : qf.cones[k]) walls[erase_one(qf.cones[k], v)].push_back(k);
    for (const auto& [wall, owners] : walls) {
        if (owners.size() != 2) continue;
        WallCircuit w;
        w.wall = wall;
        w.flankA = set_minus(qf.cones[owners[0]], wall).front();
        w.flankB = set_minus(qf.cones[owners[1]], wall).front();
        IndexSet support = set_union(wall, {std::min(w.flankA, w.flankB), std::max(w.flankA, w.flankB)});
        support = set_union(support, {fan.alpha0});
        std::vector<IntVector> projected;
        for (auto i : support)
            projected.push_back(i == fan.alpha0 ? IntVector(qf.rank, 0) : qf.generators.at(i));
        IntMatrix rel = affine_relations(projected);
        if (rel.size() != 1) throw InvariantError("wall points do not carry a unique relation");
        Circuit c;
        c.support = support;
        c.relation = primitive(rel[0]);
        std::vector<IntVector> lifted;
        for (auto p : projected) {
            p.push_back(1);
            lifted.push_back(std::move(p));
        }
        c.torsionOrder = lattice_index(lifted, qf.rank + 1);
        Integer a0 = c.relation[static_cast<std::size_t>(
            std::lower_bound(support.begin(), support.end(), fan.alpha0) - support.begin())];
        if (a0 > 0) {
            for (auto& x : c.relation) x = -x;
        }
        for (std::size_t k = 0; k < support.size(); ++k) {
            if (c.relation[k] > 0) c.plus.push_back(support[k]);
            else if (c.relation[k] < 0) c.minus.push_back(support[k]);
            else c.zero.push_back(support[k]);
        }
        w.flat = a0 == 0;
        if (w.flat) c = orient_standalone(c);
        w.circuit = c;
        w.signature = signature(c);
        if (fan.alpha0IsVertex && !w.flat) {
            Circuit core = core_circuit(config, w, fan.alpha0);
            SupportWitness sw = is_supported(fan.source, core, 1);
            if (sw.supported) w.supp = sw.links;
        }
        out.push_back(std::move(w));
    }
    return out;
}

std::string to_string(ContractionKind k) {
    switch (k) {
        case ContractionKind::MoriFiber: return "MoriFiber";
        case ContractionKind::Divisorial: return "Divisorial";
        case ContractionKind::Flip: return "Flip";
    }
    return "Flip";
}

std::pair<ContractionStep, StackyFanData> classify_and_contract(const PointConfiguration& config,
                                                                const StackyFanData& fan, const WallCircuit& w) {
    if (!fan.alpha0IsVertex) throw PreconditionError("alpha0 is not a vertex of the triangulation");
    if (w.flat) throw PreconditionError("the wall circuit has a vanishing alpha0 entry");
    const std::size_t alpha0 = fan.alpha0;
    ContractionStep step;
    step.wall = w;
    step.core = core_circuit(config, w, alpha0);
    SupportWitness sw = is_supported(fan.source, step.core, 1);
    if (!sw.supported) throw PreconditionError("the triangulation is not supported on the wall circuit");
    step.links = sw.links;
    step.result = modify(fan.source, step.core);

    std::size_t q = step.core.minus.size();
    step.kind = q == 1 ? ContractionKind::MoriFiber : q == 2 ? ContractionKind::Divisorial : ContractionKind::Flip;
    if (step.core.plus.size() < 2) throw InvariantError("wall circuit has a single positive entry");

    const IntVector& a0 = config.point(alpha0);
    const std::size_t d = config.dim();
    IndexSet rest = erase_one(step.core.core(), alpha0);
    std::vector<IntVector> coreVecs;
    for (auto i : rest) coreVecs.push_back(sub(config.point(i), a0));
    Quotient qCore = quotient_by(coreVecs, d);

    step.baseFan = quotient_fan(config, qCore, a0, step.links);

    IndexSet minusRest = erase_one(step.core.minus, alpha0);
    std::vector<IntVector> minusVecs;
    for (auto i : minusRest) minusVecs.push_back(qCore.restrict(sub(config.point(i), a0)));
    Quotient qMinusCore = quotient_by(minusVecs, qCore.subRank);
    QuotientFan fiber;
    fiber.rank = qMinusCore.rank();
    for (auto z : step.core.plus) fiber.cones.push_back(erase_one(step.core.plus, z));
    for (auto i : step.core.plus) {
        IntVector g = qMinusCore.project(qCore.restrict(sub(config.point(i), a0)));
        if (content(g) == 0) throw InvariantError("a fiber generator projects to zero");
        fiber.generators.emplace(i, std::move(g));
    }
    finish_volume(fiber);
    step.fiberFan = std::move(fiber);

    std::vector<IntVector> minusAmbient;
    for (auto i : minusRest) minusAmbient.push_back(sub(config.point(i), a0));
    Quotient qMinus = quotient_by(minusAmbient, d);
    std::vector<IndexSet> exceptional;
    for (const auto& s : fan.source.cells())
        if (is_subset(step.core.minus, s)) exceptional.push_back(set_minus(s, step.core.minus));
    step.exceptionalFan = quotient_fan(config, qMinus, a0, std::move(exceptional));

    std::vector<IntVector> lifted;
    for (auto i : step.core.support) lifted.push_back(config.lifted(i));
    step.iw = lattice_index(lifted, d + 1);
    step.vol0 = step.iw * abs(step.core.coefficient(alpha0));
    step.vol0Direct = normalized_volume(reembed(cell_points(config, rest)).points);
    step.rw = 0;
    for (auto i : rest) step.rw = gcd(step.rw, fan.rayIndices.at(i) * step.core.coefficient(i));

    StackyFanData next = fan_from_triangulation(config, step.result, alpha0);
    return {std::move(step), std::move(next)};
}

std::vector<LedgerEntry> k0_ledger(const MMPSequence& seq) {
    if (seq.fans.size() != seq.steps.size() + 1) throw ArgumentError("sequence needs one more fan than steps");
    auto rank_of = [](const StackyFanData& f) { return f.alpha0IsVertex ? f.fan.volume : Integer(0); };
    std::vector<LedgerEntry> out;
    for (std::size_t j = 0; j < seq.steps.size(); ++j) {
        const auto& step = seq.steps[j];
        LedgerEntry e;
        e.rankBefore = rank_of(seq.fans[j]);
        e.rankAfter = rank_of(seq.fans[j + 1]);
        e.drop = e.rankBefore - e.rankAfter;
        e.baseVolume = step.baseFan.volume;
        e.vol0 = step.vol0;
        e.fanVolumeBefore = seq.fans[j].fan.volume;
        e.fanVolumeAfter = seq.fans[j + 1].fan.volume;
        if (e.drop <= 0) throw InvariantError("rank does not drop along the sequence");
        if (e.drop != e.baseVolume * e.vol0)
            throw InvariantError("rank drop differs from base volume times vol0 at step " + std::to_string(j));
        if (step.vol0 != step.vol0Direct) throw InvariantError("vol0 disagrees with the direct volume");
        if (j < seq.mValues.size() && e.drop != seq.mValues[j])
            throw InvariantError("rank drop differs from the path decoration at step " + std::to_string(j));
        bool last = j + 1 == seq.steps.size();
        if ((step.kind == ContractionKind::MoriFiber) != last)
            throw InvariantError("Mori fiber contraction must be exactly the final step");
        if (last && e.baseVolume != e.fanVolumeAfter)
            throw InvariantError("base of the Mori fiber space differs from the final fan");
        out.push_back(std::move(e));
    }
    return out;
}

FanoCheck nef_fano_check(const PointConfiguration& config, std::size_t alpha0) {
    FanoCheck out;
    if (alpha0 >= config.size()) {
        out.ok = false;
        out.problems.push_back("alpha0 index out of range");
        return out;
    }
    if (config.point(alpha0) != IntVector(config.dim(), 0)) out.problems.push_back("alpha0 is not the origin");
    if (!config.in_interior(to_rational(config.point(alpha0)))) out.problems.push_back("alpha0 is not interior to Q");
    for (std::size_t i = 0; i < config.size(); ++i)
        if (i != alpha0 && !config.on_boundary(i))
            out.problems.push_back("point " + std::to_string(i) + " is interior to Q");
    out.ok = out.problems.empty();
    return out;
}

namespace {

std::optional<WallCircuit> wall_for(const std::vector<WallCircuit>& walls, const Circuit& c,
                                    const PointConfiguration& config, std::size_t alpha0) {
    for (const auto& w : walls) {
        if (w.flat) continue;
        Circuit core = core_circuit(config, w, alpha0);
        if (core == c) return w;
    }
    return std::nullopt;
}

}  // namespace

std::vector<std::vector<std::size_t>> wall_search(const PointConfiguration& config, const SecondaryPolytope& sec,
                                                  std::size_t alpha0, std::size_t cap) {
    std::vector<Integer> f;
    for (const auto& g : sec.gkz) f.push_back(g[alpha0]);
    if (f.empty()) return {};
    Integer hi = *std::max_element(f.begin(), f.end());
    std::vector<std::vector<std::size_t>> out;
    std::vector<std::size_t> path;
    std::size_t visited = 0;
    std::function<void(std::size_t)> dfs = [&](std::size_t v) {
        if (++visited > cap) throw ResourceError("wall search cap reached", out.size());
        path.push_back(v);
        StackyFanData fan = fan_from_triangulation(config, sec.triangulations[v], alpha0);
        if (!fan.alpha0IsVertex) {
            out.push_back(path);
        } else {
            std::set<std::size_t> next;
            for (const auto& w : wall_circuits(config, fan)) {
                if (w.flat || w.supp.empty()) continue;
                Triangulation t = modify(sec.triangulations[v], core_circuit(config, w, alpha0));
                auto j = sec.index_of(t);
                if (j && f[*j] < f[v]) next.insert(*j);
            }
            for (auto j : next) dfs(j);
        }
        path.pop_back();
    };
    for (std::size_t v = 0; v < f.size(); ++v)
        if (f[v] == hi) dfs(v);
    std::sort(out.begin(), out.end());
    return out;
}

MMPResult enumerate_mmp_sequences(const PointConfiguration& config, const SecondaryPolytope& sec, std::size_t alpha0,
                                  const MMPOptions& options) {
    FanoCheck check = nef_fano_check(config, alpha0);
    if (!check.ok && !options.allowNonFano) {
        std::string msg = "configuration is not nef-Fano:";
        for (const auto& p : check.problems) msg += " " + p + ";";
        throw PreconditionError(msg);
    }
    SharpenedPencilSpec spec = fano_mirror_spec(config, alpha0);
    MMPResult out;
    out.monotone = enumerate_monotone_vertices(sec, spec, options.cap);
    for (const auto& mv : out.monotone) {
        MMPSequence seq;
        seq.triangulations.assign(mv.sequence.rbegin(), mv.sequence.rend());
        const std::size_t r = mv.edges.size();
        seq.fans.push_back(fan_from_triangulation(config, sec.triangulations[seq.triangulations[0]], alpha0));
        for (std::size_t j = 0; j < r; ++j) {
            std::size_t from = seq.triangulations[j];
            std::size_t to = seq.triangulations[j + 1];
            const SecondaryEdge& edge = sec.edges[mv.edges[r - 1 - j]];
            Circuit c = edge.from == from ? edge.circuit : edge.circuit.negated();
            if (c.coefficient(alpha0) >= 0) throw InvariantError("f-decreasing edge has a nonnegative alpha0 entry");
            const StackyFanData& fan = seq.fans.back();
            auto w = wall_for(wall_circuits(config, fan), c, config, alpha0);
            if (!w) throw InvariantError("no wall of the fan carries the edge circuit");
            auto [step, next] = classify_and_contract(config, fan, *w);
            if (step.result != sec.triangulations[to]) throw InvariantError("wall contraction misses the next vertex");
            seq.steps.push_back(std::move(step));
            seq.fans.push_back(std::move(next));
            seq.circuitLabels.push_back(edge.circuitIndex);
            seq.mValues.push_back(mv.decorations[r - 1 - j].m);
        }
        for (const auto& f : seq.fans) seq.names.push_back(fan_name(f.fan));
        k0_ledger(seq);
        out.sequences.push_back(std::move(seq));
    }
    auto runs = wall_search(config, sec, alpha0, options.cap);
    out.wallSearchSequences = runs.size();
    for (const auto& seq : out.sequences)
        if (!std::binary_search(runs.begin(), runs.end(), seq.triangulations))
            throw InvariantError("a monotone sequence is missing from the wall search");
    return out;
}

namespace {

// Half-plane then cross-product ordering of nonzero vectors in Z^2.
bool angle_less(const IntVector& a, const IntVector& b) {
    auto half = [](const IntVector& v) { return v[1] > 0 || (v[1] == 0 && v[0] > 0) ? 0 : 1; };
    int ha = half(a), hb = half(b);
    if (ha != hb) return ha < hb;
    return a[0] * b[1] - a[1] * b[0] > 0;
}

// GL_2(Z)-invariant of a cyclically ordered ray list, minimized over rotations and reflections.
IntMatrix canonical_rays(std::vector<IntVector> rays) {
    std::sort(rays.begin(), rays.end(), angle_less);
    const std::size_t n = rays.size();
    std::optional<IntMatrix> best;
    for (int dir = 0; dir < 2; ++dir) {
        for (std::size_t s = 0; s < n; ++s) {
            IntMatrix m(2, IntVector(n));
            for (std::size_t k = 0; k < n; ++k) {
                std::size_t idx = dir == 0 ? (s + k) % n : (s + n - k) % n;
                m[0][k] = rays[idx][0];
                m[1][k] = rays[idx][1];
            }
            IntMatrix h = hnf(m).h;
            if (!best || h < *best) best = h;
        }
    }
    return *best;
}

const std::vector<std::pair<std::string, IntMatrix>>& atlas() {
    static const std::vector<std::pair<std::string, IntMatrix>> table = [] {
        std::vector<std::pair<std::string, std::vector<IntVector>>> raw = {
            {"P2", {{1, 0}, {0, 1}, {-1, -1}}},
            {"P1xP1", {{1, 0}, {0, 1}, {-1, 0}, {0, -1}}},
            {"F1", {{1, 0}, {0, 1}, {-1, 1}, {0, -1}}},
            {"F2", {{1, 0}, {0, 1}, {-1, 2}, {0, -1}}},
            {"Bl1(P1xP1)", {{1, 0}, {1, 1}, {0, 1}, {-1, 0}, {0, -1}}},
        };
        std::vector<std::pair<std::string, IntMatrix>> t;
        for (auto& [name, rays] : raw) t.emplace_back(name, canonical_rays(rays));
        return t;
    }();
    return table;
}

}  // namespace

std::string fan_name(const QuotientFan& fan) {
    std::string tag = "fan(rank=" + std::to_string(fan.rank) + ",vol=" + fan.volume.get_str() + ")";
    if (fan.rank == 0) return "pt";
    std::vector<IntVector> rays;
    for (const auto& [i, g] : fan.generators) rays.push_back(g);
    if (fan.rank == 1) {
        if (rays.size() != 2 || fan.cones.size() != 2 || sgn(rays[0][0]) == sgn(rays[1][0])) return tag;
        Integer a = abs(rays[0][0]), b = abs(rays[1][0]);
        if (a > b) std::swap(a, b);
        if (a == 1 && b == 1) return "P1";
        return "P1[" + a.get_str() + ":" + b.get_str() + "]";
    }
    if (fan.rank == 2 && fan.cones.size() == rays.size()) {
        IntMatrix key = canonical_rays(rays);
        for (const auto& [name, m] : atlas())
            if (m == key) return name;
    }
    return tag;
}

}  // namespace lgdeg
