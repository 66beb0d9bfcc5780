#include "lgdeg/verify.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "lgdeg/errors.hpp"
#include "lgdeg/mmp.hpp"
#include "lgdeg/oracle.hpp"

namespace lgdeg::verify {

void Suite::check(const std::string& module, const std::string& name, const std::function<std::string()>& body) {
    auto key = std::make_pair(module, name);
    auto it = reports_.find(key);
    if (it == reports_.end()) {
        order_.push_back(key);
        InvariantReport r;
        r.module = module;
        r.name = name;
        it = reports_.emplace(key, std::move(r)).first;
    }
    std::string failure;
    try {
        failure = body();
    } catch (const std::exception& e) {
        failure = std::string("error: ") + e.what();
    }
    ++it->second.runs;
    if (!failure.empty()) {
        if (it->second.failures == 0) it->second.firstFailure = failure;
        ++it->second.failures;
    }
}

std::vector<InvariantReport> Suite::results() const {
    std::vector<InvariantReport> out;
    for (const auto& key : order_) out.push_back(reports_.at(key));
    return out;
}

bool Suite::all_passed() const {
    return std::all_of(reports_.begin(), reports_.end(), [](const auto& kv) { return kv.second.passed(); });
}

std::vector<LatticePoint> random_spanning_points(std::mt19937_64& rng, std::size_t d, std::size_t n, long r) {
    std::uniform_int_distribution<long> coord(-r, r);
    while (true) {
        std::set<LatticePoint> seen;
        while (seen.size() < n) {
            LatticePoint p;
            for (std::size_t k = 0; k < d; ++k) p.emplace_back(coord(rng));
            seen.insert(p);
        }
        std::vector<LatticePoint> out(seen.begin(), seen.end());
        std::shuffle(out.begin(), out.end(), rng);
        IntMatrix rows;
        for (const auto& p : out) {
            auto q = p;
            q.emplace_back(1);
            rows.push_back(q);
        }
        if (rank(rows) == d + 1) return out;
    }
}

IntMatrix random_unimodular(std::mt19937_64& rng, std::size_t d) {
    IntMatrix u = identity(d);
    if (d < 2) return u;
    std::uniform_int_distribution<std::size_t> idx(0, d - 1);
    std::uniform_int_distribution<long> mult(-2, 2);
    for (int step = 0; step < 8; ++step) {
        std::size_t i = idx(rng), j = idx(rng);
        if (i == j) continue;
        long k = mult(rng);
        for (std::size_t c = 0; c < d; ++c) u[i][c] += k * u[j][c];
    }
    return u;
}

std::optional<PointConfiguration> random_nef_fano(std::mt19937_64& rng, std::size_t d, std::size_t n,
                                                  std::size_t maxPoints) {
    PointConfiguration hull(random_spanning_points(rng, d, n, 2));
    IntVector zero(d, 0);
    if (!hull.in_interior(to_rational(zero))) return std::nullopt;
    std::vector<LatticePoint> kept{zero};
    for (std::size_t i = 0; i < hull.size(); ++i)
        if (hull.point(i) != zero && hull.on_boundary(i)) kept.push_back(hull.point(i));
    if (kept.size() < d + 2 || kept.size() > maxPoints) return std::nullopt;
    return PointConfiguration(kept);
}

namespace {

std::string fail(const std::string& what) { return what; }

template <class T>
std::string show(const T& x) {
    std::ostringstream os;
    os << x;
    return os.str();
}

// phi_T(alpha) from pyramid volumes of the cells through alpha.
Integer rank_oracle(const PointConfiguration& config, const Triangulation& t, std::size_t alpha) {
    Integer s = 0;
    for (const auto& cell : t.cells())
        if (std::binary_search(cell.begin(), cell.end(), alpha))
            s += oracle::pyramid_volume(cell_points(config, cell));
    return s;
}

IntVector embed(const Circuit& c, std::size_t n) {
    IntVector out(n, 0);
    for (std::size_t k = 0; k < c.support.size(); ++k) out[c.support[k]] = c.relation[k];
    return out;
}

std::optional<std::size_t> default_alpha0(const PointConfiguration& config) {
    for (std::size_t i = 0; i < config.size(); ++i)
        if (config.point(i) == IntVector(config.dim(), 0) && config.in_interior(to_rational(config.point(i))))
            return i;
    return std::nullopt;
}

void lattice_checks(Suite& s, const PointConfiguration& config, std::mt19937_64& rng) {
    const std::size_t n = config.size(), d = config.dim();
    s.check("lattice-core", "relation rank plus d + 1 equals |A|", [&] {
        auto rel = affine_relations(config);
        return rel.rank + d + 1 == n ? "" : fail("rank " + std::to_string(rel.rank));
    });
    s.check("lattice-core", "relation basis vectors satisfy both sum identities", [&] {
        for (const auto& row : affine_relations(config).basis) {
            IntVector moment(d + 1, 0);
            for (std::size_t i = 0; i < n; ++i) moment = add(moment, scale(config.lifted(i), row[i]));
            if (content(moment) != 0) return fail("relation " + to_string(row));
        }
        return std::string();
    });
    s.check("lattice-core", "normalized volume is invariant under unimodular maps and permutations", [&] {
        Integer v = hull_volume(config);
        if (v != oracle::pyramid_volume(config.points()))
            return fail("hull volume " + show(v) + " differs from the pyramid oracle");
        IntMatrix u = random_unimodular(rng, d);
        std::vector<LatticePoint> mapped;
        for (const auto& p : config.points()) mapped.push_back(row_times(p, u));
        std::shuffle(mapped.begin(), mapped.end(), rng);
        Integer w = hull_volume(PointConfiguration(mapped));
        return w == v ? "" : fail("volume " + show(v) + " became " + show(w));
    });
    s.check("lattice-core", "facet inequalities hold with d independent tight points", [&] {
        for (const auto& f : config.facets()) {
            IntMatrix tight;
            for (std::size_t i = 0; i < n; ++i) {
                Integer val = dot(f.normal, config.point(i)) + f.offset;
                if (val < 0) return fail("point " + std::to_string(i) + " violates facet " + to_string(f.normal));
                if (val == 0) tight.push_back(config.lifted(i));
            }
            if (rank(tight) != d) return fail("facet " + to_string(f.normal) + " is not spanned by tight points");
        }
        return std::string();
    });
}

void subdivision_checks(Suite& s, const PointConfiguration& config, const SecondaryPolytope& sec,
                        const ConfigOptions& options) {
    const std::size_t n = config.size(), d = config.dim();
    s.check("subdivision", "regularity certificates induce their triangulations", [&] {
        for (const auto& t : sec.triangulations) {
            auto cert = is_regular(config, t);
            if (!cert) return fail("no certificate for " + t.encode());
            if (!(induced_subdivision(config, cert->height) == to_subdivision(t)))
                return fail("certificate does not induce " + t.encode());
        }
        return std::string();
    });
    s.check("subdivision", "secondary polytope has dimension |A| - d - 1", [&] {
        IntMatrix diffs;
        for (const auto& g : sec.gkz) diffs.push_back(sub(g, sec.gkz[0]));
        std::size_t r = rank(diffs);
        return r + d + 1 == n ? "" : fail("dimension " + std::to_string(r));
    });
    s.check("subdivision", "weighted sum of GKZ vectors is the same for all triangulations", [&] {
        std::optional<IntVector> first;
        for (const auto& g : sec.gkz) {
            IntVector w(d + 1, 0);
            for (std::size_t i = 0; i < n; ++i) w = add(w, scale(config.lifted(i), g[i]));
            if (!first) first = w;
            else if (w != *first) return fail(to_string(w) + " differs from " + to_string(*first));
        }
        return std::string();
    });
    if (n > options.oracleLimit) return;
    std::vector<IntVector> gkzAll;
    std::set<IntVector> regular;
    std::set<std::pair<IntVector, IntVector>> oracleEdges;
    bool oracleReady = false;
    s.check("subdivision", "flip BFS reaches exactly the hull vertices of all GKZ vectors", [&] {
        for (const auto& t : oracle::all_triangulations(config)) gkzAll.push_back(gkz_vertex(config, t));
        auto graph = oracle::hull_graph(gkzAll);
        for (auto v : graph.vertices) regular.insert(gkzAll[v]);
        for (auto [a, b] : graph.edges) oracleEdges.insert(std::minmax(gkzAll[a], gkzAll[b]));
        oracleReady = true;
        std::set<IntVector> found(sec.gkz.begin(), sec.gkz.end());
        if (found.size() != sec.gkz.size()) return fail("duplicate GKZ vectors in the BFS");
        return found == regular ? "" : fail(std::to_string(found.size()) + " BFS vertices against " +
                                            std::to_string(regular.size()) + " hull vertices");
    });
    s.check("subdivision", "secondary edges are exactly circuit modifications", [&] {
        if (!oracleReady) return fail("hull oracle unavailable");
        std::set<std::pair<IntVector, IntVector>> bfsEdges;
        for (const auto& e : sec.edges) {
            const auto& from = sec.triangulations[e.from];
            if (!is_supported(from, e.circuit, 1).supported) return fail("edge source not supported on its circuit");
            if (modify(from, e.circuit) != sec.triangulations[e.to]) return fail("edge is not its modification");
            bfsEdges.insert(std::minmax(sec.gkz[e.from], sec.gkz[e.to]));
        }
        for (std::size_t t = 0; t < sec.triangulations.size(); ++t)
            for (const auto& fl : flips(config, sec.triangulations[t])) {
                auto j = sec.index_of(fl.result);
                if (!j) continue;
                if (!bfsEdges.count(std::minmax(sec.gkz[t], sec.gkz[*j])))
                    return fail("regular modification missing from the edge list");
            }
        return bfsEdges == oracleEdges ? "" : fail(std::to_string(bfsEdges.size()) + " BFS edges against " +
                                                   std::to_string(oracleEdges.size()) + " hull edges");
    });
}

void circuit_checks(Suite& s, const PointConfiguration& config, const SecondaryPolytope& sec) {
    const std::size_t n = config.size();
    std::vector<Circuit> circuits = find_circuits(config);
    s.check("circuits", "GKZ difference of T_+ and T_- is minus the scaled relation", [&] {
        for (const auto& c : circuits) {
            PointConfiguration local(reembed(cell_points(config, c.support)).points);
            Circuit lc = extended_circuit(local.points());
            if (lc.relation != c.relation && lc.relation != c.negated().relation)
                return fail("standalone relation differs on " + to_string(c.relation));
            auto [tp, tm] = circuit_triangulations(lc);
            IntVector diff = sub(gkz_vertex(local, tp), gkz_vertex(local, tm));
            if (diff != scale(lc.relation, -lc.torsionOrder)) return fail("difference " + to_string(diff));
        }
        return std::string();
    });
    s.check("circuits", "c_A is coprime and twist angles lie in [-2pi, 0)", [&] {
        for (const auto& c : circuits) {
            CircuitScalars sc = circuit_scalars(orient_standalone(c));
            if (gcd(sc.cNum, sc.cDen) != 1 || sc.cNum <= 0 || sc.cDen <= 0) return fail("c_A not reduced");
            for (const auto& t : sc.twist)
                if (t.turns < -1 || t.turns >= 0) return fail("twist entry out of range");
        }
        return std::string();
    });
    s.check("circuits", "Morse signature equals (q-1, p-1; r)", [&] {
        for (const auto& c : circuits) {
            Circuit oc = orient_standalone(c);
            Signature sig = signature(oc);
            MorseData m = morse_data(oc);
            if (!(m.inertia == Inertia{sig.q - 1, sig.p - 1, 0}) || m.corner != sig.r)
                return fail("inertia mismatch on " + to_string(oc.relation));
        }
        return std::string();
    });
    s.check("circuits", "modification is an involution along secondary edges", [&] {
        for (const auto& e : sec.edges) {
            const auto& from = sec.triangulations[e.from];
            Triangulation there = modify(from, e.circuit);
            if (modify(there, e.circuit) != from) return fail("modify is not an involution");
            IntVector diff = sub(sec.gkz[e.to], sec.gkz[e.from]);
            IntVector rel = embed(e.circuit, n);
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = 0; j < n; ++j)
                    if (diff[i] * rel[j] != diff[j] * rel[i]) return fail("GKZ step not parallel to the relation");
            for (std::size_t i = 0; i < n; ++i)
                if (rel[i] != 0 && sgn(diff[i]) != sgn(rel[i])) return fail("GKZ step against the relation");
        }
        return std::string();
    });
}

void monotone_checks(Suite& s, const PointConfiguration& config, const SecondaryPolytope& sec,
                     const SharpenedPencilSpec& spec, const ConfigOptions& options,
                     std::vector<MonotonePathVertex>& monotone) {
    std::vector<Integer> f = f_values(sec, spec);
    bool ok = false;
    s.check("monotone-path", "monotone vertices enumerate", [&] {
        monotone = enumerate_monotone_vertices(sec, spec, options.cap);
        ok = true;
        return monotone.empty() ? fail("no monotone vertices") : "";
    });
    if (!ok) return;
    Integer lo = *std::min_element(f.begin(), f.end());
    Integer hi = *std::max_element(f.begin(), f.end());
    s.check("monotone-path", "decorations telescope to the f range", [&] {
        for (const auto& v : monotone) {
            Integer sum = 0;
            for (const auto& dec : v.decorations) sum += dec.m;
            if (sum != f[v.sequence.back()] - f[v.sequence.front()]) return fail("m values do not telescope");
        }
        return std::string();
    });
    s.check("monotone-path", "paths run from an f-minimal to an f-maximal vertex", [&] {
        for (const auto& v : monotone)
            if (f[v.sequence.front()] != lo || f[v.sequence.back()] != hi) return fail("endpoint off the extremes");
        return std::string();
    });
    if (config.size() <= options.oracleLimit)
        s.check("monotone-path", "monotone vertices match the fibre polytope oracle", [&] {
            std::vector<std::pair<std::size_t, std::size_t>> edges;
            for (const auto& e : sec.edges) edges.emplace_back(e.from, e.to);
            auto expect = oracle::fiber_polytope_vertex_paths(sec.gkz, edges, f);
            std::vector<std::vector<std::size_t>> got;
            for (const auto& v : monotone) got.push_back(v.sequence);
            std::sort(expect.begin(), expect.end());
            std::sort(got.begin(), got.end());
            return got == expect ? "" : fail(std::to_string(got.size()) + " paths against " +
                                             std::to_string(expect.size()) + " fibre vertices");
        });
    s.check("monotone-path", "radar screen has sum m_j labels and full annuli", [&] {
        for (const auto& v : monotone) {
            RadarScreen screen = radar_screen(v);
            Integer total = 0;
            for (const auto& dec : v.decorations) total += dec.m;
            if (Integer(static_cast<unsigned long>(screen.basis.size())) != total) return fail("label count");
            std::map<std::size_t, Rational> widths;
            for (const auto& sec2 : screen.sectors) widths[sec2.annulus] += sec2.widthTurns;
            for (const auto& [j, w] : widths)
                if (w != 1) return fail("annulus " + std::to_string(j) + " covers " + w.get_str());
        }
        return std::string();
    });
    s.check("monotone-path", "path steps are secondary edges with matching circuit labels", [&] {
        for (const auto& v : monotone)
            for (std::size_t j = 0; j + 1 < v.sequence.size(); ++j) {
                std::size_t a = v.sequence[j], b = v.sequence[j + 1];
                auto idx = sec.edge_between(a, b);
                if (!idx || *idx != v.edges[j]) return fail("step is not a listed edge");
                const auto& e = sec.edges[*idx];
                if (modify(sec.triangulations[a], e.circuit) != sec.triangulations[b])
                    return fail("edge circuit does not modify one end into the other");
                if (sec.circuits.at(e.circuitIndex).core() != e.circuit.core()) return fail("circuit label mismatch");
            }
        return std::string();
    });
}

void mmp_checks(Suite& s, const PointConfiguration& config, const SecondaryPolytope& sec, std::size_t alpha0,
                const ConfigOptions& options) {
    MMPResult result;
    bool ok = false;
    s.check("mmp", "sequences enumerate with all internal ledgers consistent", [&] {
        result = enumerate_mmp_sequences(config, sec, alpha0, {false, options.cap});
        ok = true;
        return std::string();
    });
    if (!ok) return;
    s.check("mmp", "one sequence per monotone vertex with matching circuit labels", [&] {
        if (result.sequences.size() != result.monotone.size()) return fail("count mismatch");
        for (std::size_t k = 0; k < result.sequences.size(); ++k) {
            const auto& seq = result.sequences[k];
            const auto& mv = result.monotone[k];
            const std::size_t r = mv.edges.size();
            if (seq.steps.size() != r) return fail("length mismatch");
            for (std::size_t j = 0; j < r; ++j) {
                const auto& edge = sec.edges[mv.edges[r - 1 - j]];
                if (seq.circuitLabels[j] != edge.circuitIndex) return fail("label mismatch");
                if (sec.circuits.at(edge.circuitIndex).core() != seq.steps[j].core.core())
                    return fail("step circuit differs from the labelled circuit");
            }
        }
        return result.wallSearchSequences >= result.sequences.size() ? "" : fail("wall search finds fewer runs");
    });
    s.check("mmp", "volume additivity Vol(S) - Vol(S') = Vol(S_B) Vol_0", [&] {
        for (const auto& seq : result.sequences)
            for (std::size_t j = 0; j < seq.steps.size(); ++j) {
                Integer before = rank_oracle(config, sec.triangulations[seq.triangulations[j]], alpha0);
                Integer after = rank_oracle(config, sec.triangulations[seq.triangulations[j + 1]], alpha0);
                if (before - after != seq.steps[j].baseFan.volume * seq.steps[j].vol0)
                    return fail("step " + std::to_string(j) + " drops " + show(before - after));
            }
        return std::string();
    });
    s.check("mmp", "rank drop equals the decoration m_j", [&] {
        for (const auto& seq : result.sequences) {
            auto ledger = k0_ledger(seq);
            for (std::size_t j = 0; j < ledger.size(); ++j)
                if (ledger[j].drop != seq.mValues[j]) return fail("drop differs from m");
        }
        return std::string();
    });
    s.check("mmp", "Vol_0 from the index formula equals the direct volume", [&] {
        for (const auto& seq : result.sequences)
            for (const auto& step : seq.steps) {
                IndexSet rest = erase_one(step.core.core(), alpha0);
                Integer direct = oracle::pyramid_volume(reembed(cell_points(config, rest)).points);
                if (step.vol0 != direct || step.vol0Direct != direct) return fail("vol0 " + show(step.vol0));
            }
        return std::string();
    });
    s.check("mmp", "sequences end in one Mori fibre step after steps with q >= 2", [&] {
        for (const auto& seq : result.sequences)
            for (std::size_t j = 0; j < seq.steps.size(); ++j) {
                bool last = j + 1 == seq.steps.size();
                std::size_t q = seq.steps[j].core.minus.size();
                if (last ? q != 1 : q < 2) return fail("step " + std::to_string(j) + " has q = " + std::to_string(q));
            }
        return std::string();
    });
}

}  // namespace

void verify_configuration(Suite& suite, const PointConfiguration& config, const ConfigOptions& options) {
    std::mt19937_64 rng(options.seed);
    lattice_checks(suite, config, rng);
    SecondaryPolytope sec;
    bool ok = false;
    suite.check("subdivision", "flip BFS completes", [&] {
        sec = enumerate_regular_triangulations(config, options.cap);
        ok = true;
        return std::string();
    });
    if (!ok) return;
    subdivision_checks(suite, config, sec, options);
    circuit_checks(suite, config, sec);

    std::optional<std::size_t> alpha0 = options.alpha0 ? options.alpha0 : default_alpha0(config);
    IndexSet sharp = options.sharp ? *options.sharp : IndexSet{alpha0 ? *alpha0 : 0};
    std::vector<MonotonePathVertex> monotone;
    monotone_checks(suite, config, sec, sharpened_spec(config, sharp), options, monotone);
    if (alpha0 && nef_fano_check(config, *alpha0).ok) mmp_checks(suite, config, sec, *alpha0, options);
}

void verify_random(Suite& suite, std::uint64_t seed, const RandomCounts& counts) {
    std::mt19937_64 rng(seed);
    for (std::size_t trial = 0; trial < counts.matrices; ++trial) {
        std::size_t k = 2 + trial % 2;
        std::uniform_int_distribution<long> entry(-6, 6);
        IntMatrix m(k, IntVector(k));
        for (auto& row : m)
            for (auto& x : row) x = entry(rng);
        suite.check("lattice-core", "lattice index of a full-rank square matrix is |det|", [&] {
            Integer dt = abs(det(m));
            if (dt == 0) return std::string();
            auto idx = lattice_index_in_ambient(m, k);
            if (!idx || *idx != dt) return fail("index differs from |det| " + show(dt));
            return lattice_index(m, k) == dt ? "" : fail("index in the saturation differs from |det| " + show(dt));
        });
    }
    for (std::size_t trial = 0; trial < counts.circuits; ++trial) {
        std::size_t d = 1 + trial % 4;
        auto points = random_spanning_points(rng, d, d + 2, 5);
        suite.check("circuits", "Morse signature on random extended circuits", [&] {
            Circuit c = extended_circuit(points);
            if (trial % 2) c = c.negated();
            Signature sig = signature(c);
            MorseData m = morse_data(c);
            if (!(m.inertia == Inertia{sig.q - 1, sig.p - 1, 0}) || m.corner != sig.r)
                return fail("inertia mismatch on " + to_string(c.relation));
            return std::string();
        });
    }
    for (std::size_t trial = 0; trial < counts.configurations; ++trial) {
        std::size_t d = 1 + trial % 3;
        std::size_t n = std::min<std::size_t>(d + 2 + trial % 3, 7);
        PointConfiguration config(random_spanning_points(rng, d, n, 2));
        ConfigOptions options;
        options.seed = rng();
        verify_configuration(suite, config, options);
    }
    std::size_t done = 0;
    while (done < counts.nefFano) {
        std::size_t d = done % 5 == 4 ? 3 : 2;
        std::size_t n = d == 3 ? 6 : 4 + rng() % 5;
        auto config = random_nef_fano(rng, d, n, 8);
        if (!config) continue;
        ConfigOptions options;
        options.seed = rng();
        options.oracleLimit = 0;
        verify_configuration(suite, *config, options);
        ++done;
    }
}

}  // namespace lgdeg::verify
