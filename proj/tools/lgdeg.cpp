#include <algorithm>
#include <filesystem>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "lgdeg/errors.hpp"
#include "lgdeg/io.hpp"
#include "lgdeg/mmp.hpp"
#include "lgdeg/verify.hpp"

#ifndef LGDEG_FIXTURE_DIR
#define LGDEG_FIXTURE_DIR "fixtures"
#endif

using namespace lgdeg;
using nlohmann::json;

namespace {

constexpr const char* kVersion = "0.1.0";

enum Exit { kOk = 0, kInput = 2, kCap = 3, kInvariant = 4 };

struct Job {
    std::string command;
    std::string input;
    std::string output;
    std::string sharp;
    std::optional<std::size_t> alpha0;
    std::size_t cap = 200000;
    std::uint64_t seed = 20260101;
    bool plotData = false;
    bool allowNonFano = false;
    std::string fixtures = LGDEG_FIXTURE_DIR;
    std::size_t randomScale = 100;  // percent of the default random suite sizes
};

json triangulation_json(const Triangulation& t) {
    json cells = json::array();
    for (const auto& c : t.cells()) cells.push_back(to_json(c));
    return cells;
}

json circuit_json(const Circuit& c) {
    Signature sig = signature(c);
    return {{"support", to_json(c.support)},
            {"relation", to_json(c.relation)},
            {"signature", {sig.p, sig.q, sig.r}},
            {"torsionOrder", to_json(c.torsionOrder)}};
}

json fan_json(const QuotientFan& f) {
    json gens = json::object();
    for (const auto& [i, g] : f.generators) gens[std::to_string(i)] = to_json(g);
    json cones = json::array();
    for (const auto& c : f.cones) cones.push_back(to_json(c));
    return {{"rank", f.rank}, {"cones", cones}, {"generators", gens}, {"volume", to_json(f.volume)},
            {"name", fan_name(f)}};
}

IndexSet parse_indices(const std::string& text, std::size_t n) {
    IndexSet out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) continue;
        std::size_t pos = 0;
        unsigned long v = 0;
        try {
            v = std::stoul(item, &pos);
        } catch (const std::exception&) {
            throw ParseError("bad index: " + item);
        }
        if (pos != item.size()) throw ParseError("bad index: " + item);
        if (v >= n) throw ArgumentError("index out of range: " + item);
        out.push_back(v);
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    if (out.empty()) throw ArgumentError("empty index list");
    return out;
}

std::size_t origin_alpha0(const Job& job, const PointConfiguration& config) {
    if (job.alpha0) {
        if (*job.alpha0 >= config.size()) throw ArgumentError("--alpha0 out of range");
        return *job.alpha0;
    }
    for (std::size_t i = 0; i < config.size(); ++i)
        if (config.point(i) == IntVector(config.dim(), 0)) return i;
    throw ArgumentError("no origin point; pass --alpha0");
}

SharpenedPencilSpec job_spec(const Job& job, const PointConfiguration& config) {
    if (!job.sharp.empty()) return sharpened_spec(config, parse_indices(job.sharp, config.size()));
    return sharpened_spec(config, {origin_alpha0(job, config)});
}

json secpoly_json(const PointConfiguration& config, const Job& job) {
    SecondaryPolytope sec = enumerate_regular_triangulations(config, job.cap);
    json vertices = json::array();
    for (std::size_t t = 0; t < sec.triangulations.size(); ++t)
        vertices.push_back({{"index", t}, {"gkz", to_json(sec.gkz[t])}, {"cells", triangulation_json(sec.triangulations[t])}});
    json edges = json::array();
    for (const auto& e : sec.edges)
        edges.push_back({{"from", e.from}, {"to", e.to}, {"circuitIndex", e.circuitIndex}, {"circuit", circuit_json(e.circuit)}});
    json rays = json::array();
    if (sec.triangulations.size() > 1)
        for (const auto& r : secondary_fan_rays(config, sec)) rays.push_back(to_json(r));
    return {{"dimension", config.size() - config.dim() - 1},
            {"volume", to_json(hull_volume(config))},
            {"vertexCount", sec.triangulations.size()},
            {"edgeCount", sec.edges.size()},
            {"vertices", vertices},
            {"edges", edges},
            {"secondaryFanRays", rays}};
}

json triangulations_json(const PointConfiguration& config, const Job& job) {
    SecondaryPolytope sec = enumerate_regular_triangulations(config, job.cap);
    json list = json::array();
    for (std::size_t t = 0; t < sec.triangulations.size(); ++t) {
        const auto& cert = sec.certificates[t];
        list.push_back({{"index", t},
                        {"cells", triangulation_json(sec.triangulations[t])},
                        {"gkz", to_json(sec.gkz[t])},
                        {"heights", to_json(cert.height.heights)},
                        {"slack", to_json(cert.slack)}});
    }
    return {{"count", sec.triangulations.size()},
            {"placing", triangulation_json(placing_triangulation(config))},
            {"triangulations", list}};
}

json circuit_details(const Circuit& c) {
    json out = circuit_json(c);
    CircuitScalars s = circuit_scalars(c);
    json twist = json::array();
    for (const auto& t : s.twist) twist.push_back({{"plus", t.plus}, {"minus", t.minus}, {"turns", to_json(t.turns)}});
    MorseData m = morse_data(c);
    out["vA"] = to_json(s.vA);
    out["dPlus"] = to_json(s.dPlus);
    out["dMinus"] = to_json(s.dMinus);
    out["cA"] = {to_json(s.cNum), to_json(s.cDen)};
    out["twist"] = twist;
    out["torsionWarning"] = s.torsionWarning;
    out["morse"] = {{"inertia", {m.inertia.positive, m.inertia.negative, m.inertia.zero}}, {"corner", m.corner}};
    auto [tp, tm] = circuit_triangulations(c);
    out["triangulationPlus"] = triangulation_json(tp);
    out["triangulationMinus"] = triangulation_json(tm);
    return out;
}

json circuits_json(const PointConfiguration& config, const Job&) {
    json list = json::array();
    for (const auto& c : find_circuits(config)) list.push_back(circuit_details(orient_standalone(c)));
    json out = {{"count", list.size()}, {"circuits", list}};
    if (config.size() == config.dim() + 2) out["extendedCircuit"] = circuit_details(extended_circuit(config.points()));
    return out;
}

json monotone_json(const MonotonePathVertex& v) {
    json decs = json::array();
    for (const auto& d : v.decorations) decs.push_back({{"m", to_json(d.m)}, {"e", to_json(d.e)}, {"d", to_json(d.d)}});
    return {{"sequence", to_json(v.sequence)},
            {"edges", to_json(v.edges)},
            {"fValues", to_json(v.fValues)},
            {"decorations", decs},
            {"coherenceWitness", to_json(v.coherenceWitness)},
            {"slack", to_json(v.slack)}};
}

json monotone_paths_json(const PointConfiguration& config, const Job& job) {
    SecondaryPolytope sec = enumerate_regular_triangulations(config, job.cap);
    SharpenedPencilSpec spec = job_spec(job, config);
    json list = json::array();
    for (const auto& v : enumerate_monotone_vertices(sec, spec, job.cap)) list.push_back(monotone_json(v));
    return {{"sharpSet", to_json(spec.sharpSet)}, {"fValues", to_json(f_values(sec, spec))}, {"count", list.size()},
            {"vertices", list}};
}

json radar_json(const PointConfiguration& config, const Job& job) {
    SecondaryPolytope sec = enumerate_regular_triangulations(config, job.cap);
    SharpenedPencilSpec spec = job_spec(job, config);
    json list = json::array();
    for (const auto& v : enumerate_monotone_vertices(sec, spec, job.cap)) {
        RadarScreen screen = radar_screen(v);
        json sectors = json::array();
        for (const auto& s : screen.sectors)
            sectors.push_back({{"annulus", s.annulus},
                               {"index", s.index},
                               {"startTurns", to_json(s.startTurns)},
                               {"widthTurns", to_json(s.widthTurns)},
                               {"innerRadius", to_json(s.innerRadius)},
                               {"outerRadius", s.outerRadius ? to_json(*s.outerRadius) : json(nullptr)},
                               {"endpoints", s.endpoints}});
        json basis = json::array();
        for (const auto& b : screen.basis)
            basis.push_back({{"label", b.label},
                             {"annulus", b.annulus},
                             {"sector", b.sector},
                             {"position", b.position},
                             {"angleTurns", to_json(b.angleTurns)},
                             {"radius", to_json(b.radius)}});
        json entry = {{"sequence", to_json(v.sequence)}, {"sectors", sectors}, {"basis", basis}};
        if (job.plotData) {
            RadarPlot plot = radar_plot(screen);
            entry["plot"] = {{"polylines", plot.polylines}, {"endpoints", plot.endpoints}};
        }
        list.push_back(entry);
    }
    return {{"sharpSet", to_json(spec.sharpSet)}, {"count", list.size()}, {"screens", list}};
}

json mmp_json(const PointConfiguration& config, const Job& job) {
    std::size_t alpha0 = origin_alpha0(job, config);
    SecondaryPolytope sec = enumerate_regular_triangulations(config, job.cap);
    FanoCheck check = nef_fano_check(config, alpha0);
    MMPResult result = enumerate_mmp_sequences(config, sec, alpha0, {job.allowNonFano, job.cap});
    json sequences = json::array();
    for (const auto& seq : result.sequences) {
        auto ledger = k0_ledger(seq);
        json steps = json::array();
        for (std::size_t j = 0; j < seq.steps.size(); ++j) {
            const auto& s = seq.steps[j];
            const auto& e = ledger[j];
            steps.push_back({{"kind", to_string(s.kind)},
                             {"circuitIndex", seq.circuitLabels[j]},
                             {"circuit", circuit_json(s.core)},
                             {"wall", to_json(s.wall.wall)},
                             {"links", [&] {
                                  json l = json::array();
                                  for (const auto& x : s.links) l.push_back(to_json(x));
                                  return l;
                              }()},
                             {"iw", to_json(s.iw)},
                             {"vol0", to_json(s.vol0)},
                             {"rw", to_json(s.rw)},
                             {"rwFlag", s.rw != 1},
                             {"fiberFan", fan_json(s.fiberFan)},
                             {"exceptionalFan", fan_json(s.exceptionalFan)},
                             {"baseFan", fan_json(s.baseFan)},
                             {"ledger",
                              {{"rankBefore", to_json(e.rankBefore)},
                               {"rankAfter", to_json(e.rankAfter)},
                               {"drop", to_json(e.drop)},
                               {"baseVolume", to_json(e.baseVolume)},
                               {"m", to_json(seq.mValues[j])}}}});
        }
        json fans = json::array();
        for (const auto& f : seq.fans)
            fans.push_back({{"tau", to_json(f.tau)}, {"alpha0IsVertex", f.alpha0IsVertex}, {"fan", fan_json(f.fan)}});
        sequences.push_back({{"triangulations", to_json(seq.triangulations)},
                             {"names", seq.names},
                             {"steps", steps},
                             {"fans", fans}});
    }
    return {{"alpha0", alpha0},
            {"nefFano", check.ok},
            {"nefFanoProblems", check.problems},
            {"monotoneVertices", result.monotone.size()},
            {"count", result.sequences.size()},
            {"wallSearchSequences", result.wallSearchSequences},
            {"sequences", sequences}};
}

json suite_json(const verify::Suite& suite) {
    json list = json::array();
    for (const auto& r : suite.results())
        list.push_back({{"module", r.module},
                        {"invariant", r.name},
                        {"runs", r.runs},
                        {"failures", r.failures},
                        {"passed", r.passed()},
                        {"firstFailure", r.firstFailure}});
    return {{"allPassed", suite.all_passed()}, {"invariants", list}};
}

json verify_json(const std::optional<PointConfiguration>& config, const Job& job) {
    verify::Suite suite;
    json inputs = json::array();
    verify::ConfigOptions options;
    options.alpha0 = job.alpha0;
    options.cap = job.cap;
    options.seed = job.seed;
    if (config) {
        if (!job.sharp.empty()) options.sharp = parse_indices(job.sharp, config->size());
        verify::verify_configuration(suite, *config, options);
    } else {
        std::vector<std::filesystem::path> files;
        for (const auto& entry : std::filesystem::directory_iterator(job.fixtures))
            if (entry.path().extension() == ".json") files.push_back(entry.path());
        std::sort(files.begin(), files.end());
        if (files.empty()) throw ArgumentError("no fixtures in " + job.fixtures);
        for (const auto& f : files) {
            inputs.push_back(f.filename().string());
            verify::verify_configuration(suite, load_configuration(f).config, options);
        }
        verify::RandomCounts counts;
        counts.configurations = counts.configurations * job.randomScale / 100;
        counts.nefFano = counts.nefFano * job.randomScale / 100;
        counts.circuits = counts.circuits * job.randomScale / 100;
        counts.matrices = counts.matrices * job.randomScale / 100;
        verify::verify_random(suite, job.seed, counts);
    }
    json out = suite_json(suite);
    if (!config) out["fixtures"] = inputs;
    return out;
}

void emit(const Job& job, const json& report) {
    std::string text = report.dump(2) + "\n";
    if (job.output.empty()) std::cout << text;
    else write_atomically(job.output, text);
}

int run(const Job& job) {
    std::optional<ConfigInput> input;
    if (!job.input.empty()) input = load_configuration(job.input);
    else if (job.command != "verify") throw ArgumentError("--input is required");
    if (job.cap == 0) throw ArgumentError("--cap must be positive");

    json result;
    if (job.command == "secpoly") result = secpoly_json(input->config, job);
    else if (job.command == "triangulations") result = triangulations_json(input->config, job);
    else if (job.command == "circuits") result = circuits_json(input->config, job);
    else if (job.command == "monotone-paths") result = monotone_paths_json(input->config, job);
    else if (job.command == "radar") result = radar_json(input->config, job);
    else if (job.command == "mmp") result = mmp_json(input->config, job);
    else result = verify_json(input ? std::optional<PointConfiguration>(input->config) : std::nullopt, job);

    json report = {{"command", job.command},
                   {"provenance",
                    {{"inputHash", input ? fnv1a_hex(input->raw) : std::string("")},
                     {"version", kVersion},
                     {"seed", job.seed}}},
                   {"result", result}};
    emit(job, report);
    if (job.command == "verify" && !result["allPassed"].get<bool>()) return kInvariant;
    return kOk;
}

int report_error(const Job& job, const std::string& kind, const std::string& what, int code) {
    std::cerr << "lgdeg: " << kind << ": " << what << "\n";
    json report = {{"command", job.command}, {"error", {{"kind", kind}, {"message", what}}}, {"exitCode", code}};
    if (!job.output.empty()) {
        try {
            emit(job, report);
        } catch (const std::exception&) {
        }
    }
    return code;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Secondary polytopes, circuits, monotone paths and toric MMP sequences"};
    app.require_subcommand(1);
    Job job;
    auto common = [&](CLI::App* sub, bool needsInput) {
        auto* in = sub->add_option("--input", job.input, "configuration JSON file");
        if (needsInput) in->required();
        sub->add_option("--output", job.output, "report path (stdout when omitted)");
        sub->add_option("--cap", job.cap, "node limit for the flip BFS and path searches");
        sub->add_option("--seed", job.seed, "seed recorded in the report and used by randomized runs");
    };
    auto* secpoly = app.add_subcommand("secpoly", "secondary polytope vertices, edges and fan rays");
    common(secpoly, true);
    auto* tris = app.add_subcommand("triangulations", "regular triangulations with certificates");
    common(tris, true);
    auto* circuits = app.add_subcommand("circuits", "circuits with signatures and scalar invariants");
    common(circuits, true);
    auto* paths = app.add_subcommand("monotone-paths", "coherent monotone paths for a sharp set");
    common(paths, true);
    auto* radar = app.add_subcommand("radar", "radar screens of the monotone path vertices");
    common(radar, true);
    auto* mmp = app.add_subcommand("mmp", "MMP sequences and rank ledgers");
    common(mmp, true);
    auto* verifyCmd = app.add_subcommand("verify", "cross-module invariant suite");
    common(verifyCmd, false);
    for (auto* sub : {paths, radar, verifyCmd}) sub->add_option("--sharp", job.sharp, "comma-separated indices");
    for (auto* sub : {paths, radar, mmp, verifyCmd}) sub->add_option("--alpha0", job.alpha0, "index of the origin point");
    radar->add_flag("--plot-data", job.plotData, "include floating-point plot geometry");
    mmp->add_flag("--allow-non-fano", job.allowNonFano, "skip the nef-Fano boundary check");
    verifyCmd->add_option("--fixtures", job.fixtures, "fixture directory used when --input is omitted");
    verifyCmd->add_option("--random-scale", job.randomScale, "random suite size in percent of the default");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? kOk : kInput;
    }
    for (auto* sub : app.get_subcommands()) job.command = sub->get_name();

    try {
        return run(job);
    } catch (const ResourceError& e) {
        return report_error(job, "cap", std::string(e.what()) + " (partial " + std::to_string(e.partial) + ")", kCap);
    } catch (const InvariantError& e) {
        return report_error(job, "invariant", e.what(), kInvariant);
    } catch (const ParseError& e) {
        return report_error(job, "parse", e.what(), kInput);
    } catch (const Error& e) {
        return report_error(job, "input", e.what(), kInput);
    } catch (const std::filesystem::filesystem_error& e) {
        return report_error(job, "input", e.what(), kInput);
    }
}
