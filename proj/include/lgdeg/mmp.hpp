#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "lgdeg/monotone.hpp"

namespace lgdeg {

// A simplicial fan in a quotient lattice Z^rank; cones are index sets into A.
struct QuotientFan {
    std::size_t rank = 0;
    std::vector<IndexSet> cones;
    std::map<std::size_t, IntVector> generators;
    Integer volume;  // sum of |det| over cones, 1 for rank 0
};

struct StackyFanData {
    Triangulation source;
    std::size_t alpha0 = 0;
    IndexSet tau;  // vertices of the minimal simplex face containing alpha0
    bool alpha0IsVertex = false;
    QuotientFan fan;
    std::map<std::size_t, Integer> rayIndices;  // r_i: index of Z * generator in its saturation
};

StackyFanData fan_from_triangulation(const PointConfiguration& config, const Triangulation& t, std::size_t alpha0);
Integer vol(const StackyFanData& fan);

struct WallCircuit {
    IndexSet wall;  // rays of the codimension-one cone
    std::size_t flankA = 0;
    std::size_t flankB = 0;
    Circuit circuit;  // C(w) over A indices, relation computed in the quotient lattice
    Signature signature;
    bool flat = false;                 // the alpha0 entry vanishes; no orientation applies
    std::vector<IndexSet> supp;        // links J of the core in the source triangulation
};
// Relations are oriented so that the alpha0 entry is negative.
std::vector<WallCircuit> wall_circuits(const PointConfiguration& config, const StackyFanData& fan);

enum class ContractionKind { MoriFiber, Divisorial, Flip };
std::string to_string(ContractionKind k);

struct ContractionStep {
    ContractionKind kind = ContractionKind::Flip;
    WallCircuit wall;
    Circuit core;  // nonzero part of C(w) as a circuit of A, alpha0 entry negative
    std::vector<IndexSet> links;
    QuotientFan fiberFan;        // C_+ in L_core / L_-
    QuotientFan exceptionalFan;  // star of C_- \ alpha0 in Z^d / L_-
    QuotientFan baseFan;         // links in Z^d / L_core
    Integer iw;                  // index of the core lattice in its saturation
    Integer vol0;                // iw * |a_0|
    Integer vol0Direct;          // normalized volume of conv(core \ alpha0) in its span
    Integer rw;                  // gcd of r_i * a_i over core \ alpha0; 1 unless ray indices interfere
    Triangulation result;
};

// Contracts `w` in the fan of T = fan.source; throws PreconditionError if alpha0 is not a
// vertex of T, the wall is flat, or T is not supported on the core of C(w).
std::pair<ContractionStep, StackyFanData> classify_and_contract(const PointConfiguration& config,
                                                                const StackyFanData& fan, const WallCircuit& w);

struct LedgerEntry {
    Integer rankBefore;  // phi_T(alpha0)
    Integer rankAfter;
    Integer drop;
    Integer baseVolume;
    Integer vol0;
    Integer fanVolumeBefore;
    Integer fanVolumeAfter;
};

struct MMPSequence {
    std::vector<std::size_t> triangulations;  // secondary-polytope indices, from f-max down
    std::vector<StackyFanData> fans;
    std::vector<ContractionStep> steps;
    std::vector<std::size_t> circuitLabels;  // secondary edge circuit index per step
    std::vector<Integer> mValues;            // decorations of the monotone vertex, in step order
    std::vector<std::string> names;          // atlas names of the fans
};

// Ledger of a sequence; throws InvariantError on any rank mismatch.
std::vector<LedgerEntry> k0_ledger(const MMPSequence& seq);

struct FanoCheck {
    bool ok = true;
    std::vector<std::string> problems;
};
// alpha0 is the interior origin and every other point lies on the boundary of Q.
FanoCheck nef_fano_check(const PointConfiguration& config, std::size_t alpha0);

struct MMPResult {
    std::vector<MonotonePathVertex> monotone;
    std::vector<MMPSequence> sequences;  // one per monotone vertex, same order
    std::size_t wallSearchSequences = 0;  // all f-decreasing wall-crossing runs
};

struct MMPOptions {
    bool allowNonFano = false;
    std::size_t cap = 1000000;
};

MMPResult enumerate_mmp_sequences(const PointConfiguration& config, const SecondaryPolytope& sec,
                                  std::size_t alpha0, const MMPOptions& options = {});

// Runs every f-decreasing chain of wall contractions from the f-maximal triangulations
// down to a Mori fiber space, as secondary-polytope index sequences.
std::vector<std::vector<std::size_t>> wall_search(const PointConfiguration& config, const SecondaryPolytope& sec,
                                                  std::size_t alpha0, std::size_t cap);

// Names a fan from a small atlas (pt, P1, P2, P1xP1, F1, F2, Bl1(P1xP1)); other fans
// get a descriptive tag.
std::string fan_name(const QuotientFan& fan);

}  // namespace lgdeg
