#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "lgdeg/triangulation.hpp"

namespace lgdeg {

struct Signature {
    std::size_t p = 0;
    std::size_t q = 0;
    std::size_t r = 0;
    bool operator==(const Signature& o) const { return p == o.p && q == o.q && r == o.r; }
};

// A circuit or extended circuit inside a point list. The relation is primitive and
// aligned with `support`; zero entries mark the extension points.
struct Circuit {
    IndexSet support;
    IntVector relation;
    Integer torsionOrder = 1;  // index of the span of (alpha, 1) in its saturation
    IndexSet plus;
    IndexSet minus;
    IndexSet zero;

    IndexSet core() const { return set_union(plus, minus); }
    Integer coefficient(std::size_t index) const;
    Circuit negated() const;
    bool operator==(const Circuit& o) const { return support == o.support && relation == o.relation; }
};

// Builds the circuit with the given relation on `support`; the relation is made primitive.
Circuit make_circuit(const std::vector<LatticePoint>& points, IndexSet support, IntVector relation);

// The unique relation of points[support]; throws unless the relation space has rank 1.
Circuit circuit_on(const std::vector<LatticePoint>& points, IndexSet support);

// Standalone orientation: the positive side is the smaller one; ties put the first
// nonzero entry positive.
Circuit orient_standalone(const Circuit& c);

// A whole point list viewed as one circuit, in standalone orientation.
Circuit extended_circuit(const std::vector<LatticePoint>& points);

std::vector<Circuit> find_circuits(const PointConfiguration& config);

Signature signature(const Circuit& c);
Signature signature(const IntVector& relation);

// T_+ and T_- as cells over the support indices.
std::pair<Triangulation, Triangulation> circuit_triangulations(const Circuit& c);

struct TwistEntry {
    std::size_t plus;
    std::size_t minus;
    Rational turns;  // coefficient of 2*pi
};

struct CircuitScalars {
    Integer vA;
    Integer dPlus;
    Integer dMinus;
    Integer cNum;
    Integer cDen;
    std::vector<TwistEntry> twist;
    bool torsionWarning = false;
};
CircuitScalars circuit_scalars(const Circuit& c);

struct Inertia {
    std::size_t positive = 0;
    std::size_t negative = 0;
    std::size_t zero = 0;
    bool operator==(const Inertia& o) const {
        return positive == o.positive && negative == o.negative && zero == o.zero;
    }
};
// Exact symmetric congruence diagonalization.
Inertia congruence_inertia(const RatMatrix& m);
// Jacobi sign rule on leading principal minors; nullopt if one of them vanishes.
std::optional<Inertia> sylvester_inertia(const RatMatrix& m);

struct MorseData {
    IndexSet order;  // positives, zeros, negatives (support indices)
    RatMatrix hessian;
    Inertia inertia;
    std::size_t corner = 0;
    std::optional<Inertia> sylvester;
};
MorseData morse_data(const Circuit& c);

struct SupportWitness {
    bool supported = false;
    std::vector<IndexSet> links;  // the J with J ∪ core a separating extended circuit
};
// sign = +1 checks T_+ cells, -1 checks T_- cells.
SupportWitness is_supported(const Triangulation& t, const Circuit& c, int sign);

Triangulation modify(const Triangulation& t, const Circuit& c);

struct Flip {
    Circuit circuit;  // oriented so that the source triangulation is positively supported
    std::vector<IndexSet> links;
    Triangulation result;
};
// All circuit modifications available at t.
std::vector<Flip> flips(const PointConfiguration& config, const Triangulation& t);

}  // namespace lgdeg
