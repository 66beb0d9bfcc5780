#pragma once

#include <optional>
#include <vector>

#include "lgdeg/subdivision.hpp"

namespace lgdeg {

// The functional f(phi) = sum of phi over the sharp set.
struct SharpenedPencilSpec {
    IndexSet sharpSet;
};
SharpenedPencilSpec sharpened_spec(const PointConfiguration& config, IndexSet sharpSet);
// Sharp set {alpha0}; alpha0 must be the origin and lie in the interior of Q.
SharpenedPencilSpec fano_mirror_spec(const PointConfiguration& config, std::size_t alpha0);

Integer f_value(const SharpenedPencilSpec& spec, const IntVector& phi);
// One value per triangulation of sec, in order.
std::vector<Integer> f_values(const SecondaryPolytope& sec, const SharpenedPencilSpec& spec);

struct Decoration {
    Integer m;  // f increment
    Integer e;  // lattice length of the GKZ edge
    Integer d;  // m / e
};

struct MonotonePathVertex {
    std::vector<std::size_t> sequence;  // triangulation indices, f strictly increasing
    std::vector<std::size_t> edges;     // secondary edge indices between consecutive entries
    std::vector<Integer> fValues;
    std::vector<Decoration> decorations;
    RatVector coherenceWitness;  // theta on Z^A
    Rational slack;
};

// Decorates an f-increasing edge path of sec; throws ArgumentError if it is not one.
MonotonePathVertex decorate(const SecondaryPolytope& sec, const SharpenedPencilSpec& spec,
                            const std::vector<std::size_t>& sequence);

// Exact coherence LP for a (partial) path: some theta makes every segment an upper
// hull edge of the image of Sec(A) under (f, theta), strictly away from its endpoints.
std::optional<std::pair<RatVector, Rational>> coherence_witness(const SecondaryPolytope& sec,
                                                                const std::vector<Integer>& f,
                                                                const std::vector<std::size_t>& sequence);

// All coherent f-increasing edge paths from an f-minimal to an f-maximal vertex.
// `cap` bounds the number of explored path prefixes.
std::vector<MonotonePathVertex> enumerate_monotone_vertices(const SecondaryPolytope& sec,
                                                            const SharpenedPencilSpec& spec,
                                                            std::size_t cap = 1000000);

struct Sector {
    std::size_t annulus = 0;  // 1-based edge index j
    std::size_t index = 0;    // k, 0 <= k < m_j / d_j
    Rational startTurns;      // start angle as a multiple of 2*pi
    Rational widthTurns;      // d_j / m_j
    Rational innerRadius;
    std::optional<Rational> outerRadius;  // nullopt on the outermost annulus
    std::size_t endpoints = 0;            // d_j
};

struct BasisLabel {
    std::size_t label = 0;  // l in gamma_l, 1-based
    std::size_t annulus = 0;
    std::size_t sector = 0;
    std::size_t position = 0;  // order inside the sector
    Rational angleTurns;       // canonical endpoint angle
    Rational radius;           // canonical endpoint radius
};

struct RadarScreen {
    std::vector<Sector> sectors;  // ordered by (annulus, index)
    std::vector<BasisLabel> basis;
};

// `radial` gives g_1 < ... < g_{r-1} (positive); default g_j = j.
RadarScreen radar_screen(const MonotonePathVertex& v, const std::optional<std::vector<Rational>>& radial = {});

// Floating-point geometry for plotting: annulus circles, sector rays and endpoint positions.
struct RadarPlot {
    std::vector<std::vector<std::pair<double, double>>> polylines;
    std::vector<std::pair<double, double>> endpoints;  // in basis order
};
RadarPlot radar_plot(const RadarScreen& screen, std::size_t circleSegments = 96);

}  // namespace lgdeg
