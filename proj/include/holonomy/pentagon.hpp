#pragma once
#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "holonomy/char_torus.hpp"
#include "holonomy/hyp_core.hpp"

namespace holo {

// Simplicity report for a closed geodesic polygon.
struct PolygonReport {
    bool ok = false;
    int orientation = 0; // +1 counterclockwise, -1 clockwise
    double margin = 0;   // min distance between non-adjacent sides (0 unless ok)
};

PolygonReport checkSimplePolygon(const std::vector<PointH2>& verts);
// Interior angles, given the orientation of a simple polygon.
std::vector<double> interiorAngles(const std::vector<PointH2>& verts, int orientation);
// Area by signed fan triangulation from the first vertex.
double polygonArea(const std::vector<PointH2>& verts);
double segmentDistance(const PointH2& a0, const PointH2& a1, const PointH2& b0, const PointH2& b1);

// p -> [g^-1,h^-1] p -> h p -> g h p -> h^-1 g h p -> p
struct Pentagon {
    std::array<PointH2, 5> vertices;

    std::vector<PointH2> polygon() const { return {vertices.begin(), vertices.end()}; }
};

Pentagon buildPentagon(const Isometry& g, const Isometry& h, const PointH2& p);
PolygonReport boundsEmbeddedDisc(const Pentagon& pent);
// Sum of the interior angles; throws DegeneratePentagon unless the pentagon is embedded.
double cornerAngle(const Pentagon& pent);

struct GoodnessWitness {
    std::vector<McgMove> moves;
    TrackedPair basis; // moved pair with bookkeeping back to the input pair
    PointH2 point;
    double delta = 0;  // signed distance from point to the axis of the moved boundary element
    double epsilon = 0;
    int orientation = 0;
    double angle = 0;  // corner angle of the witness pentagon
};

struct SearchOptions {
    int depth = 6;
    int grid = 64;
    std::uint64_t seed = 0;
    int requiredOrientation = 0;  // 0: any
    bool requireTraceAboveTwo = true;
    std::function<bool(const GoodnessWitness&)> accept; // extra filter, optional
};

std::optional<GoodnessWitness> searchGood(const Isometry& g, const Isometry& h, double epsilon,
                                          const SearchOptions& opts);
std::optional<GoodnessWitness> searchGood(const Isometry& g, const Isometry& h, double epsilon, int depth,
                                          int grid, std::uint64_t seed);
std::optional<GoodnessWitness> searchWGood(const Isometry& g, const Isometry& h, std::uint64_t seed = 0);

} // namespace holo
