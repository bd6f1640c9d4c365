#pragma once
#include <optional>
#include <string>
#include <vector>

#include "holonomy/lifts.hpp"
#include "holonomy/pentagon.hpp"
#include "holonomy/words.hpp"

namespace holo {

inline constexpr double tol_ang = 1e-6;

struct ConePoint {
    std::vector<int> vertexOrbit;
    double angle = 0;
    double order = 0; // angle = 2 pi (order + 1)
};

struct SidePairing {
    int from = 0, to = 0; // iso maps side `from` onto side `to`, reversing direction
    Isometry iso;
};

struct ConeSurfaceData {
    std::vector<PointH2> polygon; // side i runs from vertex i to vertex i+1
    std::vector<SidePairing> pairings;
    std::vector<ConePoint> conePoints;
    int genus = 2;
    int chi = -2;
    SurfaceRepresentation holonomy;
    // holonomy generator i as a word in the pairing isometries (letter j+1 = pairings[j].iso)
    std::vector<Word> generatorWords;
};

struct DomainCheck {
    double pairingResidual = 0;  // endpoints of paired sides
    double cycleResidual = 0;    // vertex-cycle products against the identity
    double holonomyResidual = 0; // words in the pairings against the holonomy generators
    double area = 0;
    double areaResidual = 0;     // against -2 pi (chi + sum of orders)
    double angleResidual = 0;    // cone angles against the stored values
    double margin = 0;           // polygon clearance used by re-basing
    int orientation = 0;
};

// Recomputes cone points from the pairings, then measures every invariant.
std::vector<ConePoint> vertexCycles(const std::vector<PointH2>& polygon, const std::vector<SidePairing>& pairings,
                                    double* cycleResidual = nullptr);
DomainCheck checkDomain(const ConeSurfaceData& data);
// Throws InvariantViolation when any residual exceeds its tolerance.
DomainCheck validateDomain(const ConeSurfaceData& data);
double vertexClearance(const std::vector<PointH2>& polygon);

bool gaussBonnetAdmissible(int chi, const std::vector<double>& orders);

struct SplitResult {
    Isometry handleA, handleB;
    std::vector<Isometry> complementGenerators;
    double boundaryTrace = 0;
    int handleRelEuler = 0;
    int complementRelEuler = 0;
};

SplitResult splitHandle(const SurfaceRepresentation& rep, int handleIndex);

struct CurveFinding {
    Word word; // in the generators a1 b1 a2 b2 ... (letters 1..2g)
    IsometryClass cls;
};

// Catalog of simple closed curves: generators, products within a handle,
// handle boundaries, and handle bases reached by up to `budget` twist moves.
std::vector<Word> simpleCurveCatalog(int genus, int budget);
std::optional<CurveFinding> findNonHyperbolicSimpleCurve(const SurfaceRepresentation& rep, int budget = 3);
// Throws IdentityCurve when a catalog curve is sent to the identity.
void checkNoIdentityCurve(const SurfaceRepresentation& rep, int budget = 2);

struct BasisChange {
    SurfaceRepresentation rep;
    std::vector<Word> oldInNew; // old generators as words in the new ones
};

BasisChange fixParabolicBasis(const SurfaceRepresentation& rep, int alphaIndex = 0);
BasisChange swapHandles(const SurfaceRepresentation& rep);

ConeSurfaceData buildVAPairDomain(const SurfaceRepresentation& rep);

struct AssemblyReport {
    std::vector<McgMove> handleMoves, complementMoves;
    double handleAngle = 0;     // corner angle of the handle pentagon
    double complementAngle = 0; // corner angle of the complement pentagon
    double deltaWitness = 0;    // distance of the witness point from the boundary axis
    double deltaRoot = 0;       // root of the angle equation along the perpendicular
    double rootResidual = 0;    // |theta1 + theta2 - 4 pi| at the root
    double collarWidth = 0;     // w(t) of the boundary trace
    double epsilon = 0;         // search band actually used
};

// Search bands for the handle witness, as multiples of the collar width.
inline constexpr double kCollarWidening[] = {1, 2, 4, 8};

struct AssemblyOptions {
    int depth = 6;
    int grid = 64;
    std::uint64_t seed = 0;
    int complementDepth = 6;
};

ConeSurfaceData buildCollarAssembly(const SurfaceRepresentation& rep, AssemblyReport* report = nullptr,
                                    const AssemblyOptions& opts = {});

ConeSurfaceData rebaseConePoint(const ConeSurfaceData& data, const PointH2& newDevPoint);

// Re-express data built for `changed.rep` in terms of the original generators.
ConeSurfaceData pullBack(ConeSurfaceData data, const SurfaceRepresentation& original,
                         const std::vector<Word>& oldInNew);

struct GeometrizeResult {
    ConeSurfaceData data;
    std::string route; // "va-pair", "collar", "collar-parabolic", with "+swap" when handles were exchanged
    AssemblyReport report;
};

// Full pipeline for genus 2 with Euler number +-1.
GeometrizeResult geometrize(const SurfaceRepresentation& rep, const AssemblyOptions& opts = {});

} // namespace holo
