#pragma once
#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "holonomy/hyp_core.hpp"
#include "holonomy/words.hpp"

namespace holo {

struct Character {
    double x = 2, y = 2, z = 2;
    double kappa = 2;

    static Character make(double x, double y, double z); // canonicalized
};

double kappaOf(double x, double y, double z);
Character canonical(double x, double y, double z);
Character characterOf(const Isometry& g, const Isometry& h);
bool sameCharacter(const Character& a, const Character& b, double tol);

struct Realization {
    Isometry g, h;
    bool reducible = false; // kappa = 2: one representative of several classes
};

Realization realize(const Character& c);
// Conjugation by diag(1,-1): same traces, opposite orientation.
Isometry mirror(const Isometry& g);

std::pair<Isometry, Isometry> alignCommutator(const Isometry& g, const Isometry& h, const Isometry& target);
// Orientation-preserving k with k a k^-1 = b, when a and b are conjugate.
Isometry conjugator(const Isometry& a, const Isometry& b);

bool inVirtuallyAbelianSet(const Character& c);
bool isVirtuallyAbelian(const Isometry& g, const Isometry& h);

enum class McgMove { TwistA, TwistAInv, TwistB, TwistBInv, SwapInvert, InvertB };
inline constexpr McgMove kAllMoves[] = {McgMove::TwistA, McgMove::TwistAInv, McgMove::TwistB,
                                        McgMove::TwistBInv, McgMove::SwapInvert, McgMove::InvertB};
inline constexpr McgMove kOrientedMoves[] = {McgMove::TwistA, McgMove::TwistAInv, McgMove::TwistB,
                                             McgMove::TwistBInv};
const char* moveName(McgMove mv);
McgMove inverseMove(McgMove mv);

// Polynomial action on a raw triple (no canonicalization).
std::array<double, 3> moveTriple(McgMove mv, double x, double y, double z);
Character applyMove(McgMove mv, const Character& c);
std::pair<Isometry, Isometry> applyMoveMatrices(McgMove mv, const Isometry& g, const Isometry& h);

// Pair carried through a move sequence together with bookkeeping:
//   boundary element B(g,h) = g^-1 h^-1 g h satisfies B(current) = K B(start)^E K^-1,
//   startWords express the starting pair as words in the current pair (letters 1 = g, 2 = h),
//   conjugatorWord expresses K in the current pair.
struct TrackedPair {
    Isometry g, h;
    Isometry K;
    int E = 1;
    Word startG{1}, startH{2};
    Word conjugatorWord;
};

TrackedPair trackMoves(const Isometry& g, const Isometry& h, const std::vector<McgMove>& moves);
Isometry boundaryElement(const Isometry& g, const Isometry& h);

enum class Verdict { Pants, WithElliptics, Reducible, Unknown };

struct LevelSetVerdict {
    Verdict tag = Verdict::Unknown;
    std::vector<McgMove> witness;
    Character reached;
    int steps = 0;
};

const char* verdictName(Verdict v);
LevelSetVerdict classifyLevelSet(const Character& c, int budget = 10000);

struct OrbitOptions {
    double cap = 0; // 0: max(50, 10 * start size)
};
std::vector<Character> orbitSample(const Character& c, int steps, std::uint64_t seed, OrbitOptions opts = {});

} // namespace holo
