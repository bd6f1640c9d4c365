#pragma once
#include <string>
#include <vector>

#include "holonomy/hyp_core.hpp"

namespace holo {

inline constexpr double tol_rel = 1e-8;

// Element of the universal cover, stored as the base isometry and F(0) for the
// lift F of its boundary-circle map (angle coordinate, counterclockwise).
struct LiftedIsometry {
    Isometry base;
    double anchor = 0;

    double eval(double x) const;
    // Integer k with F = F0 + 2 pi k, where F0 is the principal lift of base.m.
    int turns() const;
};

// Principal lift of a fixed SL2 representative: F0(x) = x + 2 arg(alpha + beta e^{-ix}).
double principalLift(const Mat2& m, double x);

enum class LiftFamily { Center, Hyp, ParPlus, ParMinus, Ell };

struct LiftClass {
    LiftFamily family = LiftFamily::Center;
    int index = 0;
    bool operator==(const LiftClass&) const = default;
};

std::string describe(const LiftClass& c);

LiftedIsometry liftSimplest(const Isometry& g);
LiftedIsometry liftElliptic(const Isometry& g, Sense sense);
LiftedIsometry anyLift(const Isometry& g);
LiftedIsometry compose(const LiftedIsometry& u, const LiftedIsometry& v);
LiftedIsometry centerPower(int n);
LiftedIsometry invert(const LiftedIsometry& u);
LiftClass classifyLift(const LiftedIsometry& u);
double liftedTrace(const LiftedIsometry& u);
// Translation number; exact for the classes handled here.
double translationNumber(const LiftedIsometry& u);
LiftedIsometry commutatorLift(const Isometry& g, const Isometry& h);

struct SurfaceRepresentation {
    int genus = 0;
    std::vector<Isometry> generators; // a1, b1, ..., ag, bg
    double relatorResidual = 0;

    const Isometry& a(int i) const { return generators[2 * i]; }
    const Isometry& b(int i) const { return generators[2 * i + 1]; }
};

// SL2 product of the commutators [a_i, b_i] = a b a^-1 b^-1.
Mat2 relatorProduct(const std::vector<Isometry>& gens);
SurfaceRepresentation makeRepresentation(int genus, std::vector<Isometry> gens);
SurfaceRepresentation conjugateRepresentation(const SurfaceRepresentation& rep, const Isometry& k);
int eulerNumberClosed(const SurfaceRepresentation& rep);
int relativeEulerPuncturedTorus(const Isometry& g, const Isometry& h);

} // namespace holo
