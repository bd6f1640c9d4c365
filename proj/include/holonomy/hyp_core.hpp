#pragma once
#include <array>
#include <complex>
#include <optional>
#include <vector>

#include "holonomy/errors.hpp"

namespace holo {

using cplx = std::complex<double>;

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kTwoPi = 2.0 * kPi;

inline constexpr double tol_det = 1e-12;
inline constexpr double tol_sign = 1e-9;
inline constexpr double tol_class = 1e-9;
inline constexpr double tol_geo = 1e-9;

// Plain 2x2 real matrix; no normalization.
struct Mat2 {
    double a = 1, b = 0, c = 0, d = 1;

    double det() const { return a * d - b * c; }
    double trace() const { return a + d; }
    Mat2 adjugate() const { return {d, -b, -c, a}; }
    Mat2 operator-() const { return {-a, -b, -c, -d}; }
    Mat2 operator*(const Mat2& o) const {
        return {a * o.a + b * o.c, a * o.b + b * o.d, c * o.a + d * o.c, c * o.b + d * o.d};
    }
    double maxAbsDiff(const Mat2& o) const;
    bool operator==(const Mat2& o) const = default;
};

// Distance of an SL2 matrix from {+I, -I} in the operator norm.
double distanceFromPlusMinusIdentity(const Mat2& m);

// PSL2R element with a canonical determinant-one representative.
struct Isometry {
    Mat2 m;

    static Isometry identity() { return {}; }
    double trace() const { return m.trace(); }
    Isometry inverse() const { return {m.adjugate()}; }
    Isometry operator*(const Isometry& o) const;
    bool operator==(const Isometry& o) const = default;
    // Max-entry distance between PSL representatives, sign ambiguity removed.
    double distanceTo(const Isometry& o) const;
};

Isometry normalize(const Mat2& raw);

struct PointH2 {
    double x = 0, y = 1;

    cplx z() const { return {x, y}; }
    static PointH2 fromComplex(cplx w) { return {w.real(), w.imag()}; }
    cplx toDisk() const;
    std::array<double, 2> toKlein() const;
    static PointH2 fromDisk(cplx w);
    static PointH2 fromKlein(std::array<double, 2> k);
};

// Point of the boundary: real number or infinity.
struct IdealPoint {
    bool infinite = false;
    double x = 0;

    static IdealPoint atInfinity() { return {true, 0}; }
    static IdealPoint real(double v) { return {false, v}; }
    cplx onDisk() const;
    double diskAngle() const; // in [0, 2pi)
    bool near(const IdealPoint& o, double tol) const;
};

struct Geodesic {
    IdealPoint from; // repelling end when built from a hyperbolic isometry
    IdealPoint to;   // attracting end

    static Geodesic imaginaryAxis() { return {IdealPoint::real(0), IdealPoint::atInfinity()}; }
};

enum class IsoKind { Identity, Elliptic, Parabolic, Hyperbolic };
enum class Sense { Clockwise, Counterclockwise };

struct IsometryClass {
    IsoKind kind = IsoKind::Identity;
    double angle = 0;   // elliptic: counterclockwise rotation angle in (0, 2pi)
    PointH2 center;     // elliptic
    IdealPoint fixed;   // parabolic
    Sense sense = Sense::Counterclockwise; // parabolic boundary motion
    double length = 0;  // hyperbolic translation length
    Geodesic axis;      // hyperbolic
    double margin = 0;  // | |Tr| - 2 |
};

struct CollarData {
    double t = 0;
    double d = 0;
    double w = 0;
};

PointH2 apply(const Isometry& g, const PointH2& p);
IdealPoint apply(const Isometry& g, const IdealPoint& p);
IsometryClass classify(const Isometry& g);

// Ideal fixed points of a hyperbolic or parabolic isometry (one or two).
std::vector<IdealPoint> idealFixedPoints(const Isometry& g);

double distance(const PointH2& p, const PointH2& q);
double distanceToGeodesic(const PointH2& p, const Geodesic& g);
// Signed: positive on the left of the oriented geodesic.
double signedDistanceToGeodesic(const PointH2& p, const Geodesic& g);
double distanceToSegment(const PointH2& p, const PointH2& a, const PointH2& b);

Isometry halfTurn(const PointH2& p);
Isometry ellipticAbout(const PointH2& p, double angle);
Isometry hyperbolicTranslation(const Geodesic& axis, double length);
// Orientation preserving map sending 0 to axis.from and infinity to axis.to.
Isometry standardFrame(const Geodesic& axis);
// Orientation preserving map sending i to p.
Isometry pointFrame(const PointH2& p);
// Unique orientation preserving isometry with p0 -> q0 and p1 -> q1 (equal lengths assumed).
Isometry isometryMapping(const PointH2& p0, const PointH2& p1, const PointH2& q0, const PointH2& q1);

// Point of the geodesic at arclength s from the foot of i (for the standard frame),
// pushed a signed distance delta to the left.
PointH2 fermiPoint(const Geodesic& axis, double s, double delta);
// Inverse of fermiPoint: {s, delta}.
std::array<double, 2> fermiCoordinates(const Geodesic& axis, const PointH2& p);

Isometry commutator(const Isometry& g, const Isometry& h);
double commutatorTrace(const Isometry& g, const Isometry& h);

bool axesCross(const Geodesic& a, const Geodesic& b);
bool segmentsIntersect(const std::array<double, 2>& p1, const std::array<double, 2>& p2,
                       const std::array<double, 2>& q1, const std::array<double, 2>& q2);

struct CommutatorGeometry {
    IsometryClass cls;
    std::vector<IdealPoint> idealFixed;
    std::optional<PointH2> interiorFixed;
    // Hyperbolic-pair diagnostics (set when both g and h are hyperbolic with crossing axes).
    bool crossingAxes = false;
    bool axisSeparated = false;   // commutator axis disjoint from both axes
    bool arcRuleHolds = false;    // fixed points on the arc g+ .. h+ in the stated order
    bool fixedInRegion = false;   // elliptic centre inside the region bounded by the axes and the arc
    int arcDirection = 0;         // +1 if the arc from g+ to h+ runs counterclockwise
};

CommutatorGeometry commutatorGeometry(const Isometry& g, const Isometry& h);
bool shareFixedPoint(const Isometry& g, const Isometry& h);

CollarData collar(double t);

} // namespace holo
