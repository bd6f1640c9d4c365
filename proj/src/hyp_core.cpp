#include "holonomy/hyp_core.hpp"

#include <algorithm>
#include <cmath>

namespace holo {

const char* errorName(ErrorCode code) {
    switch (code) {
    case ErrorCode::NonPositiveDeterminant: return "NonPositiveDeterminant";
    case ErrorCode::SharedFixedPoint: return "SharedFixedPoint";
    case ErrorCode::NotHyperbolicTrace: return "NotHyperbolicTrace";
    case ErrorCode::EllipticHasNoSimplestLift: return "EllipticHasNoSimplestLift";
    case ErrorCode::NotElliptic: return "NotElliptic";
    case ErrorCode::RelatorNotSatisfied: return "RelatorNotSatisfied";
    case ErrorCode::EllipticBoundary: return "EllipticBoundary";
    case ErrorCode::NotRealizable: return "NotRealizable";
    case ErrorCode::NotConjugate: return "NotConjugate";
    case ErrorCode::WrongRegime: return "WrongRegime";
    case ErrorCode::DegeneratePentagon: return "DegeneratePentagon";
    case ErrorCode::ElementaryRepresentation: return "ElementaryRepresentation";
    case ErrorCode::NotVAPair: return "NotVAPair";
    case ErrorCode::CommutatorMismatch: return "CommutatorMismatch";
    case ErrorCode::NoWitness: return "NoWitness";
    case ErrorCode::RootNotBracketed: return "RootNotBracketed";
    case ErrorCode::OutOfDisc: return "OutOfDisc";
    case ErrorCode::IdentityCurve: return "IdentityCurve";
    case ErrorCode::InvariantViolation: return "InvariantViolation";
    case ErrorCode::DriftExceeded: return "DriftExceeded";
    case ErrorCode::ParseError: return "ParseError";
    }
    return "Unknown";
}

double Mat2::maxAbsDiff(const Mat2& o) const {
    return std::max({std::abs(a - o.a), std::abs(b - o.b), std::abs(c - o.c), std::abs(d - o.d)});
}

double distanceFromPlusMinusIdentity(const Mat2& m) {
    auto opNorm = [](const Mat2& x) {
        // largest singular value of a 2x2 matrix
        double s = x.a * x.a + x.b * x.b + x.c * x.c + x.d * x.d;
        double det = x.det();
        double disc = std::sqrt(std::max(0.0, s * s / 4 - det * det));
        return std::sqrt(s / 2 + disc);
    };
    Mat2 plus{m.a - 1, m.b, m.c, m.d - 1};
    Mat2 minus{m.a + 1, m.b, m.c, m.d + 1};
    return std::min(opNorm(plus), opNorm(minus));
}

Isometry normalize(const Mat2& raw) {
    double det = raw.det();
    if (!(det > tol_det)) throw Error(ErrorCode::NonPositiveDeterminant, "determinant " + std::to_string(det));
    double s = std::sqrt(det);
    Mat2 m{raw.a / s, raw.b / s, raw.c / s, raw.d / s};
    double tr = m.trace();
    bool flip = false;
    if (tr > tol_sign) {
        flip = false;
    } else if (tr < -tol_sign) {
        flip = true;
    } else {
        for (double e : {m.a, m.b, m.c}) {
            if (std::abs(e) > tol_sign) {
                flip = e < 0;
                break;
            }
        }
    }
    return {flip ? -m : m};
}

Isometry Isometry::operator*(const Isometry& o) const { return normalize(m * o.m); }

double Isometry::distanceTo(const Isometry& o) const {
    return std::min(m.maxAbsDiff(o.m), m.maxAbsDiff(-o.m));
}

cplx PointH2::toDisk() const {
    cplx w = z();
    return (w - cplx(0, 1)) / (w + cplx(0, 1));
}

std::array<double, 2> PointH2::toKlein() const {
    cplx w = toDisk();
    double s = 2.0 / (1.0 + std::norm(w));
    return {w.real() * s, w.imag() * s};
}

PointH2 PointH2::fromDisk(cplx w) {
    cplx z = cplx(0, 1) * (cplx(1, 0) + w) / (cplx(1, 0) - w);
    return {z.real(), z.imag()};
}

PointH2 PointH2::fromKlein(std::array<double, 2> k) {
    double r2 = k[0] * k[0] + k[1] * k[1];
    double s = 1.0 / (1.0 + std::sqrt(std::max(0.0, 1.0 - r2)));
    return fromDisk(cplx(k[0] * s, k[1] * s));
}

cplx IdealPoint::onDisk() const {
    if (infinite) return {1, 0};
    cplx w = cplx(x, -1) / cplx(x, 1);
    return w / std::abs(w);
}

double IdealPoint::diskAngle() const {
    double t = std::arg(onDisk());
    return t < 0 ? t + kTwoPi : t;
}

bool IdealPoint::near(const IdealPoint& o, double tol) const {
    return std::abs(onDisk() - o.onDisk()) < tol;
}

PointH2 apply(const Isometry& g, const PointH2& p) {
    const Mat2& m = g.m;
    cplx z = p.z();
    cplx w = (m.a * z + m.b) / (m.c * z + m.d);
    return {w.real(), std::max(w.imag(), 1e-300)};
}

IdealPoint apply(const Isometry& g, const IdealPoint& p) {
    const Mat2& m = g.m;
    if (p.infinite) {
        if (m.c == 0) return IdealPoint::atInfinity();
        return IdealPoint::real(m.a / m.c);
    }
    double den = m.c * p.x + m.d;
    if (den == 0) return IdealPoint::atInfinity();
    return IdealPoint::real((m.a * p.x + m.b) / den);
}

static std::vector<IdealPoint> rootsOfFixedEquation(const Mat2& m, double disc) {
    // c z^2 + (d - a) z - b = 0
    if (m.c == 0) {
        if (std::abs(m.d - m.a) < 1e-300) return {IdealPoint::atInfinity()};
        return {IdealPoint::real(m.b / (m.d - m.a)), IdealPoint::atInfinity()};
    }
    if (disc <= 0) return {IdealPoint::real((m.a - m.d) / (2 * m.c))};
    double s = std::sqrt(disc);
    return {IdealPoint::real((m.a - m.d - s) / (2 * m.c)), IdealPoint::real((m.a - m.d + s) / (2 * m.c))};
}

std::vector<IdealPoint> idealFixedPoints(const Isometry& g) {
    auto cls = classify(g);
    if (cls.kind == IsoKind::Hyperbolic) return {cls.axis.from, cls.axis.to};
    if (cls.kind == IsoKind::Parabolic) return {cls.fixed};
    return {};
}

IsometryClass classify(const Isometry& g) {
    const Mat2& m = g.m;
    IsometryClass out;
    double tr = std::abs(m.trace());
    out.margin = std::abs(tr - 2);
    if (tr < 2 - tol_class) {
        out.kind = IsoKind::Elliptic;
        double s = std::sqrt(4 - tr * tr);
        double sg = m.c > 0 ? 1.0 : -1.0;
        cplx z0 = cplx(m.a - m.d, sg * s) / (2 * m.c);
        out.center = {z0.real(), z0.imag()};
        cplx der = 1.0 / ((m.c * z0 + m.d) * (m.c * z0 + m.d));
        double ang = std::arg(der);
        if (ang <= 0) ang += kTwoPi;
        out.angle = ang;
        return out;
    }
    if (tr > 2 + tol_class) {
        out.kind = IsoKind::Hyperbolic;
        out.length = 2 * std::acosh(tr / 2);
        auto roots = rootsOfFixedEquation(m, tr * tr - 4);
        auto derivativeAbs = [&](const IdealPoint& p) {
            if (p.infinite) return std::abs(m.d / m.a); // derivative at infinity in the chart 1/z
            double den = m.c * p.x + m.d;
            return 1.0 / (den * den);
        };
        IdealPoint p0 = roots[0], p1 = roots[1];
        if (derivativeAbs(p0) < derivativeAbs(p1)) std::swap(p0, p1);
        out.axis = {p0, p1}; // repelling first (derivative > 1)
        return out;
    }
    if (std::abs(m.b) < tol_class && std::abs(m.c) < tol_class) {
        out.kind = IsoKind::Identity;
        return out;
    }
    out.kind = IsoKind::Parabolic;
    Mat2 n = m.trace() < 0 ? -m : m;
    if (std::abs(n.c) < 1e-300) {
        out.fixed = IdealPoint::atInfinity();
    } else {
        out.fixed = IdealPoint::real((n.a - n.d) / (2 * n.c));
    }
    out.sense = (n.b - n.c) > 0 ? Sense::Counterclockwise : Sense::Clockwise;
    return out;
}

double distance(const PointH2& p, const PointH2& q) {
    double dx = p.x - q.x, dy = p.y - q.y;
    double e = std::sqrt(dx * dx + dy * dy);
    return 2 * std::asinh(e / (2 * std::sqrt(p.y * q.y)));
}

double signedDistanceToGeodesic(const PointH2& p, const Geodesic& g) {
    PointH2 w = apply(standardFrame(g).inverse(), p);
    return std::asinh(-w.x / w.y);
}

double distanceToGeodesic(const PointH2& p, const Geodesic& g) {
    return std::abs(signedDistanceToGeodesic(p, g));
}

double distanceToSegment(const PointH2& p, const PointH2& a, const PointH2& b) {
    // move a to i and b onto the imaginary axis above it
    double len = distance(a, b);
    if (len < 1e-15) return distance(p, a);
    Isometry frame = isometryMapping(PointH2{0, 1}, PointH2{0, std::exp(len)}, a, b);
    PointH2 w = apply(frame.inverse(), p);
    double r = std::abs(w.z());
    if (r <= 1) return distance(w, PointH2{0, 1});
    if (r >= std::exp(len)) return distance(w, PointH2{0, std::exp(len)});
    return std::asinh(std::abs(w.x) / w.y);
}

Isometry pointFrame(const PointH2& p) {
    double s = std::sqrt(p.y);
    return normalize({s, p.x / s, 0, 1 / s});
}

Isometry halfTurn(const PointH2& p) {
    Isometry f = pointFrame(p);
    return f * Isometry{{0, 1, -1, 0}} * f.inverse();
}

Isometry ellipticAbout(const PointH2& p, double angle) {
    Isometry f = pointFrame(p);
    double c = std::cos(angle / 2), s = std::sin(angle / 2);
    return f * normalize({c, s, -s, c}) * f.inverse();
}

Isometry standardFrame(const Geodesic& axis) {
    const IdealPoint& u = axis.from;
    const IdealPoint& v = axis.to;
    if (v.infinite) return normalize({1, u.x, 0, 1});
    if (u.infinite) return normalize({v.x, -1, 1, 0});
    if (v.x > u.x) return normalize({v.x, u.x, 1, 1});
    return normalize({-v.x, u.x, -1, 1});
}

Isometry hyperbolicTranslation(const Geodesic& axis, double length) {
    Isometry s = standardFrame(axis);
    double e = std::exp(length / 2);
    return s * normalize({e, 0, 0, 1 / e}) * s.inverse();
}

Isometry isometryMapping(const PointH2& p0, const PointH2& p1, const PointH2& q0, const PointH2& q1) {
    auto frameFor = [](const PointH2& a, const PointH2& b) {
        Isometry f = pointFrame(a);
        PointH2 w = apply(f.inverse(), b);
        double psi = std::arg(w.toDisk());
        // rotation about i by psi moves the upward direction to w
        return f * ellipticAbout(PointH2{0, 1}, psi);
    };
    return frameFor(q0, q1) * frameFor(p0, p1).inverse();
}

PointH2 fermiPoint(const Geodesic& axis, double s, double delta) {
    double r = std::exp(s);
    PointH2 w{-r * std::tanh(delta), r / std::cosh(delta)};
    return apply(standardFrame(axis), w);
}

std::array<double, 2> fermiCoordinates(const Geodesic& axis, const PointH2& p) {
    PointH2 w = apply(standardFrame(axis).inverse(), p);
    return {std::log(std::abs(w.z())), std::asinh(-w.x / w.y)};
}

Isometry commutator(const Isometry& g, const Isometry& h) {
    return normalize(g.m * h.m * g.m.adjugate() * h.m.adjugate());
}

double commutatorTrace(const Isometry& g, const Isometry& h) {
    return (g.m * h.m * g.m.adjugate() * h.m.adjugate()).trace();
}

static double orient(const std::array<double, 2>& a, const std::array<double, 2>& b, const std::array<double, 2>& c) {
    return (b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0]);
}

bool segmentsIntersect(const std::array<double, 2>& p1, const std::array<double, 2>& p2,
                       const std::array<double, 2>& q1, const std::array<double, 2>& q2) {
    const double eps = 1e-14;
    double d1 = orient(q1, q2, p1), d2 = orient(q1, q2, p2);
    double d3 = orient(p1, p2, q1), d4 = orient(p1, p2, q2);
    auto sgn = [&](double v) { return v > eps ? 1 : (v < -eps ? -1 : 0); };
    int s1 = sgn(d1), s2 = sgn(d2), s3 = sgn(d3), s4 = sgn(d4);
    if (s1 * s2 < 0 && s3 * s4 < 0) return true;
    auto onSeg = [&](const std::array<double, 2>& a, const std::array<double, 2>& b, const std::array<double, 2>& c) {
        return std::min(a[0], b[0]) - eps <= c[0] && c[0] <= std::max(a[0], b[0]) + eps &&
               std::min(a[1], b[1]) - eps <= c[1] && c[1] <= std::max(a[1], b[1]) + eps;
    };
    if (s1 == 0 && onSeg(q1, q2, p1)) return true;
    if (s2 == 0 && onSeg(q1, q2, p2)) return true;
    if (s3 == 0 && onSeg(p1, p2, q1)) return true;
    if (s4 == 0 && onSeg(p1, p2, q2)) return true;
    return false;
}

// Position of angle t on the circle measured counterclockwise from start, in [0, 2pi).
static double ccwFrom(double start, double t) {
    double v = std::fmod(t - start, kTwoPi);
    return v < 0 ? v + kTwoPi : v;
}

bool axesCross(const Geodesic& a, const Geodesic& b) {
    double a0 = a.from.diskAngle(), a1 = a.to.diskAngle();
    double b0 = ccwFrom(a0, b.from.diskAngle()), b1 = ccwFrom(a0, b.to.diskAngle());
    double span = ccwFrom(a0, a1);
    const double eps = 1e-12;
    if (b0 < eps || b1 < eps || std::abs(b0 - span) < eps || std::abs(b1 - span) < eps) return false;
    return (b0 < span) != (b1 < span);
}

static bool pointsNear(const PointH2& p, const PointH2& q) { return distance(p, q) < 1e-9; }

bool shareFixedPoint(const Isometry& g, const Isometry& h) {
    auto cg = classify(g), ch = classify(h);
    if (cg.kind == IsoKind::Identity || ch.kind == IsoKind::Identity) return true;
    if (cg.kind == IsoKind::Elliptic || ch.kind == IsoKind::Elliptic) {
        if (cg.kind != ch.kind) return false;
        return pointsNear(cg.center, ch.center);
    }
    for (const auto& p : idealFixedPoints(g))
        for (const auto& q : idealFixedPoints(h))
            if (p.near(q, 1e-9)) return true;
    return false;
}

CommutatorGeometry commutatorGeometry(const Isometry& g, const Isometry& h) {
    if (shareFixedPoint(g, h)) throw Error(ErrorCode::SharedFixedPoint, "g and h have a common fixed point");
    CommutatorGeometry out;
    Isometry c = commutator(g, h);
    out.cls = classify(c);
    if (out.cls.kind == IsoKind::Elliptic) out.interiorFixed = out.cls.center;
    out.idealFixed = idealFixedPoints(c);

    auto cg = classify(g), ch = classify(h);
    if (cg.kind != IsoKind::Hyperbolic || ch.kind != IsoKind::Hyperbolic) return out;
    if (!axesCross(cg.axis, ch.axis)) return out;
    out.crossingAxes = true;

    double gp = cg.axis.to.diskAngle(), hp = ch.axis.to.diskAngle();
    double gm = cg.axis.from.diskAngle(), hm = ch.axis.from.diskAngle();
    double toH = ccwFrom(gp, hp);
    bool ccw = toH < ccwFrom(gp, gm) && toH < ccwFrom(gp, hm);
    out.arcDirection = ccw ? 1 : -1;
    double arcLen = ccw ? toH : ccwFrom(hp, gp);
    // parameter along the arc starting at g+
    auto along = [&](double t) { return ccw ? ccwFrom(gp, t) : ccwFrom(t, gp); };
    auto inArc = [&](double t) {
        double s = along(t);
        return s > 1e-12 && s < arcLen - 1e-12;
    };

    if (out.cls.kind == IsoKind::Hyperbolic) {
        double cp = out.cls.axis.to.diskAngle(), cm = out.cls.axis.from.diskAngle();
        out.axisSeparated = !axesCross(out.cls.axis, cg.axis) && !axesCross(out.cls.axis, ch.axis);
        out.arcRuleHolds = inArc(cp) && inArc(cm) && along(cp) < along(cm);
    } else if (out.cls.kind == IsoKind::Parabolic) {
        out.arcRuleHolds = inArc(out.cls.fixed.diskAngle());
    } else if (out.cls.kind == IsoKind::Elliptic) {
        // region bounded by the two axes and the arc: a Klein-model triangle
        cplx gpD = cg.axis.to.onDisk(), hpD = ch.axis.to.onDisk();
        std::array<double, 2> A{gpD.real(), gpD.imag()}, B{hpD.real(), hpD.imag()};
        cplx gmD = cg.axis.from.onDisk(), hmD = ch.axis.from.onDisk();
        // intersection of chords g-g+ and h-h+
        std::array<double, 2> P{gmD.real(), gmD.imag()}, Q{hmD.real(), hmD.imag()};
        double den = (A[0] - P[0]) * (B[1] - Q[1]) - (A[1] - P[1]) * (B[0] - Q[0]);
        double tpar = ((Q[0] - P[0]) * (B[1] - Q[1]) - (Q[1] - P[1]) * (B[0] - Q[0])) / den;
        std::array<double, 2> X{P[0] + tpar * (A[0] - P[0]), P[1] + tpar * (A[1] - P[1])};
        auto k = out.cls.center.toKlein();
        // wedge at X between the rays to g+ and h+, cut off by the circle
        double side = orient(X, A, B);
        double o1 = orient(X, A, k), o3 = orient(B, X, k);
        out.fixedInRegion = side * o1 > 0 && side * o3 > 0;
    }
    return out;
}

CollarData collar(double t) {
    if (!(std::abs(t) > 2 + tol_class)) throw Error(ErrorCode::NotHyperbolicTrace, "trace " + std::to_string(t));
    CollarData out;
    out.t = t;
    out.d = 2 * std::acosh(std::abs(t) / 2);
    out.w = std::asinh(1 / std::sinh(out.d / 2));
    return out;
}

} // namespace holo
