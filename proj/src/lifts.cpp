#include "holonomy/lifts.hpp"

#include <cmath>

namespace holo {

double principalLift(const Mat2& m, double x) {
    cplx alpha(0.5 * (m.a + m.d), 0.5 * (m.b - m.c));
    cplx beta(0.5 * (m.a - m.d), -0.5 * (m.b + m.c));
    cplx q = 1.0 + (beta / alpha) * std::polar(1.0, -x);
    return x + 2.0 * (std::arg(alpha) + std::arg(q));
}

int LiftedIsometry::turns() const {
    return static_cast<int>(std::lround((anchor - principalLift(base.m, 0)) / kTwoPi));
}

double LiftedIsometry::eval(double x) const { return principalLift(base.m, x) + kTwoPi * turns(); }

std::string describe(const LiftClass& c) {
    const char* name = "Center";
    switch (c.family) {
    case LiftFamily::Center: name = "Center"; break;
    case LiftFamily::Hyp: name = "Hyp"; break;
    case LiftFamily::ParPlus: name = "ParPlus"; break;
    case LiftFamily::ParMinus: name = "ParMinus"; break;
    case LiftFamily::Ell: name = "Ell"; break;
    }
    return std::string(name) + "(" + std::to_string(c.index) + ")";
}

LiftedIsometry anyLift(const Isometry& g) { return {g, principalLift(g.m, 0)}; }

// Index m with F(phi) - phi = 2 pi m at a fixed point phi.
static int indexAtFixedPoint(const LiftedIsometry& u, double phi) {
    return static_cast<int>(std::lround((u.eval(phi) - phi) / kTwoPi));
}

LiftedIsometry liftSimplest(const Isometry& g) {
    auto cls = classify(g);
    if (cls.kind == IsoKind::Elliptic)
        throw Error(ErrorCode::EllipticHasNoSimplestLift, "use liftElliptic for elliptic elements");
    if (cls.kind == IsoKind::Identity) return {g, 0.0};
    double phi = cls.kind == IsoKind::Hyperbolic ? cls.axis.to.diskAngle() : cls.fixed.diskAngle();
    LiftedIsometry u = anyLift(g);
    int m = indexAtFixedPoint(u, phi);
    u.anchor -= kTwoPi * m;
    return u;
}

LiftedIsometry liftElliptic(const Isometry& g, Sense sense) {
    if (classify(g).kind != IsoKind::Elliptic) throw Error(ErrorCode::NotElliptic, "isometry is not elliptic");
    double a0 = principalLift(g.m, 0);
    double r = a0 - kTwoPi * std::floor(a0 / kTwoPi);
    return {g, sense == Sense::Counterclockwise ? r : r - kTwoPi};
}

LiftedIsometry compose(const LiftedIsometry& u, const LiftedIsometry& v) {
    return {u.base * v.base, u.eval(v.anchor)};
}

LiftedIsometry centerPower(int n) { return {Isometry::identity(), kTwoPi * n}; }

LiftedIsometry invert(const LiftedIsometry& u) {
    Isometry ib = u.base.inverse();
    double y0 = principalLift(ib.m, 0);
    long j = std::lround(u.eval(y0) / kTwoPi);
    return {normalize(ib.m), y0 - kTwoPi * static_cast<double>(j)};
}

LiftClass classifyLift(const LiftedIsometry& u) {
    auto cls = classify(u.base);
    switch (cls.kind) {
    case IsoKind::Identity:
        return {LiftFamily::Center, static_cast<int>(std::lround(u.anchor / kTwoPi))};
    case IsoKind::Hyperbolic:
        return {LiftFamily::Hyp, indexAtFixedPoint(u, cls.axis.to.diskAngle())};
    case IsoKind::Parabolic: {
        double phi = cls.fixed.diskAngle();
        int m = indexAtFixedPoint(u, phi);
        double off = phi + kPi;
        double drift = u.eval(off) - off - kTwoPi * m;
        return {drift > 0 ? LiftFamily::ParPlus : LiftFamily::ParMinus, m};
    }
    case IsoKind::Elliptic: {
        int m = static_cast<int>(std::floor(u.anchor / kTwoPi));
        return {LiftFamily::Ell, u.anchor > 0 ? m + 1 : m};
    }
    }
    return {};
}

double liftedTrace(const LiftedIsometry& u) {
    double sign = (u.turns() % 2 == 0) ? 1.0 : -1.0;
    return sign * u.base.trace();
}

double translationNumber(const LiftedIsometry& u) {
    auto lc = classifyLift(u);
    switch (lc.family) {
    case LiftFamily::Center: return u.anchor;
    case LiftFamily::Hyp:
    case LiftFamily::ParPlus:
    case LiftFamily::ParMinus: return kTwoPi * lc.index;
    case LiftFamily::Ell: {
        double theta = classify(u.base).angle;
        return lc.index >= 1 ? theta + kTwoPi * (lc.index - 1) : theta + kTwoPi * lc.index;
    }
    }
    return 0;
}

LiftedIsometry commutatorLift(const Isometry& g, const Isometry& h) {
    LiftedIsometry lg = anyLift(g), lh = anyLift(h);
    return compose(compose(compose(lg, lh), invert(lg)), invert(lh));
}

Mat2 relatorProduct(const std::vector<Isometry>& gens) {
    Mat2 acc;
    for (size_t i = 0; i + 1 < gens.size(); i += 2) {
        const Mat2& a = gens[i].m;
        const Mat2& b = gens[i + 1].m;
        acc = acc * a * b * a.adjugate() * b.adjugate();
    }
    return acc;
}

SurfaceRepresentation makeRepresentation(int genus, std::vector<Isometry> gens) {
    if (static_cast<int>(gens.size()) != 2 * genus)
        throw Error(ErrorCode::InvariantViolation, "expected " + std::to_string(2 * genus) + " generators");
    SurfaceRepresentation rep{genus, std::move(gens), 0};
    rep.relatorResidual = distanceFromPlusMinusIdentity(relatorProduct(rep.generators));
    if (!(rep.relatorResidual < tol_rel))
        throw Error(ErrorCode::RelatorNotSatisfied, "relator residual " + std::to_string(rep.relatorResidual));
    return rep;
}

SurfaceRepresentation conjugateRepresentation(const SurfaceRepresentation& rep, const Isometry& k) {
    std::vector<Isometry> gens;
    Isometry ki = k.inverse();
    for (const auto& g : rep.generators) gens.push_back(k * g * ki);
    return makeRepresentation(rep.genus, std::move(gens));
}

int eulerNumberClosed(const SurfaceRepresentation& rep) {
    double res = distanceFromPlusMinusIdentity(relatorProduct(rep.generators));
    if (!(res < tol_rel)) throw Error(ErrorCode::RelatorNotSatisfied, "relator residual " + std::to_string(res));
    LiftedIsometry acc = centerPower(0);
    for (int i = 0; i < rep.genus; ++i) acc = compose(acc, commutatorLift(rep.a(i), rep.b(i)));
    double q = acc.anchor / kTwoPi;
    double m = std::round(q);
    if (std::abs(q - m) > 1e-6)
        throw Error(ErrorCode::RelatorNotSatisfied, "lifted relator is not central (F(0)/2pi = " + std::to_string(q) + ")");
    return static_cast<int>(m);
}

int relativeEulerPuncturedTorus(const Isometry& g, const Isometry& h) {
    double t = commutatorTrace(g, h);
    if (std::abs(t) < 2 - tol_class)
        throw Error(ErrorCode::EllipticBoundary, "commutator trace " + std::to_string(t));
    Isometry c = commutator(g, h);
    LiftClass lc = classifyLift(compose(commutatorLift(g, h), liftSimplest(c.inverse())));
    if (lc.family != LiftFamily::Center)
        throw Error(ErrorCode::InvariantViolation, "boundary correction is not central: " + describe(lc));
    int v = lc.index;
    bool negativeRule = t <= -2 + tol_class;
    if ((negativeRule && std::abs(v) != 1) || (!negativeRule && v != 0))
        throw Error(ErrorCode::InvariantViolation,
                    "trace rule and lift disagree (trace " + std::to_string(t) + ", lift " + std::to_string(v) + ")");
    return v;
}

} // namespace holo
