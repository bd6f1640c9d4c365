#include "holonomy/char_torus.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "holonomy/lifts.hpp"

namespace holo {

double kappaOf(double x, double y, double z) { return x * x + y * y + z * z - x * y * z - 2; }

Character canonical(double x, double y, double z) {
    const std::array<std::array<double, 3>, 4> cand{{{x, y, z}, {-x, -y, z}, {-x, y, -z}, {x, -y, -z}}};
    auto greater = [](const std::array<double, 3>& a, const std::array<double, 3>& b) {
        for (int i = 0; i < 3; ++i) {
            if (a[i] > b[i] + tol_sign) return true;
            if (a[i] < b[i] - tol_sign) return false;
        }
        return false;
    };
    auto best = cand[0];
    for (int i = 1; i < 4; ++i)
        if (greater(cand[i], best)) best = cand[i];
    return {best[0], best[1], best[2], kappaOf(x, y, z)};
}

Character Character::make(double x, double y, double z) { return canonical(x, y, z); }

Character characterOf(const Isometry& g, const Isometry& h) {
    return canonical(g.m.trace(), h.m.trace(), (g.m * h.m).trace());
}

bool sameCharacter(const Character& a, const Character& b, double tol) {
    auto close = [tol](double u, double v) { return std::abs(u - v) <= tol * std::max(1.0, std::abs(v)); };
    if (close(a.x, b.x) && close(a.y, b.y) && close(a.z, b.z)) return true;
    // near-zero coordinates can flip the canonical sign choice; compare whole sign classes
    const std::array<std::array<double, 3>, 4> cand{
        {{b.x, b.y, b.z}, {-b.x, -b.y, b.z}, {-b.x, b.y, -b.z}, {b.x, -b.y, -b.z}}};
    for (const auto& t : cand)
        if (close(a.x, t[0]) && close(a.y, t[1]) && close(a.z, t[2])) return true;
    return false;
}

Isometry mirror(const Isometry& g) { return normalize({g.m.a, -g.m.b, -g.m.c, g.m.d}); }

// SL2 matrices with traces (x, y, tr GH) = (x, y, z).
static bool realizeRaw(double x, double y, double z, Mat2& G, Mat2& H, int depth = 0) {
    double k = kappaOf(x, y, z);
    if (std::abs(z) >= 2) {
        double r = std::sqrt(std::max(0.0, z * z - 4));
        double s = (-z - std::copysign(r, z)) / 2;
        G = {x, 1, -1, 0};
        H = {0, s, -1 / s, y};
        return true;
    }
    if (k >= 2 - 1e-12) {
        double c = z / 2, s = std::sqrt(1 - c * c);
        Mat2 R{c, s, -s, c};
        double u = (y - x * c) / s;
        double disc = std::max(0.0, u * u + x * x - 4);
        double cc = (-u + std::sqrt(disc)) / 2;
        G = {x / 2, cc + u, cc, x / 2};
        H = G.adjugate() * R;
        return true;
    }
    if (depth > 0) return false;
    Mat2 P, Q;
    if (std::abs(x) > 2 && realizeRaw(y, z, x, P, Q, 1)) {
        G = (P * Q).adjugate();
        H = P;
        return true;
    }
    if (std::abs(y) > 2 && realizeRaw(z, x, y, P, Q, 1)) {
        G = Q;
        H = (P * Q).adjugate();
        return true;
    }
    return false;
}

Realization realize(const Character& c) {
    double k = kappaOf(c.x, c.y, c.z);
    double mx = std::max({std::abs(c.x), std::abs(c.y), std::abs(c.z)});
    if (k < 2 - 1e-9 && !(mx > 2))
        throw Error(ErrorCode::NotRealizable, "kappa " + std::to_string(k) + " < 2 with all coordinates in [-2,2]");
    Mat2 G, H;
    if (!realizeRaw(c.x, c.y, c.z, G, H)) throw Error(ErrorCode::NotRealizable, "no real construction");
    Realization out{normalize(G), normalize(H), std::abs(k - 2) <= 1e-9};
    if (k < 2 - 1e-9) {
        // fix the orientation class: commutator lift index nonpositive
        auto lc = classifyLift(commutatorLift(out.g, out.h));
        if (lc.index > 0) {
            out.g = mirror(out.g);
            out.h = mirror(out.h);
        }
    }
    return out;
}

static Isometry standardForm(const IsometryClass& cls, const Isometry& a) {
    switch (cls.kind) {
    case IsoKind::Hyperbolic: return standardFrame(cls.axis);
    case IsoKind::Elliptic: return pointFrame(cls.center);
    case IsoKind::Parabolic: {
        Isometry F = cls.fixed.infinite ? Isometry::identity() : normalize({cls.fixed.x, -1, 1, 0});
        Isometry N = F.inverse() * a * F;
        double s = N.m.b / N.m.a;
        double mu = std::sqrt(std::abs(s));
        return F * normalize({mu, 0, 0, 1 / mu});
    }
    case IsoKind::Identity: return Isometry::identity();
    }
    return Isometry::identity();
}

Isometry conjugator(const Isometry& a, const Isometry& b) {
    auto ca = classify(a), cb = classify(b);
    if (ca.kind != cb.kind) throw Error(ErrorCode::NotConjugate, "different isometry classes");
    if (ca.kind == IsoKind::Hyperbolic && std::abs(ca.length - cb.length) > 1e-8)
        throw Error(ErrorCode::NotConjugate, "translation lengths differ");
    if (ca.kind == IsoKind::Elliptic && std::abs(ca.angle - cb.angle) > 1e-8)
        throw Error(ErrorCode::NotConjugate, "rotation angles differ");
    if (ca.kind == IsoKind::Parabolic && ca.sense != cb.sense)
        throw Error(ErrorCode::NotConjugate, "parabolic senses differ");
    return standardForm(cb, b) * standardForm(ca, a).inverse();
}

std::pair<Isometry, Isometry> alignCommutator(const Isometry& g, const Isometry& h, const Isometry& target) {
    Isometry k = conjugator(commutator(g, h), target);
    Isometry ki = k.inverse();
    Isometry g2 = k * g * ki, h2 = k * h * ki;
    Isometry c2 = commutator(g2, h2);
    double scale = std::max({1.0, std::abs(target.m.a), std::abs(target.m.b), std::abs(target.m.c), std::abs(target.m.d)});
    if (c2.distanceTo(target) > 1e-8 * scale)
        throw Error(ErrorCode::NotConjugate, "alignment residual " + std::to_string(c2.distanceTo(target)));
    return {g2, h2};
}

bool inVirtuallyAbelianSet(const Character& c) {
    std::array<double, 3> v{std::abs(c.x), std::abs(c.y), std::abs(c.z)};
    std::sort(v.begin(), v.end());
    return v[0] < 1e-8 && v[1] < 1e-8 && v[2] > 2 + tol_class;
}

bool isVirtuallyAbelian(const Isometry& g, const Isometry& h) {
    std::array<Isometry, 3> e{g, h, g * h};
    std::array<IsometryClass, 3> cl{classify(e[0]), classify(e[1]), classify(e[2])};
    auto halfTurnAt = [&](int i) {
        return cl[i].kind == IsoKind::Elliptic && std::abs(cl[i].angle - kPi) < 1e-8;
    };
    for (int i = 0; i < 3; ++i) {
        int j = (i + 1) % 3, k = (i + 2) % 3;
        if (!halfTurnAt(i) || !halfTurnAt(j)) continue;
        if (distance(cl[i].center, cl[j].center) <= tol_geo) continue;
        if (cl[k].kind != IsoKind::Hyperbolic) continue;
        if (distanceToGeodesic(cl[i].center, cl[k].axis) < 1e-8 && distanceToGeodesic(cl[j].center, cl[k].axis) < 1e-8)
            return true;
    }
    return false;
}

const char* moveName(McgMove mv) {
    switch (mv) {
    case McgMove::TwistA: return "TwistA";
    case McgMove::TwistAInv: return "TwistA^-1";
    case McgMove::TwistB: return "TwistB";
    case McgMove::TwistBInv: return "TwistB^-1";
    case McgMove::SwapInvert: return "SwapInvert";
    case McgMove::InvertB: return "InvertB";
    }
    return "?";
}

McgMove inverseMove(McgMove mv) {
    switch (mv) {
    case McgMove::TwistA: return McgMove::TwistAInv;
    case McgMove::TwistAInv: return McgMove::TwistA;
    case McgMove::TwistB: return McgMove::TwistBInv;
    case McgMove::TwistBInv: return McgMove::TwistB;
    default: return mv;
    }
}

std::array<double, 3> moveTriple(McgMove mv, double x, double y, double z) {
    switch (mv) {
    case McgMove::TwistA: return {x, z, std::fma(x, z, -y)};
    case McgMove::TwistAInv: return {x, std::fma(x, y, -z), y};
    case McgMove::TwistB: return {z, y, std::fma(y, z, -x)};
    case McgMove::TwistBInv: return {std::fma(x, y, -z), y, x};
    case McgMove::SwapInvert: return {y, x, z};
    case McgMove::InvertB: return {x, y, std::fma(x, y, -z)};
    }
    return {x, y, z};
}

Character applyMove(McgMove mv, const Character& c) {
    auto t = moveTriple(mv, c.x, c.y, c.z);
    return canonical(t[0], t[1], t[2]);
}

std::pair<Isometry, Isometry> applyMoveMatrices(McgMove mv, const Isometry& g, const Isometry& h) {
    switch (mv) {
    case McgMove::TwistA: return {g, g * h};
    case McgMove::TwistAInv: return {g, g.inverse() * h};
    case McgMove::TwistB: return {g * h, h};
    case McgMove::TwistBInv: return {g * h.inverse(), h};
    case McgMove::SwapInvert: return {h.inverse(), g.inverse()};
    case McgMove::InvertB: return {g, h.inverse()};
    }
    return {g, h};
}

Isometry boundaryElement(const Isometry& g, const Isometry& h) {
    return normalize(g.m.adjugate() * h.m.adjugate() * g.m * h.m);
}

namespace {
struct MoveBook {
    Word oldG, oldH; // old pair in new letters
    Word k;          // conjugator in old letters
    int eps;
};

MoveBook bookkeeping(McgMove mv) {
    switch (mv) {
    case McgMove::TwistA: return {{1}, {-1, 2}, {}, 1};
    case McgMove::TwistAInv: return {{1}, {1, 2}, {}, 1};
    case McgMove::TwistB: return {{1, -2}, {2}, {-2}, 1};
    case McgMove::TwistBInv: return {{1, 2}, {2}, {2}, 1};
    case McgMove::SwapInvert: return {{-2}, {-1}, {2, 1}, -1};
    case McgMove::InvertB: return {{1}, {-2}, {2}, -1};
    }
    return {{1}, {2}, {}, 1};
}
} // namespace

TrackedPair trackMoves(const Isometry& g, const Isometry& h, const std::vector<McgMove>& moves) {
    TrackedPair t{g, h, Isometry::identity(), 1, {1}, {2}, {}};
    for (McgMove mv : moves) {
        MoveBook bk = bookkeeping(mv);
        Isometry k = evaluate(bk.k, {t.g, t.h});
        auto [ng, nh] = applyMoveMatrices(mv, t.g, t.h);
        std::vector<Word> toNew{bk.oldG, bk.oldH};
        t.K = k * t.K;
        t.E *= bk.eps;
        t.startG = substitute(t.startG, toNew);
        t.startH = substitute(t.startH, toNew);
        t.conjugatorWord = substitute(concat(bk.k, t.conjugatorWord), toNew);
        t.g = ng;
        t.h = nh;
    }
    return t;
}

const char* verdictName(Verdict v) {
    switch (v) {
    case Verdict::Pants: return "Pants";
    case Verdict::WithElliptics: return "WithElliptics";
    case Verdict::Reducible: return "Reducible";
    case Verdict::Unknown: return "Unknown";
    }
    return "?";
}

static double sizeOf(const std::array<double, 3>& t) {
    return std::max({std::abs(t[0]), std::abs(t[1]), std::abs(t[2])});
}

LevelSetVerdict classifyLevelSet(const Character& c, int budget) {
    double k = kappaOf(c.x, c.y, c.z);
    LevelSetVerdict out;
    out.reached = c;
    if (std::abs(k - 2) <= 1e-9) {
        out.tag = Verdict::Reducible;
        return out;
    }
    if (k < 2 - 1e-9) throw Error(ErrorCode::WrongRegime, "kappa " + std::to_string(k) + " <= 2");
    const McgMove order[] = {McgMove::TwistA, McgMove::TwistAInv, McgMove::TwistB, McgMove::TwistBInv,
                             McgMove::SwapInvert};
    std::array<double, 3> cur{c.x, c.y, c.z};
    for (int step = 0; step <= budget; ++step) {
        out.steps = step;
        out.reached = canonical(cur[0], cur[1], cur[2]);
        if (std::abs(cur[0]) < 2 - 1e-12 || std::abs(cur[1]) < 2 - 1e-12 || std::abs(cur[2]) < 2 - 1e-12) {
            out.tag = Verdict::WithElliptics;
            return out;
        }
        if (step == budget) break;
        double size = sizeOf(cur);
        bool moved = false;
        for (McgMove mv : order) {
            auto next = moveTriple(mv, cur[0], cur[1], cur[2]);
            if (sizeOf(next) < size - 1e-12 * std::max(1.0, size)) {
                cur = next;
                out.witness.push_back(mv);
                moved = true;
                break;
            }
        }
        if (!moved) {
            out.tag = cur[0] * cur[1] * cur[2] < 0 ? Verdict::Pants : Verdict::Unknown;
            return out;
        }
    }
    out.tag = Verdict::Unknown;
    return out;
}

std::vector<Character> orbitSample(const Character& c, int steps, std::uint64_t seed, OrbitOptions opts) {
    double k0 = kappaOf(c.x, c.y, c.z);
    if (!(k0 > 2)) throw Error(ErrorCode::WrongRegime, "kappa " + std::to_string(k0) + " <= 2");
    std::array<double, 3> cur{c.x, c.y, c.z};
    double cap = opts.cap > 0 ? opts.cap : std::max(50.0, 10 * sizeOf(cur));
    std::mt19937_64 rng(seed);
    std::vector<Character> out;
    out.reserve(static_cast<size_t>(steps) + 1);
    out.push_back(canonical(cur[0], cur[1], cur[2]));
    for (int i = 0; i < steps; ++i) {
        McgMove mv = kAllMoves[rng() % 6];
        auto next = moveTriple(mv, cur[0], cur[1], cur[2]);
        if (sizeOf(next) <= cap) cur = next;
        double drift = std::abs(kappaOf(cur[0], cur[1], cur[2]) - k0);
        if (drift > 1e-6) throw Error(ErrorCode::DriftExceeded, "kappa drift " + std::to_string(drift));
        out.push_back(canonical(cur[0], cur[1], cur[2]));
    }
    return out;
}

} // namespace holo
