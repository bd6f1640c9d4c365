#include "holonomy/pentagon.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <deque>
#include <random>
#include <set>
#include <tuple>

namespace holo {

namespace {
using K2 = std::array<double, 2>;

double cross(const K2& u, const K2& v) { return u[0] * v[1] - u[1] * v[0]; }

// Point at fraction t of the geodesic segment a -> b.
PointH2 along(const PointH2& a, const PointH2& b, double t) {
    double len = distance(a, b);
    if (len < 1e-15) return a;
    Isometry f = isometryMapping(PointH2{0, 1}, PointH2{0, std::exp(len)}, a, b);
    return apply(f, PointH2{0, std::exp(t * len)});
}
} // namespace

double segmentDistance(const PointH2& a0, const PointH2& a1, const PointH2& b0, const PointH2& b1) {
    // distance to a convex set is convex along a geodesic: golden-section search
    auto f = [&](double t) { return distanceToSegment(along(a0, a1, t), b0, b1); };
    const double r = (std::sqrt(5.0) - 1) / 2;
    double lo = 0, hi = 1;
    double x1 = hi - r * (hi - lo), x2 = lo + r * (hi - lo);
    double f1 = f(x1), f2 = f(x2);
    for (int i = 0; i < 60 && hi - lo > 1e-12; ++i) {
        if (f1 < f2) {
            hi = x2; x2 = x1; f2 = f1;
            x1 = hi - r * (hi - lo); f1 = f(x1);
        } else {
            lo = x1; x1 = x2; f1 = f2;
            x2 = lo + r * (hi - lo); f2 = f(x2);
        }
    }
    return std::min({f1, f2, f(0), f(1)});
}

PolygonReport checkSimplePolygon(const std::vector<PointH2>& verts) {
    PolygonReport rep;
    const size_t n = verts.size();
    if (n < 3) return rep;
    for (size_t i = 0; i < n; ++i)
        for (size_t j = i + 1; j < n; ++j)
            if (distance(verts[i], verts[j]) <= tol_geo) return rep;

    // recentre at the first vertex so the Klein chords stay away from the circle
    Isometry toCentre = pointFrame(verts[0]).inverse();
    std::vector<K2> k(n);
    for (size_t i = 0; i < n; ++i) k[i] = apply(toCentre, verts[i]).toKlein();
    auto adjacent = [n](size_t i, size_t j) { return (i + 1) % n == j || (j + 1) % n == i; };
    for (size_t i = 0; i < n; ++i)
        for (size_t j = i + 1; j < n; ++j)
            if (!adjacent(i, j) && segmentsIntersect(k[i], k[(i + 1) % n], k[j], k[(j + 1) % n])) return rep;

    double turning = 0;
    for (size_t i = 0; i < n; ++i) {
        const K2& a = k[(i + n - 1) % n];
        const K2& b = k[i];
        const K2& c = k[(i + 1) % n];
        K2 u{b[0] - a[0], b[1] - a[1]}, v{c[0] - b[0], c[1] - b[1]};
        double t = std::atan2(cross(u, v), u[0] * v[0] + u[1] * v[1]);
        if (std::abs(std::abs(t) - kPi) < 1e-9) return rep; // side folds back onto its neighbour
        turning += t;
    }
    if (std::abs(std::abs(turning) - kTwoPi) > 1e-6) return rep;
    rep.ok = true;
    rep.orientation = turning > 0 ? 1 : -1;

    double margin = std::numeric_limits<double>::infinity();
    for (size_t i = 0; i < n; ++i)
        for (size_t j = i + 1; j < n; ++j)
            if (!adjacent(i, j))
                margin = std::min(margin, segmentDistance(verts[i], verts[(i + 1) % n], verts[j], verts[(j + 1) % n]));
    if (margin <= tol_geo) return {}; // non-adjacent sides touch within tolerance
    rep.margin = margin;
    return rep;
}

std::vector<double> interiorAngles(const std::vector<PointH2>& verts, int orientation) {
    const size_t n = verts.size();
    std::vector<double> out(n);
    for (size_t i = 0; i < n; ++i) {
        cplx v = verts[i].z();
        auto dir = [&](const PointH2& q) { return std::arg((q.z() - v) / (q.z() - std::conj(v))); };
        double prev = dir(verts[(i + n - 1) % n]), next = dir(verts[(i + 1) % n]);
        double a = orientation > 0 ? prev - next : next - prev;
        a = std::fmod(a, kTwoPi);
        if (a < 0) a += kTwoPi;
        out[i] = a;
    }
    return out;
}

double polygonArea(const std::vector<PointH2>& verts) {
    double total = 0;
    for (size_t i = 1; i + 1 < verts.size(); ++i) {
        const PointH2* tri[3] = {&verts[0], &verts[i], &verts[i + 1]};
        K2 a = tri[0]->toKlein(), b = tri[1]->toKlein(), c = tri[2]->toKlein();
        double o = cross({b[0] - a[0], b[1] - a[1]}, {c[0] - a[0], c[1] - a[1]});
        if (o == 0) continue;
        // unsigned triangle angles, so nearly flat triangles contribute nearly nothing
        double defect = kPi;
        for (int k = 0; k < 3; ++k) {
            cplx v = tri[k]->z();
            auto dir = [&](const PointH2* q) { return (q->z() - v) / (q->z() - std::conj(v)); };
            defect -= std::abs(std::arg(dir(tri[(k + 1) % 3]) / dir(tri[(k + 2) % 3])));
        }
        total += (o > 0 ? 1 : -1) * std::max(defect, 0.0);
    }
    return std::abs(total);
}

Pentagon buildPentagon(const Isometry& g, const Isometry& h, const PointH2& p) {
    // applied one factor at a time: better conditioned than the composite matrices
    PointH2 hp = apply(h, p);
    PointH2 ghp = apply(g, hp);
    PointH2 v4 = apply(h.inverse(), ghp);
    return {{p, apply(g.inverse(), v4), hp, ghp, v4}};
}

PolygonReport boundsEmbeddedDisc(const Pentagon& pent) { return checkSimplePolygon(pent.polygon()); }

double cornerAngle(const Pentagon& pent) {
    auto rep = boundsEmbeddedDisc(pent);
    if (!rep.ok) throw Error(ErrorCode::DegeneratePentagon, "pentagon does not bound an embedded disc");
    double sum = 0;
    for (double a : interiorAngles(pent.polygon(), rep.orientation)) sum += a;
    return sum;
}

namespace {
// Bases are not expanded past this entry product: further products lose their determinant.
constexpr double kEntryCap = 1e6;

double maxEntry(const Isometry& g) {
    return std::max({std::abs(g.m.a), std::abs(g.m.b), std::abs(g.m.c), std::abs(g.m.d)});
}

std::tuple<long long, long long, long long> characterKey(const Character& c) {
    auto q = [](double v) { return static_cast<long long>(std::llround(std::clamp(v, -1e9, 1e9) * 1e6)); };
    return {q(c.x), q(c.y), q(c.z)};
}
} // namespace

std::optional<GoodnessWitness> searchGood(const Isometry& g, const Isometry& h, double epsilon,
                                          const SearchOptions& opts) {
    double t = commutatorTrace(g, h);
    if (opts.requireTraceAboveTwo && !(t > 2 + tol_class))
        throw Error(ErrorCode::WrongRegime, "commutator trace " + std::to_string(t) + " <= 2");
    if (!(std::abs(t) > 2 + tol_class))
        throw Error(ErrorCode::WrongRegime, "commutator trace " + std::to_string(t) + " is not hyperbolic");

    std::mt19937_64 rng(opts.seed);
    std::uniform_real_distribution<double> jitter(-0.4, 0.4);
    const int n = std::max(1, opts.grid);

    struct Node {
        std::vector<McgMove> moves;
        TrackedPair pair;
    };
    auto startCls = classify(boundaryElement(g, h));
    const Geodesic startAxis = startCls.axis;
    const double length = startCls.length;
    std::deque<Node> queue;
    std::set<std::tuple<long long, long long, long long>> seen;
    queue.push_back({{}, trackMoves(g, h, {})});
    seen.insert(characterKey(characterOf(g, h)));

    while (!queue.empty()) {
        Node node = std::move(queue.front());
        queue.pop_front();
        const TrackedPair& tp = node.pair;
        // axis of the moved boundary element K B^E K^-1, carried from the start
        Geodesic axis{apply(tp.K, startAxis.from), apply(tp.K, startAxis.to)};
        if (tp.E < 0) std::swap(axis.from, axis.to);
        for (int i = 0; i < n; ++i) {
            for (int j = 0; j < n; ++j) {
                double s = (i + 0.5 + jitter(rng)) / n * length;
                double d = -epsilon + (j + 0.5 + jitter(rng)) / n * 2 * epsilon;
                PointH2 p = fermiPoint(axis, s, d);
                Pentagon pent = buildPentagon(tp.g, tp.h, p);
                auto rep = boundsEmbeddedDisc(pent);
                if (!rep.ok) continue;
                if (opts.requiredOrientation != 0 && rep.orientation != opts.requiredOrientation) continue;
                GoodnessWitness w{node.moves, tp, p, d, epsilon, rep.orientation, 0};
                w.angle = cornerAngle(pent);
                if (opts.accept && !opts.accept(w)) continue;
                return w;
            }
        }
        if (static_cast<int>(node.moves.size()) >= opts.depth) continue;
        if (maxEntry(tp.g) * maxEntry(tp.h) > kEntryCap) continue;
        for (McgMove mv : kOrientedMoves) {
            auto [ng, nh] = applyMoveMatrices(mv, tp.g, tp.h);
            if (!seen.insert(characterKey(characterOf(ng, nh))).second) continue;
            Node child{node.moves, {}};
            child.moves.push_back(mv);
            child.pair = trackMoves(g, h, child.moves);
            queue.push_back(std::move(child));
        }
    }
    return std::nullopt;
}

std::optional<GoodnessWitness> searchGood(const Isometry& g, const Isometry& h, double epsilon, int depth,
                                          int grid, std::uint64_t seed) {
    SearchOptions opts;
    opts.depth = depth;
    opts.grid = grid;
    opts.seed = seed;
    return searchGood(g, h, epsilon, opts);
}

std::optional<GoodnessWitness> searchWGood(const Isometry& g, const Isometry& h, std::uint64_t seed) {
    double t = commutatorTrace(g, h);
    if (!(t > 2 + tol_class)) throw Error(ErrorCode::WrongRegime, "commutator trace " + std::to_string(t) + " <= 2");
    SearchOptions opts;
    opts.seed = seed;
    return searchGood(g, h, collar(t).w, opts);
}

} // namespace holo
