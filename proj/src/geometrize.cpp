#include "holonomy/geometrize.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <functional>
#include <limits>
#include <set>
#include <tuple>

namespace holo {

namespace {

double scaleOf(const Isometry& g) {
    return std::max({1.0, std::abs(g.m.a), std::abs(g.m.b), std::abs(g.m.c), std::abs(g.m.d)});
}

double relativeDistance(const Isometry& a, const Isometry& b) { return a.distanceTo(b) / scaleOf(b); }

// Generators of a tracked pair conjugated back by K, so their boundary element is the original one.
struct Rebased {
    Isometry g, h;
    Word gWord, hWord; // original pair as words in (g, h): letters 1, 2
};

// Current pair of a move sequence as words in the starting pair.
std::pair<Word, Word> movedWords(const std::vector<McgMove>& moves) {
    Word g{1}, h{2};
    for (McgMove mv : moves) {
        switch (mv) {
        case McgMove::TwistA: h = concat(g, h); break;
        case McgMove::TwistAInv: h = concat(inverseWord(g), h); break;
        case McgMove::TwistB: g = concat(g, h); break;
        case McgMove::TwistBInv: g = concat(g, inverseWord(h)); break;
        case McgMove::SwapInvert: std::tie(g, h) = std::make_pair(inverseWord(h), inverseWord(g)); break;
        case McgMove::InvertB: h = inverseWord(h); break;
        }
        g = reduceWord(g);
        h = reduceWord(h);
    }
    return {g, h};
}

// Evaluated as reduced words in the starting pair, which keeps the entries small.
Rebased rebase(const TrackedPair& t, const std::vector<McgMove>& moves, const Isometry& g0, const Isometry& h0) {
    auto [cg, ch] = movedWords(moves);
    Word k = substitute(t.conjugatorWord, {cg, ch});
    Word gw = reduceWord(concat(concat(inverseWord(k), cg), k));
    Word hw = reduceWord(concat(concat(inverseWord(k), ch), k));
    Rebased r{evaluate(gw, {g0, h0}), evaluate(hw, {g0, h0}), {}, {}};
    // K is the same word in the rebased pair, so start = K W K^-1 there
    r.gWord = reduceWord(concat(concat(t.conjugatorWord, t.startG), inverseWord(t.conjugatorWord)));
    r.hWord = reduceWord(concat(concat(t.conjugatorWord, t.startH), inverseWord(t.conjugatorWord)));
    return r;
}

Word relabel(const Word& w, int first) {
    Word out;
    for (int k : w) out.push_back(k > 0 ? k + first - 1 : k - first + 1);
    return out;
}

std::vector<PointH2> octagonFrom(const Pentagon& sigma, const std::vector<PointH2>& handleSide) {
    // sigma: u0 = p', u1 = p, u2, u3, u4; handleSide: four vertices after p'
    std::vector<PointH2> o{sigma.vertices[1], sigma.vertices[2], sigma.vertices[3], sigma.vertices[4], sigma.vertices[0]};
    o.insert(o.end(), handleSide.begin(), handleSide.end());
    return o;
}

struct ComplementChoice {
    TrackedPair tracked;
    std::vector<McgMove> moves;
    Rebased pair;
    Pentagon pentagon;
    int orientation = 0;
};

// Oriented basis changes of the complement pair (g, h), with the point held fixed,
// until the pentagon at `point` is embedded with the required orientation and `accept` agrees.
std::optional<ComplementChoice> searchComplementBasis(const Isometry& g, const Isometry& h, const PointH2& point,
                                                      int requiredOrientation, int depth,
                                                      const std::function<bool(const ComplementChoice&)>& accept) {
    std::deque<std::vector<McgMove>> queue{{}};
    std::set<std::tuple<long long, long long, long long>> seen;
    auto key = [](const Character& c) {
        auto q = [](double v) { return static_cast<long long>(std::llround(std::clamp(v, -1e9, 1e9) * 1e6)); };
        return std::make_tuple(q(c.x), q(c.y), q(c.z));
    };
    seen.insert(key(characterOf(g, h)));
    while (!queue.empty()) {
        auto moves = queue.front();
        queue.pop_front();
        TrackedPair t = trackMoves(g, h, moves);
        if (scaleOf(t.K) * scaleOf(t.g) * scaleOf(t.h) > 1e6) continue;
        Rebased r = rebase(t, moves, g, h);
        Pentagon pent = buildPentagon(r.g, r.h, point);
        auto rep = boundsEmbeddedDisc(pent);
        if (rep.ok && (requiredOrientation == 0 || rep.orientation == requiredOrientation)) {
            ComplementChoice c{t, moves, r, pent, rep.orientation};
            if (!accept || accept(c)) return c;
        }
        if (static_cast<int>(moves.size()) >= depth) continue;
        if (scaleOf(t.g) * scaleOf(t.h) > 1e6) continue;
        for (McgMove mv : kOrientedMoves) {
            auto [ng, nh] = applyMoveMatrices(mv, t.g, t.h);
            if (!seen.insert(key(characterOf(ng, nh))).second) continue;
            auto next = moves;
            next.push_back(mv);
            queue.push_back(next);
        }
    }
    return std::nullopt;
}

ConeSurfaceData finish(ConeSurfaceData data) {
    data.conePoints = vertexCycles(data.polygon, data.pairings);
    validateDomain(data);
    return data;
}

void requireGenusTwo(const SurfaceRepresentation& rep) {
    if (rep.genus != 2 || rep.generators.size() != 4)
        throw Error(ErrorCode::InvariantViolation, "domain construction is implemented for genus 2 only");
}

} // namespace

std::vector<ConePoint> vertexCycles(const std::vector<PointH2>& polygon, const std::vector<SidePairing>& pairings,
                                    double* cycleResidual) {
    const int n = static_cast<int>(polygon.size());
    std::vector<int> pairingOf(n, -1);
    for (size_t j = 0; j < pairings.size(); ++j) {
        pairingOf[pairings[j].from] = static_cast<int>(j);
        pairingOf[pairings[j].to] = static_cast<int>(j);
    }
    for (int s = 0; s < n; ++s)
        if (pairingOf[s] < 0) throw Error(ErrorCode::InvariantViolation, "side " + std::to_string(s) + " is unpaired");

    auto rep = checkSimplePolygon(polygon);
    int orientation = rep.ok ? rep.orientation : 1;
    auto angles = interiorAngles(polygon, orientation);

    std::vector<bool> visited(n, false);
    std::vector<ConePoint> out;
    double worst = 0;
    for (int v0 = 0; v0 < n; ++v0) {
        if (visited[v0]) continue;
        ConePoint cp;
        Isometry product = Isometry::identity();
        int v = v0, s = (v0 + n - 1) % n;
        const int s0 = s;
        for (int guard = 0; guard <= 2 * n; ++guard) {
            visited[v] = true;
            cp.vertexOrbit.push_back(v);
            cp.angle += angles[v];
            const SidePairing& pr = pairings[pairingOf[s]];
            bool forward = pr.from == s;
            int a = forward ? pr.from : pr.to, b = forward ? pr.to : pr.from;
            Isometry t = forward ? pr.iso : pr.iso.inverse();
            int next = (v == a) ? (b + 1) % n : b;
            product = t * product;
            int other = (next == b) ? (b + n - 1) % n : (b + 1) % n;
            v = next;
            s = other;
            if (v == v0 && s == s0) break;
        }
        worst = std::max(worst, relativeDistance(product, Isometry::identity()));
        cp.order = cp.angle / kTwoPi - 1;
        out.push_back(cp);
    }
    if (cycleResidual) *cycleResidual = worst;
    return out;
}

double vertexClearance(const std::vector<PointH2>& polygon) {
    const size_t n = polygon.size();
    double best = std::numeric_limits<double>::infinity();
    for (size_t v = 0; v < n; ++v)
        for (size_t s = 0; s < n; ++s) {
            if (s == v || (s + 1) % n == v) continue;
            best = std::min(best, distanceToSegment(polygon[v], polygon[s], polygon[(s + 1) % n]));
        }
    return best;
}

DomainCheck checkDomain(const ConeSurfaceData& data) {
    DomainCheck c;
    const auto& poly = data.polygon;
    const int n = static_cast<int>(poly.size());
    for (const auto& pr : data.pairings) {
        c.pairingResidual = std::max(c.pairingResidual, distance(apply(pr.iso, poly[pr.from]), poly[(pr.to + 1) % n]));
        c.pairingResidual = std::max(c.pairingResidual, distance(apply(pr.iso, poly[(pr.from + 1) % n]), poly[pr.to]));
    }
    auto cycles = vertexCycles(poly, data.pairings, &c.cycleResidual);
    double orders = 0;
    for (const auto& cp : cycles) {
        double stored = cp.angle;
        for (const auto& s : data.conePoints) {
            std::vector<int> a = s.vertexOrbit, b = cp.vertexOrbit;
            std::sort(a.begin(), a.end());
            std::sort(b.begin(), b.end());
            if (a == b) stored = s.angle;
        }
        c.angleResidual = std::max(c.angleResidual, std::abs(stored - cp.angle));
        orders += cp.order;
    }
    std::vector<Isometry> letters;
    for (const auto& pr : data.pairings) letters.push_back(pr.iso);
    for (size_t i = 0; i < data.generatorWords.size() && i < data.holonomy.generators.size(); ++i)
        c.holonomyResidual = std::max(
            c.holonomyResidual, relativeDistance(evaluate(data.generatorWords[i], letters), data.holonomy.generators[i]));
    if (data.generatorWords.size() != data.holonomy.generators.size()) c.holonomyResidual = 1;
    c.area = std::abs(polygonArea(poly));
    c.areaResidual = std::abs(c.area + kTwoPi * (data.chi + orders));
    auto rep = checkSimplePolygon(poly);
    c.orientation = rep.orientation;
    c.margin = vertexClearance(poly);
    return c;
}

DomainCheck validateDomain(const ConeSurfaceData& data) {
    DomainCheck c = checkDomain(data);
    auto fail = [](const std::string& what, double v) {
        throw Error(ErrorCode::InvariantViolation, what + " residual " + std::to_string(v));
    };
    if (!(c.pairingResidual < 1e-8)) fail("pairing", c.pairingResidual);
    if (!(c.cycleResidual < 1e-8)) fail("vertex cycle", c.cycleResidual);
    if (!(c.holonomyResidual < 1e-8)) fail("holonomy", c.holonomyResidual);
    if (!(c.areaResidual < 1e-6)) fail("Gauss-Bonnet area", c.areaResidual);
    if (!(c.angleResidual < tol_ang)) fail("cone angle", c.angleResidual);
    std::vector<double> orders;
    for (const auto& cp : data.conePoints) orders.push_back(cp.order);
    if (!gaussBonnetAdmissible(data.chi, orders)) fail("Gauss-Bonnet sign", data.chi);
    if (c.orientation == 0) throw Error(ErrorCode::InvariantViolation, "polygon is not simple");
    return c;
}

bool gaussBonnetAdmissible(int chi, const std::vector<double>& orders) {
    double sum = chi;
    for (double k : orders) sum += k;
    return sum < 0;
}

SplitResult splitHandle(const SurfaceRepresentation& rep, int handleIndex) {
    if (handleIndex < 0 || handleIndex >= rep.genus) throw Error(ErrorCode::InvariantViolation, "no such handle");
    SplitResult out;
    out.handleA = rep.a(handleIndex);
    out.handleB = rep.b(handleIndex);
    out.boundaryTrace = commutatorTrace(out.handleA, out.handleB);
    if (std::abs(out.boundaryTrace) < 2 - tol_class)
        throw Error(ErrorCode::EllipticBoundary, "handle boundary trace " + std::to_string(out.boundaryTrace));
    for (int i = 0; i < rep.genus; ++i)
        if (i != handleIndex) {
            out.complementGenerators.push_back(rep.a(i));
            out.complementGenerators.push_back(rep.b(i));
        }
    out.handleRelEuler = relativeEulerPuncturedTorus(out.handleA, out.handleB);
    out.complementRelEuler = eulerNumberClosed(rep) - out.handleRelEuler;
    return out;
}

std::vector<Word> simpleCurveCatalog(int genus, int budget) {
    std::vector<Word> out;
    std::set<Word> seen;
    auto add = [&](Word w) {
        w = reduceWord(w);
        if (!w.empty() && seen.insert(w).second) out.push_back(w);
    };
    for (int i = 0; i < genus; ++i) {
        int a = 2 * i + 1, b = 2 * i + 2;
        add({a});
        add({b});
    }
    for (int i = 0; i < genus; ++i) {
        int a = 2 * i + 1, b = 2 * i + 2;
        add({a, b, -a, -b});
        add({a, b});
        add({a, -b});
    }
    for (int i = 0; i < genus; ++i) {
        int a = 2 * i + 1, b = 2 * i + 2;
        std::deque<std::pair<Word, Word>> queue{{{a}, {b}}};
        std::deque<int> depth{0};
        while (!queue.empty()) {
            auto [g, h] = queue.front();
            int d = depth.front();
            queue.pop_front();
            depth.pop_front();
            add(g);
            add(h);
            add(concat(g, h));
            if (d >= budget) continue;
            const std::pair<Word, Word> next[] = {{g, concat(g, h)},
                                                  {g, concat(inverseWord(g), h)},
                                                  {concat(g, h), h},
                                                  {concat(g, inverseWord(h)), h}};
            for (const auto& nx : next) {
                queue.push_back(nx);
                depth.push_back(d + 1);
            }
        }
    }
    return out;
}

std::optional<CurveFinding> findNonHyperbolicSimpleCurve(const SurfaceRepresentation& rep, int budget) {
    for (const Word& w : simpleCurveCatalog(rep.genus, budget)) {
        auto cls = classify(evaluate(w, rep.generators));
        if (cls.kind != IsoKind::Hyperbolic) return CurveFinding{w, cls};
    }
    return std::nullopt;
}

void checkNoIdentityCurve(const SurfaceRepresentation& rep, int budget) {
    std::vector<std::string> names;
    for (int i = 0; i < rep.genus; ++i) {
        names.push_back("a" + std::to_string(i + 1));
        names.push_back("b" + std::to_string(i + 1));
    }
    for (const Word& w : simpleCurveCatalog(rep.genus, budget)) {
        if (classify(evaluate(w, rep.generators)).kind == IsoKind::Identity)
            throw Error(ErrorCode::IdentityCurve, "simple closed curve " + formatWord(w, names) + " maps to the identity");
    }
}

BasisChange swapHandles(const SurfaceRepresentation& rep) {
    requireGenusTwo(rep);
    SurfaceRepresentation r = rep;
    r.generators = {rep.a(1), rep.b(1), rep.a(0), rep.b(0)};
    return {r, {{3}, {4}, {1}, {2}}};
}

BasisChange fixParabolicBasis(const SurfaceRepresentation& rep, int alphaIndex) {
    requireGenusTwo(rep);
    if (alphaIndex == 1) {
        BasisChange sw = swapHandles(rep);
        BasisChange inner = fixParabolicBasis(sw.rep, 0);
        std::vector<Word> composed;
        for (const Word& w : sw.oldInNew) composed.push_back(substitute(w, inner.oldInNew));
        return {inner.rep, composed};
    }
    const Isometry& a1 = rep.a(0);
    const Isometry& b1 = rep.b(0);
    if (classify(a1).kind != IsoKind::Parabolic)
        throw Error(ErrorCode::InvariantViolation, "the chosen curve is not parabolic");
    std::vector<Word> identity{{1}, {2}, {3}, {4}};
    if (!shareFixedPoint(a1, b1)) return {rep, identity};
    // (a1, b1, a2, b2) -> (a1, xi b1, a2, a1 a2 b2) with xi = a2 a1; the relator is conjugated by a1 a2
    const std::vector<Word> newInOld{{1}, {3, 1, 2}, {3}, {1, 3, 4}};
    std::vector<Isometry> gens;
    for (const Word& w : newInOld) gens.push_back(evaluate(w, rep.generators));
    if (shareFixedPoint(gens[0], gens[1]))
        throw Error(ErrorCode::ElementaryRepresentation, "every catalog curve shares the parabolic fixed point");
    SurfaceRepresentation r = makeRepresentation(2, gens);
    return {r, {{1}, {-1, -3, 2}, {3}, {-3, -1, 4}}};
}

ConeSurfaceData pullBack(ConeSurfaceData data, const SurfaceRepresentation& original,
                         const std::vector<Word>& oldInNew) {
    std::vector<Word> words;
    for (const Word& w : oldInNew) words.push_back(substitute(w, data.generatorWords));
    data.generatorWords = words;
    data.holonomy = original;
    validateDomain(data);
    return data;
}

ConeSurfaceData buildVAPairDomain(const SurfaceRepresentation& rep) {
    requireGenusTwo(rep);
    const Isometry a1 = rep.a(0), b1 = rep.b(0), a2 = rep.a(1), b2 = rep.b(1);
    auto c1 = classify(a1), c2 = classify(b1);
    bool halfTurns = c1.kind == IsoKind::Elliptic && c2.kind == IsoKind::Elliptic && std::abs(c1.angle - kPi) < 1e-8 &&
                     std::abs(c2.angle - kPi) < 1e-8;
    if (!halfTurns || !isVirtuallyAbelian(a1, b1))
        throw Error(ErrorCode::NotVAPair, "first handle is not a pair of half-turns about distinct points");
    double rel = distanceFromPlusMinusIdentity(relatorProduct(rep.generators));
    if (!(rel < tol_rel))
        throw Error(ErrorCode::CommutatorMismatch, "complement commutator is not aligned (relator residual " +
                                                       std::to_string(rel) + ")");
    int e = eulerNumberClosed(rep);
    if (std::abs(e) != 1) throw Error(ErrorCode::WrongRegime, "Euler number " + std::to_string(e) + " is not +-1");

    const PointH2 q1 = c1.center, q2 = c2.center;
    const double D = distance(q1, q2);
    Isometry frame = isometryMapping(PointH2{0, 1}, PointH2{0, std::exp(D)}, q1, q2);
    auto at = [&](double s) { return apply(frame, PointH2{0, std::exp(s)}); };
    Isometry C = commutator(a1, b1);
    if (distance(apply(C, at(0)), at(-4 * D)) > 1e-8)
        throw Error(ErrorCode::InvariantViolation, "commutator does not translate by 4D along the axis");

    const PointH2 p = at(1.5 * D), pPrime = at(-2.5 * D);
    const std::vector<PointH2> axisSide{at(-1.5 * D), at(-0.5 * D), at(0.5 * D)};
    const Isometry conjB = a1 * b1 * a1.inverse();

    ConeSurfaceData result;
    auto assemble = [&](const Rebased& sigma, const Pentagon& pent) {
        ConeSurfaceData d;
        d.polygon = octagonFrom(pent, {});
        d.polygon.insert(d.polygon.end(), axisSide.begin(), axisSide.end());
        d.pairings = {{0, 2, sigma.g}, {3, 1, sigma.h}, {7, 5, a1}, {6, 4, conjB}};
        d.genus = 2;
        d.chi = -2;
        d.holonomy = rep;
        d.generatorWords = {{3},
                            {-3, 4, 3},
                            inverseWord(sigma.gWord),
                            inverseWord(sigma.hWord)};
        return d;
    };
    auto choice = searchComplementBasis(a2.inverse(), b2.inverse(), pPrime, 0, 6, [&](const ComplementChoice& c) {
        if (distance(c.pentagon.vertices[1], p) > 1e-8) return false;
        return checkSimplePolygon(assemble(c.pair, c.pentagon).polygon).ok;
    });
    if (!choice) throw Error(ErrorCode::NoWitness, "no complement basis gives an embedded pentagon on the axis");
    return finish(assemble(choice->pair, choice->pentagon));
}

ConeSurfaceData buildCollarAssembly(const SurfaceRepresentation& rep, AssemblyReport* report,
                                    const AssemblyOptions& opts) {
    requireGenusTwo(rep);
    SplitResult split = splitHandle(rep, 0);
    if (split.handleRelEuler != 0 || std::abs(split.complementRelEuler) != 1)
        throw Error(ErrorCode::WrongRegime, "handle must have relative Euler number 0 and the complement +-1");
    if (!(split.boundaryTrace > 2 + tol_class))
        throw Error(ErrorCode::WrongRegime, "handle boundary trace " + std::to_string(split.boundaryTrace) + " <= 2");
    const Isometry a1 = rep.a(0), b1 = rep.b(0), a2 = rep.a(1), b2 = rep.b(1);
    const Isometry B = commutator(a1, b1);
    const Geodesic axis = classify(B).axis;
    const double w = collar(split.boundaryTrace).w;

    std::optional<ComplementChoice> sigma;
    Rebased handle;
    PointH2 p, pPrime;
    auto handleSide = [](const Pentagon& h) {
        return std::vector<PointH2>{h.vertices[2], h.vertices[3], h.vertices[4]};
    };

    SearchOptions so;
    so.depth = opts.depth;
    so.grid = opts.grid;
    so.seed = opts.seed;
    so.accept = [&](const GoodnessWitness& wit) {
        if (wit.basis.E != 1 || scaleOf(wit.basis.K) > 1e3 || !(wit.angle > kTwoPi)) return false;
        Rebased hr = rebase(wit.basis, wit.moves, a1.inverse(), b1.inverse());
        PointH2 ph = apply(wit.basis.K.inverse(), wit.point);
        PointH2 pp = apply(B, ph);
        Pentagon hp = buildPentagon(hr.g, hr.h, ph);
        auto found = searchComplementBasis(
            a2.inverse(), b2.inverse(), pp, wit.orientation, opts.complementDepth, [&](const ComplementChoice& c) {
                if (distance(c.pentagon.vertices[1], ph) > 1e-8) return false;
                return checkSimplePolygon(octagonFrom(c.pentagon, handleSide(hp))).ok;
            });
        if (!found) return false;
        sigma = found;
        handle = hr;
        p = ph;
        pPrime = pp;
        return true;
    };
    // the collar width is sufficient, not necessary: widen the band, the assembled domain is validated anyway
    std::optional<GoodnessWitness> witness;
    double epsilon = w;
    for (double factor : kCollarWidening) {
        epsilon = factor * w;
        witness = searchGood(a1.inverse(), b1.inverse(), epsilon, so);
        if (witness && sigma) break;
    }
    if (!witness || !sigma)
        throw Error(ErrorCode::NoWitness, "no handle witness within " + std::to_string(epsilon) +
                                              " of the boundary axis is compatible with the complement");

    Pentagon hPent = buildPentagon(handle.g, handle.h, p);
    const double theta2 = cornerAngle(hPent);

    // complement angle along the perpendicular through p'
    auto fc = fermiCoordinates(axis, pPrime);
    const double side = fc[1] >= 0 ? 1.0 : -1.0;
    auto theta1 = [&](double delta) -> std::optional<double> {
        Pentagon q = buildPentagon(sigma->pair.g, sigma->pair.h, fermiPoint(axis, fc[0], side * delta));
        if (!boundsEmbeddedDisc(q).ok) return std::nullopt;
        return cornerAngle(q);
    };
    const double target = 2 * kTwoPi - theta2;
    double lo = 1e-6, hi = epsilon - 1e-6;
    // monotonicity probe; keep the embedded stretch around the witness distance
    const int probes = 17;
    std::vector<std::pair<double, double>> samples;
    for (int i = 0; i < probes; ++i) {
        double d = lo + (hi - lo) * i / (probes - 1);
        if (auto t = theta1(d)) samples.push_back({d, *t});
    }
    if (auto t = theta1(std::abs(fc[1]))) samples.push_back({std::abs(fc[1]), *t});
    std::sort(samples.begin(), samples.end());
    int trend = 0;
    for (size_t i = 1; i < samples.size(); ++i) {
        int s = samples[i].second > samples[i - 1].second ? 1 : -1;
        if (trend == 0) trend = s;
        if (s != trend) throw Error(ErrorCode::RootNotBracketed, "complement angle is not monotone in delta");
    }
    std::optional<std::pair<double, double>> bracket;
    for (size_t i = 1; i < samples.size() && !bracket; ++i) {
        double f0 = samples[i - 1].second - target, f1 = samples[i].second - target;
        if (f0 == 0 || f1 == 0 || (f0 < 0) != (f1 < 0)) bracket = {samples[i - 1].first, samples[i].first};
    }
    if (!bracket) {
        double mn = samples.empty() ? 0 : samples.front().second, mx = samples.empty() ? 0 : samples.back().second;
        if (mn > mx) std::swap(mn, mx);
        throw Error(ErrorCode::RootNotBracketed, "complement angle range [" + std::to_string(mn) + ", " +
                                                     std::to_string(mx) + "] misses " + std::to_string(target));
    }
    double blo = bracket->first, bhi = bracket->second;
    double flo = *theta1(blo) - target;
    while (bhi - blo > 1e-10) {
        double mid = 0.5 * (blo + bhi);
        auto t = theta1(mid);
        if (!t) throw Error(ErrorCode::RootNotBracketed, "complement pentagon degenerates inside the bracket");
        double fm = *t - target;
        if ((fm < 0) == (flo < 0)) {
            blo = mid;
            flo = fm;
        } else {
            bhi = mid;
        }
    }
    const double root = 0.5 * (blo + bhi);

    ConeSurfaceData d;
    d.polygon = octagonFrom(sigma->pentagon, handleSide(hPent));
    d.pairings = {{0, 2, sigma->pair.g}, {3, 1, sigma->pair.h}, {4, 6, handle.g}, {7, 5, handle.h}};
    d.genus = 2;
    d.chi = -2;
    d.holonomy = rep;
    d.generatorWords = {inverseWord(relabel(handle.gWord, 3)), inverseWord(relabel(handle.hWord, 3)),
                        inverseWord(sigma->pair.gWord), inverseWord(sigma->pair.hWord)};
    d = finish(d);

    if (report) {
        report->handleMoves = witness->moves;
        report->complementMoves = sigma->moves;
        report->handleAngle = theta2;
        report->complementAngle = cornerAngle(sigma->pentagon);
        report->deltaWitness = std::abs(fc[1]);
        report->epsilon = epsilon;
        report->collarWidth = w;
        report->deltaRoot = root;
        report->rootResidual = std::abs(*theta1(root) + theta2 - 2 * kTwoPi);
    }
    return d;
}

ConeSurfaceData rebaseConePoint(const ConeSurfaceData& data, const PointH2& newDevPoint) {
    if (data.conePoints.size() != 1)
        throw Error(ErrorCode::InvariantViolation, "re-basing needs exactly one cone point");
    const auto& poly = data.polygon;
    const int n = static_cast<int>(poly.size());
    const PointH2 old = poly[0];
    if (distance(old, newDevPoint) < 1e-15) return data;
    double margin = vertexClearance(poly);
    double shift = distance(old, newDevPoint);
    if (!(shift < margin / 2))
        throw Error(ErrorCode::OutOfDisc, "displacement " + std::to_string(shift) + " exceeds half the clearance " +
                                              std::to_string(margin));

    // group elements carrying vertex 0 to every vertex
    std::vector<std::optional<Isometry>> elem(n);
    elem[0] = Isometry::identity();
    for (bool changed = true; changed;) {
        changed = false;
        for (const auto& pr : data.pairings) {
            const int a = pr.from, b = pr.to;
            const std::pair<int, int> links[] = {{a, (b + 1) % n}, {(a + 1) % n, b}};
            for (auto [src, dst] : links) {
                if (elem[src] && !elem[dst]) {
                    elem[dst] = pr.iso * *elem[src];
                    changed = true;
                }
                if (elem[dst] && !elem[src]) {
                    elem[src] = pr.iso.inverse() * *elem[dst];
                    changed = true;
                }
            }
        }
    }
    ConeSurfaceData out = data;
    for (int i = 0; i < n; ++i) {
        if (!elem[i]) throw Error(ErrorCode::InvariantViolation, "vertex outside the cone-point orbit");
        if (distance(apply(*elem[i], old), poly[i]) > 1e-7)
            throw Error(ErrorCode::InvariantViolation, "vertex orbit is inconsistent with the pairings");
        out.polygon[i] = apply(*elem[i], newDevPoint);
    }
    if (!checkSimplePolygon(out.polygon).ok) throw Error(ErrorCode::OutOfDisc, "re-based polygon is not simple");
    return finish(out);
}

GeometrizeResult geometrize(const SurfaceRepresentation& rep, const AssemblyOptions& opts) {
    requireGenusTwo(rep);
    int e = eulerNumberClosed(rep);
    if (std::abs(e) != 1) throw Error(ErrorCode::WrongRegime, "Euler number " + std::to_string(e) + " is not +-1");
    checkNoIdentityCurve(rep);

    std::optional<Error> lastError;
    for (int swapped = 0; swapped < 2; ++swapped) {
        BasisChange base = swapped ? swapHandles(rep) : BasisChange{rep, {{1}, {2}, {3}, {4}}};
        const std::string suffix = swapped ? "+swap" : "";
        const SurfaceRepresentation& r = base.rep;
        try {
            auto c1 = classify(r.a(0)), c2 = classify(r.b(0));
            if (c1.kind == IsoKind::Elliptic && c2.kind == IsoKind::Elliptic && isVirtuallyAbelian(r.a(0), r.b(0)))
                return {pullBack(buildVAPairDomain(r), rep, base.oldInNew), "va-pair" + suffix, {}};
            BasisChange fixed = base;
            std::string route = "collar";
            if (c1.kind == IsoKind::Parabolic && shareFixedPoint(r.a(0), r.b(0))) {
                BasisChange inner = fixParabolicBasis(r, 0);
                fixed.rep = inner.rep;
                fixed.oldInNew.clear();
                for (const Word& w : base.oldInNew) fixed.oldInNew.push_back(substitute(w, inner.oldInNew));
                route = "collar-parabolic";
            }
            if (commutatorTrace(fixed.rep.a(0), fixed.rep.b(0)) > 2 + tol_class) {
                GeometrizeResult res;
                res.data = pullBack(buildCollarAssembly(fixed.rep, &res.report, opts), rep, fixed.oldInNew);
                res.route = route + suffix;
                return res;
            }
        } catch (const Error& err) {
            if (err.code() != ErrorCode::NoWitness && err.code() != ErrorCode::WrongRegime &&
                err.code() != ErrorCode::RootNotBracketed && err.code() != ErrorCode::EllipticBoundary)
                throw;
            lastError = err;
        }
    }
    if (lastError) throw *lastError;
    throw Error(ErrorCode::NoWitness, "no handle admits a supported construction");
}

} // namespace holo
