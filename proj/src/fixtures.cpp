#include "holonomy/fixtures.hpp"

#include <cmath>

namespace holo {

namespace {

// Root of kappa(x, x, x) = level with x > 2.
double diagonalOnLevel(double level) {
    double lo = 2, hi = 100;
    auto f = [&](double x) { return kappaOf(x, x, x) - level; };
    double flo = f(lo);
    for (int i = 0; i < 200; ++i) {
        double mid = 0.5 * (lo + hi);
        double fm = f(mid);
        if ((fm < 0) == (flo < 0)) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

} // namespace

SurfaceRepresentation trivialRepresentation(int genus) {
    return makeRepresentation(genus, std::vector<Isometry>(2 * genus, Isometry::identity()));
}

ConeSurfaceData octagonDomain() {
    const double coshR = std::pow(1 / std::tan(kPi / 8), 2);
    const double r = std::tanh(0.5 * std::acosh(coshR));
    ConeSurfaceData d;
    // clockwise vertex order: pins the Euler number of the octagon group to -2
    for (int k = 0; k < 8; ++k) d.polygon.push_back(PointH2::fromDisk(std::polar(r, -kPi * (2 * k + 1) / 8)));
    auto pairing = [&](int a, int b) {
        return SidePairing{a, b, isometryMapping(d.polygon[a], d.polygon[(a + 1) % 8], d.polygon[(b + 1) % 8], d.polygon[b])};
    };
    d.pairings = {pairing(0, 2), pairing(3, 1), pairing(4, 6), pairing(7, 5)};
    d.genus = 2;
    d.chi = -2;
    std::vector<Isometry> gens{d.pairings[2].iso.inverse(), d.pairings[3].iso.inverse(), d.pairings[0].iso.inverse(),
                               d.pairings[1].iso.inverse()};
    d.holonomy = makeRepresentation(2, gens);
    d.generatorWords = {{-3}, {-4}, {-1}, {-2}};
    d.conePoints = vertexCycles(d.polygon, d.pairings);
    validateDomain(d);
    return d;
}

SurfaceRepresentation octagonRepresentation() { return octagonDomain().holonomy; }

std::optional<SurfaceRepresentation> completeWithComplement(const Isometry& a1, const Isometry& b1,
                                                            const Character& complement,
                                                            std::optional<int> wantEuler) {
    const Isometry target = commutator(a1, b1).inverse();
    Realization r = realize(complement);
    for (int mirrored = 0; mirrored < 2; ++mirrored) {
        Isometry g = mirrored ? mirror(r.g) : r.g;
        Isometry h = mirrored ? mirror(r.h) : r.h;
        try {
            auto [ag, ah] = alignCommutator(g, h, target);
            auto rep = makeRepresentation(2, {a1, b1, ag, ah});
            if (!wantEuler || eulerNumberClosed(rep) == *wantEuler) return rep;
        } catch (const Error&) {
        }
    }
    return std::nullopt;
}

SurfaceRepresentation vaFixture() {
    Isometry a1 = halfTurn(PointH2{0, 1});
    Isometry b1 = halfTurn(PointH2{0, std::exp(1.0)});
    double x = diagonalOnLevel(-2 * std::cosh(2.0));
    auto rep = completeWithComplement(a1, b1, Character{x, x, x, kappaOf(x, x, x)}, -1);
    if (!rep) throw Error(ErrorCode::InvariantViolation, "virtually abelian fixture could not be completed");
    return *rep;
}

SurfaceRepresentation ellipticFixture() {
    const double level = 2 * std::cosh(2.0);
    // x^2 + y^2 + z^2 - xyz - 2 = level with x = 1, y = 3
    double z = 0.5 * (3 + std::sqrt(9 - 4 * (10 - 2 - level)));
    Realization handle = realize(Character{1, 3, z, kappaOf(1, 3, z)});
    double x = diagonalOnLevel(-level);
    auto rep = completeWithComplement(handle.g, handle.h, Character{x, x, x, kappaOf(x, x, x)}, -1);
    if (!rep) throw Error(ErrorCode::InvariantViolation, "elliptic fixture could not be completed");
    return *rep;
}

SurfaceRepresentation parabolicFixture() {
    Isometry a1{Mat2{1, 1, 0, 1}};
    for (double s : {0.5, -0.5}) {
        double lambda = std::exp(s);
        Isometry b1{Mat2{lambda, 0, 0, 1 / lambda}};
        if (auto rep = completeWithComplement(a1, b1, Character{3, 3, 3, kappaOf(3, 3, 3)}, -1)) return *rep;
    }
    throw Error(ErrorCode::InvariantViolation, "parabolic fixture could not be completed");
}

SurfaceRepresentation randomGenus2(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> entry(-3, 3), coord(2.2, 5);
    auto randomIso = [&] {
        for (;;) {
            Mat2 m{entry(rng), entry(rng), entry(rng), entry(rng)};
            if (m.det() > 0.05) return normalize(m);
        }
    };
    for (;;) {
        Isometry a1 = randomIso(), b1 = randomIso();
        double t = commutatorTrace(a1, b1);
        double level = (rng() & 1) ? t : -t;
        double x = coord(rng), y = coord(rng);
        if (rng() & 1) x = -x;
        if (rng() & 1) y = -y;
        double disc = x * x * y * y - 4 * (x * x + y * y - 2 - level);
        if (disc < 0) continue;
        double z = 0.5 * (x * y + ((rng() & 1) ? std::sqrt(disc) : -std::sqrt(disc)));
        if (auto rep = completeWithComplement(a1, b1, Character{x, y, z, kappaOf(x, y, z)}, std::nullopt)) return *rep;
    }
}

} // namespace holo
