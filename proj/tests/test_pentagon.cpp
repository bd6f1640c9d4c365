#include <cmath>
#include <random>

#include "doctest.h"
#include "holonomy/pentagon.hpp"
#include "support.hpp"

using namespace holo;
using holo::testing::pairOnLevel;

namespace {
const double E = std::exp(1.0);

double sideLength(const Pentagon& p, int i) { return distance(p.vertices[i], p.vertices[(i + 1) % 5]); }
} // namespace

TEST_CASE("pentagon vertices follow the defining orbit") {
    PointH2 p{0.3, 1.2};
    Pentagon triv = buildPentagon(Isometry::identity(), Isometry::identity(), p);
    for (const auto& v : triv.vertices) CHECK(distance(v, p) < 1e-15);
    CHECK_FALSE(boundsEmbeddedDisc(triv).ok);

    Isometry g = halfTurn({0, 1}), h = halfTurn({0, E});
    Pentagon va = buildPentagon(g, h, {0, 2});
    for (const auto& v : va.vertices) CHECK(std::abs(v.x) < 1e-12);
    CHECK_FALSE(boundsEmbeddedDisc(va).ok);

    auto r = realize(Character::make(3, 3, 3));
    Pentagon q = buildPentagon(r.g, r.h, {0, 1});
    for (int i = 0; i < 5; ++i)
        for (int j = i + 1; j < 5; ++j) CHECK(distance(q.vertices[i], q.vertices[j]) > 1e-6);
    Isometry gh = r.g * r.h;
    CHECK(distance(q.vertices[1], apply(boundaryElement(r.g, r.h), PointH2{0, 1})) < 1e-12);
    CHECK(distance(q.vertices[3], apply(gh, PointH2{0, 1})) < 1e-12);
    CHECK(distance(q.vertices[4], apply(r.h.inverse() * gh, PointH2{0, 1})) < 1e-12);
}

TEST_CASE("side pairings of the pentagon") {
    std::mt19937_64 rng(41);
    for (int i = 0; i < 200; ++i) {
        auto [g, h] = pairOnLevel(7.52, rng);
        PointH2 p{std::uniform_real_distribution<double>(-1, 1)(rng), 1.0};
        Pentagon q = buildPentagon(g, h, p);
        const auto& v = q.vertices;
        // h: side v4 -> v0 onto side v2 -> v3, g: side v1 -> v2 onto side v3 -> v4
        REQUIRE(distance(apply(h, v[4]), v[3]) < 1e-8);
        REQUIRE(distance(apply(h, v[0]), v[2]) < 1e-8);
        REQUIRE(distance(apply(g, v[1]), v[4]) < 1e-8);
        REQUIRE(distance(apply(g, v[2]), v[3]) < 1e-8);
    }
}

TEST_CASE("pentagons are equivariant under conjugation") {
    std::mt19937_64 rng(42);
    for (int i = 0; i < 200; ++i) {
        auto [g, h] = pairOnLevel(5.0, rng);
        Isometry k = holo::testing::randomIsometry(rng, 2);
        PointH2 p{0.2, 1.5};
        Pentagon a = buildPentagon(g, h, p);
        Pentagon b = buildPentagon(k * g * k.inverse(), k * h * k.inverse(), apply(k, p));
        for (int s = 0; s < 5; ++s) REQUIRE(std::abs(sideLength(a, s) - sideLength(b, s)) < 1e-9 * (1 + sideLength(a, s)));
        auto ra = boundsEmbeddedDisc(a), rb = boundsEmbeddedDisc(b);
        REQUIRE(ra.ok == rb.ok);
        if (ra.ok) {
            auto aa = interiorAngles(a.polygon(), ra.orientation), ab = interiorAngles(b.polygon(), rb.orientation);
            for (int s = 0; s < 5; ++s) REQUIRE(std::abs(aa[s] - ab[s]) < 1e-9);
        }
    }
}

TEST_CASE("polygon checks on simple shapes") {
    // ideal-ish square around i, counterclockwise in the disk
    std::vector<PointH2> sq;
    for (int k = 0; k < 4; ++k) sq.push_back(PointH2::fromDisk(std::polar(0.5, kPi / 4 + k * kPi / 2)));
    auto rep = checkSimplePolygon(sq);
    CHECK(rep.ok);
    CHECK(rep.orientation == 1);
    std::vector<PointH2> rev(sq.rbegin(), sq.rend());
    CHECK(checkSimplePolygon(rev).orientation == -1);
    auto ang = interiorAngles(sq, 1);
    double sum = 0;
    for (double a : ang) {
        CHECK(a == doctest::Approx(ang[0]).epsilon(1e-12));
        sum += a;
    }
    CHECK(polygonArea(sq) == doctest::Approx(2 * kPi - sum).epsilon(1e-10));
    // bow tie
    std::vector<PointH2> bow{sq[0], sq[2], sq[1], sq[3]};
    CHECK_FALSE(checkSimplePolygon(bow).ok);
}

TEST_CASE("corner angle matches the area on accepted pentagons") {
    std::mt19937_64 rng(43);
    int accepted = 0;
    for (int i = 0; i < 300; ++i) {
        auto [g, h] = pairOnLevel(std::uniform_real_distribution<double>(2.5, 17)(rng), rng);
        auto cls = classify(boundaryElement(g, h));
        double w = collar(commutatorTrace(g, h)).w;
        for (int j = 0; j < 30; ++j) {
            PointH2 p = fermiPoint(cls.axis, std::uniform_real_distribution<double>(0, cls.length)(rng),
                                   std::uniform_real_distribution<double>(-w, w)(rng));
            Pentagon q = buildPentagon(g, h, p);
            if (!boundsEmbeddedDisc(q).ok) continue;
            ++accepted;
            double theta = cornerAngle(q);
            REQUIRE(std::abs(polygonArea(q.polygon()) - (3 * kPi - theta)) < 1e-8);
            REQUIRE(theta > kTwoPi);
            REQUIRE(theta < 3 * kPi);
        }
    }
    CHECK(accepted > 20);
    CHECK_THROWS_AS(cornerAngle(buildPentagon(Isometry::identity(), Isometry::identity(), {0, 1})), Error);
}

TEST_CASE("verdicts are stable away from the margin") {
    std::mt19937_64 rng(44);
    int checked = 0;
    for (int i = 0; i < 200; ++i) {
        auto [g, h] = pairOnLevel(6.0, rng);
        auto cls = classify(boundaryElement(g, h));
        double w = collar(commutatorTrace(g, h)).w;
        PointH2 p;
        PolygonReport rep;
        for (int j = 0; j < 50 && !rep.ok; ++j) {
            p = fermiPoint(cls.axis, std::uniform_real_distribution<double>(0, cls.length)(rng),
                           std::uniform_real_distribution<double>(-w, w)(rng));
            rep = boundsEmbeddedDisc(buildPentagon(g, h, p));
        }
        if (!rep.ok || rep.margin < 1e-5) continue;
        ++checked;
        for (auto [dx, dy] : {std::pair{1e-7, 0.0}, {0.0, 1e-7}, {-1e-7, -1e-7}}) {
            auto r2 = boundsEmbeddedDisc(buildPentagon(g, h, {p.x + dx * p.y, p.y + dy * p.y}));
            REQUIRE(r2.ok);
            REQUIRE(r2.orientation == rep.orientation);
        }
    }
    CHECK(checked >= 5);
}

TEST_CASE("virtually abelian pairs never give embedded pentagons") {
    std::mt19937_64 rng(45);
    std::uniform_real_distribution<double> u(-2, 2), v(0.3, 3);
    for (int i = 0; i < 200; ++i) {
        Isometry g = halfTurn({u(rng), v(rng)}), h = halfTurn({u(rng), v(rng)});
        auto cls = classify(boundaryElement(g, h));
        double w = collar(commutatorTrace(g, h)).w;
        for (int j = 0; j < 200; ++j) {
            PointH2 p = fermiPoint(cls.axis, std::uniform_real_distribution<double>(0, cls.length)(rng),
                                   std::uniform_real_distribution<double>(-w, w)(rng));
            REQUIRE_FALSE(boundsEmbeddedDisc(buildPentagon(g, h, p)).ok);
        }
    }
}

TEST_CASE("goodness search") {
    Isometry g = halfTurn({0, 1}), h = halfTurn({0, E});
    CHECK_FALSE(searchGood(g, h, 0.5, 6, 64, 1).has_value());
    CHECK_FALSE(searchWGood(g, h).has_value());
    auto r = realize(Character::make(3, 3, 3));
    CHECK_THROWS_AS(searchGood(r.g, r.h, 0.5, 2, 8, 1), Error);

    std::mt19937_64 rng(46);
    auto [a, b] = pairOnLevel(7.52, rng);
    auto w = searchWGood(a, b, 3);
    REQUIRE(w.has_value());
    CHECK(std::abs(w->delta) < w->epsilon);
    CHECK(w->epsilon == doctest::Approx(collar(commutatorTrace(a, b)).w));
    Pentagon q = buildPentagon(w->basis.g, w->basis.h, w->point);
    auto rep = boundsEmbeddedDisc(q);
    CHECK(rep.ok);
    CHECK(rep.orientation == w->orientation);
    CHECK(std::abs(signedDistanceToGeodesic(w->point, classify(boundaryElement(w->basis.g, w->basis.h)).axis) -
                   w->delta) < 1e-8);
    auto again = searchWGood(a, b, 3);
    REQUIRE(again.has_value());
    CHECK(again->point.x == w->point.x);
    CHECK(again->moves == w->moves);

    // a one-holed torus with geodesic boundary, searched outside the default regime
    auto f = realize(Character::make(3, 3, 3.5));
    SearchOptions opts;
    opts.requireTraceAboveTwo = false;
    CHECK(searchGood(f.g, f.h, collar(commutatorTrace(f.g, f.h)).w, opts).has_value());
    CHECK_THROWS_AS(searchGood(f.g, f.h, 0.3, 6, 64, 0), Error);
}
