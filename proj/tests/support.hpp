#pragma once
#include <cmath>
#include <random>

#include "holonomy/char_torus.hpp"

namespace holo::testing {

inline Isometry randomIsometry(std::mt19937_64& rng, double range = 3) {
    std::uniform_real_distribution<double> u(-range, range);
    for (;;) {
        Mat2 m{u(rng), u(rng), u(rng), u(rng)};
        if (m.det() > 0.05) return normalize(m);
    }
}

// Random triple on the level set kappa, with |x|, |y| > 2 so it is realizable.
inline Character characterOnLevel(double kappa, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(2.2, 5);
    for (;;) {
        double x = u(rng), y = u(rng);
        if (rng() & 1) x = -x;
        if (rng() & 1) y = -y;
        double disc = x * x * y * y - 4 * (x * x + y * y - 2 - kappa);
        if (disc < 0) continue;
        double r = std::sqrt(disc);
        double z = (rng() & 1) ? (x * y + r) / 2 : (x * y - r) / 2;
        return {x, y, z, kappaOf(x, y, z)};
    }
}

// Realized pair on the level set, mirrored at random so both orientation classes appear.
inline std::pair<Isometry, Isometry> pairOnLevel(double kappa, std::mt19937_64& rng) {
    auto r = realize(characterOnLevel(kappa, rng));
    if (rng() & 1) return {mirror(r.g), mirror(r.h)};
    return {r.g, r.h};
}

} // namespace holo::testing
