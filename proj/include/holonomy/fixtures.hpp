#pragma once
#include <cstdint>
#include <optional>
#include <random>

#include "holonomy/geometrize.hpp"

namespace holo {

SurfaceRepresentation trivialRepresentation(int genus);

// Regular octagon with angles pi/4; side pairings laid out like two glued pentagons.
ConeSurfaceData octagonDomain();
SurfaceRepresentation octagonRepresentation();

// Handle of two half-turns at distance 1; complete complement aligned to it.
SurfaceRepresentation vaFixture();
// Handle with elliptic a1 and character (1, 3, z) on the level 2 cosh 2.
SurfaceRepresentation ellipticFixture();
// Handle with parabolic a1 fixing infinity and diagonal b1.
SurfaceRepresentation parabolicFixture();

// Complement pair on the level -kappa with commutator aligned to [a1,b1]^-1,
// choosing the orientation that gives the requested Euler number when possible.
std::optional<SurfaceRepresentation> completeWithComplement(const Isometry& a1, const Isometry& b1,
                                                            const Character& complement,
                                                            std::optional<int> wantEuler);

// Random pair with a realized complement on the matching level; Euler number unconstrained.
SurfaceRepresentation randomGenus2(std::mt19937_64& rng);

} // namespace holo
