#pragma once
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "holonomy/char_torus.hpp"
#include "holonomy/geometrize.hpp"

namespace holo {

// RepFile: "genus G" then one "A1 a b c d" line per generator; '#' starts a comment.
SurfaceRepresentation readRepFile(std::istream& in);
SurfaceRepresentation readRepFile(const std::string& path);
void writeRepFile(std::ostream& out, const SurfaceRepresentation& rep);

// DomainFile: [meta], [vertices], [pairings], [cones], [holonomy] sections.
ConeSurfaceData readDomainFile(std::istream& in);
ConeSurfaceData readDomainFile(const std::string& path);
void writeDomainFile(std::ostream& out, const ConeSurfaceData& data);

struct RenderOptions {
    int tiles = 1;       // layers of pairing translates around the polygon
    double size = 800;   // pixels
};
void writeSvg(std::ostream& out, const ConeSurfaceData& data, const RenderOptions& opts = {});

void writeOrbitCsv(std::ostream& out, const std::vector<Character>& orbit);

std::string generatorLabel(int index); // A1, B1, A2, ...

} // namespace holo
