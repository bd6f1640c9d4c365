#include "holonomy/cli.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <optional>
#include <ostream>

#include "holonomy/formats.hpp"
#include "holonomy/geometrize.hpp"

namespace holo {

int exitCodeFor(ErrorCode code) {
    switch (code) {
    case ErrorCode::ParseError: return kExitParse;
    case ErrorCode::NoWitness: return kExitBudget;
    default: return kExitContract;
    }
}

namespace {

std::string num(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v == 0 ? 0.0 : v);
    return buf;
}

std::string kindName(IsoKind k) {
    switch (k) {
    case IsoKind::Identity: return "Identity";
    case IsoKind::Elliptic: return "Elliptic";
    case IsoKind::Parabolic: return "Parabolic";
    case IsoKind::Hyperbolic: return "Hyperbolic";
    }
    return "?";
}

std::string describeClass(const IsometryClass& c) {
    switch (c.kind) {
    case IsoKind::Elliptic:
        return "Elliptic angle " + num(c.angle) + " center " + num(c.center.x) + " " + num(c.center.y);
    case IsoKind::Parabolic:
        return std::string("Parabolic fixed ") + (c.fixed.infinite ? "inf" : num(c.fixed.x)) + " sense " +
               (c.sense == Sense::Counterclockwise ? "ccw" : "cw");
    case IsoKind::Hyperbolic: return "Hyperbolic length " + num(c.length);
    case IsoKind::Identity: return "Identity";
    }
    return "?";
}

std::vector<std::string> generatorNames(int genus) {
    std::vector<std::string> names;
    for (int i = 0; i < 2 * genus; ++i) names.push_back(generatorLabel(i));
    return names;
}

std::uint64_t resolveSeed(const std::optional<std::uint64_t>& flag) {
    if (flag) return *flag;
    if (const char* env = std::getenv("HOLONOMY_LAB_SEED")) {
        char* end = nullptr;
        unsigned long long v = std::strtoull(env, &end, 10);
        if (*env && *end == '\0') return v;
        throw Error(ErrorCode::ParseError, "HOLONOMY_LAB_SEED is not an unsigned integer");
    }
    return 0;
}

void writeTo(const std::string& path, const std::function<void(std::ostream&)>& emit) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw Error(ErrorCode::ParseError, "cannot write " + path);
    emit(f);
    if (!f) throw Error(ErrorCode::ParseError, "failed writing " + path);
}

int checkHandle(const SurfaceRepresentation& rep, int handle) {
    if (handle < 1 || handle > rep.genus)
        throw Error(ErrorCode::ParseError, "--handle must lie in 1.." + std::to_string(rep.genus));
    return handle - 1;
}

void reportSummary(std::ostream& out, const ConeSurfaceData& d) {
    auto c = checkDomain(d);
    out << "euler " << eulerNumberClosed(d.holonomy) << "\n";
    for (const auto& cp : d.conePoints) out << "cone_angle " << num(cp.angle) << "\n";
    out << "area " << num(c.area) << "\n";
    out << "pairing_residual " << num(c.pairingResidual) << "\n";
    out << "cycle_residual " << num(c.cycleResidual) << "\n";
    out << "holonomy_residual " << num(c.holonomyResidual) << "\n";
}

} // namespace

int runCli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Holonomy, Euler numbers and cone structures for surface group representations", "holonomy_lab"};
    app.require_subcommand(1);

    std::string file, outPath, svgPath, csvPath, epsilon = "auto";
    int handle = 1, depth = 6, grid = 64, tiles = 2, steps = 100;
    double dx = 0, dy = 0;
    std::vector<double> triple;
    std::optional<std::uint64_t> seed;

    auto* classifyCmd = app.add_subcommand("classify", "classify generators, handles and simple curves");
    classifyCmd->add_option("repfile", file)->required();
    auto* eulerCmd = app.add_subcommand("euler", "print the Euler number");
    eulerCmd->add_option("repfile", file)->required();
    auto* characterCmd = app.add_subcommand("character", "print x y z kappa of a handle");
    characterCmd->add_option("repfile", file)->required();
    characterCmd->add_option("--handle", handle);
    auto* searchCmd = app.add_subcommand("pentagon-search", "search a basis and point with an embedded pentagon");
    searchCmd->add_option("repfile", file)->required();
    searchCmd->add_option("--handle", handle);
    searchCmd->add_option("--epsilon", epsilon);
    searchCmd->add_option("--depth", depth)->check(CLI::Range(0, 12));
    searchCmd->add_option("--grid", grid)->check(CLI::Range(1, 4096));
    searchCmd->add_option("--seed", seed);
    auto* geometrizeCmd = app.add_subcommand("geometrize", "build a cone structure with one 4 pi cone point");
    geometrizeCmd->add_option("repfile", file)->required();
    geometrizeCmd->add_option("--out", outPath);
    auto* rebaseCmd = app.add_subcommand("rebase", "move the developed cone point");
    rebaseCmd->add_option("domainfile", file)->required();
    rebaseCmd->add_option("--dx", dx);
    rebaseCmd->add_option("--dy", dy);
    rebaseCmd->add_option("--out", outPath);
    auto* renderCmd = app.add_subcommand("render", "draw the developed polygon in the Poincare disk");
    renderCmd->add_option("domainfile", file)->required();
    renderCmd->add_option("--svg", svgPath)->required();
    renderCmd->add_option("--tiles", tiles)->check(CLI::Range(0, 8));
    auto* orbitCmd = app.add_subcommand("orbit", "sample the mapping class group orbit of a character");
    orbitCmd->add_option("xyz", triple)->expected(3)->required();
    orbitCmd->add_option("--steps", steps)->check(CLI::Range(0, 10000000));
    orbitCmd->add_option("--seed", seed);
    orbitCmd->add_option("--csv", csvPath);

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return kExitParse;
    }

    try {
        if (*classifyCmd) {
            auto rep = readRepFile(file);
            auto names = generatorNames(rep.genus);
            out << "genus " << rep.genus << "\n";
            out << "relator_residual " << num(rep.relatorResidual) << "\n";
            out << "euler " << eulerNumberClosed(rep) << "\n";
            for (size_t i = 0; i < rep.generators.size(); ++i)
                out << names[i] << " trace " << num(rep.generators[i].trace()) << " "
                    << describeClass(classify(rep.generators[i])) << "\n";
            for (int i = 0; i < rep.genus; ++i) {
                auto c = characterOf(rep.a(i), rep.b(i));
                out << "handle " << i + 1 << " character " << num(c.x) << " " << num(c.y) << " " << num(c.z)
                    << " kappa " << num(c.kappa) << " boundary_trace " << num(commutatorTrace(rep.a(i), rep.b(i)));
                try {
                    out << " rel_euler " << relativeEulerPuncturedTorus(rep.a(i), rep.b(i));
                } catch (const Error&) {
                    out << " rel_euler undefined";
                }
                std::string verdict = "none";
                try {
                    verdict = verdictName(classifyLevelSet(c).tag);
                } catch (const Error&) {
                }
                out << " verdict " << verdict << "\n";
            }
            if (auto f = findNonHyperbolicSimpleCurve(rep))
                out << "nonhyperbolic_curve " << formatWord(f->word, names) << " " << kindName(f->cls.kind) << "\n";
            else
                out << "nonhyperbolic_curve absent\n";
        } else if (*eulerCmd) {
            out << eulerNumberClosed(readRepFile(file)) << "\n";
        } else if (*characterCmd) {
            auto rep = readRepFile(file);
            int i = checkHandle(rep, handle);
            auto c = characterOf(rep.a(i), rep.b(i));
            out << num(c.x) << " " << num(c.y) << " " << num(c.z) << " " << num(c.kappa) << "\n";
        } else if (*searchCmd) {
            auto rep = readRepFile(file);
            int i = checkHandle(rep, handle);
            SearchOptions so;
            so.depth = depth;
            so.grid = grid;
            so.seed = resolveSeed(seed);
            double eps;
            if (epsilon == "auto") {
                double t = commutatorTrace(rep.a(i), rep.b(i));
                if (!(t > 2 + tol_class))
                    throw Error(ErrorCode::WrongRegime, "--epsilon auto needs boundary trace > 2, got " + num(t));
                eps = collar(t).w;
            } else {
                char* end = nullptr;
                eps = std::strtod(epsilon.c_str(), &end);
                if (epsilon.empty() || *end != '\0' || !(eps > 0))
                    throw Error(ErrorCode::ParseError, "--epsilon must be 'auto' or a positive number");
                so.requireTraceAboveTwo = false;
            }
            auto w = searchGood(rep.a(i), rep.b(i), eps, so);
            if (!w) {
                out << "absent\n";
                return kExitBudget;
            }
            out << "witness\n";
            out << "moves";
            for (McgMove mv : w->moves) out << " " << moveName(mv);
            out << "\npoint " << num(w->point.x) << " " << num(w->point.y) << "\n";
            out << "delta " << num(w->delta) << "\nepsilon " << num(w->epsilon) << "\n";
            out << "orientation " << w->orientation << "\nangle " << num(w->angle) << "\n";
        } else if (*geometrizeCmd) {
            auto rep = readRepFile(file);
            AssemblyOptions opts;
            opts.seed = resolveSeed(std::nullopt);
            auto res = geometrize(rep, opts);
            if (outPath.empty()) {
                writeDomainFile(out, res.data);
            } else {
                writeTo(outPath, [&](std::ostream& f) { writeDomainFile(f, res.data); });
                out << "route " << res.route << "\n";
                reportSummary(out, res.data);
            }
        } else if (*rebaseCmd) {
            auto d = readDomainFile(file);
            validateDomain(d);
            PointH2 p = d.polygon[0];
            PointH2 q{p.x + dx, p.y + dy};
            if (!(q.y > 0)) throw Error(ErrorCode::OutOfDisc, "displaced point leaves the upper half-plane");
            auto moved = rebaseConePoint(d, q);
            if (outPath.empty()) {
                writeDomainFile(out, moved);
            } else {
                writeTo(outPath, [&](std::ostream& f) { writeDomainFile(f, moved); });
                out << "moved " << num(distance(p, q)) << "\n";
                reportSummary(out, moved);
            }
        } else if (*renderCmd) {
            auto d = readDomainFile(file);
            RenderOptions ro;
            ro.tiles = tiles;
            writeTo(svgPath, [&](std::ostream& f) { writeSvg(f, d, ro); });
        } else if (*orbitCmd) {
            auto orbit = orbitSample(Character::make(triple[0], triple[1], triple[2]), steps, resolveSeed(seed));
            if (csvPath.empty()) writeOrbitCsv(out, orbit);
            else writeTo(csvPath, [&](std::ostream& f) { writeOrbitCsv(f, orbit); });
        }
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return exitCodeFor(e.code());
    }
    return kExitOk;
}

} // namespace holo
