#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "doctest.h"
#include "holonomy/cli.hpp"
#include "holonomy/fixtures.hpp"
#include "holonomy/formats.hpp"
#include "support.hpp"

using namespace holo;
namespace fs = std::filesystem;

namespace {

const std::string kFixtures = HOLO_FIXTURE_DIR;

struct CliRun {
    int code;
    std::string out, err;
};

CliRun run(const std::vector<std::string>& args) {
    std::ostringstream out, err;
    int code = runCli(args, out, err);
    return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& p) {
    std::ifstream f(p, std::ios::binary);
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

fs::path scratch(const std::string& name) {
    fs::path dir = fs::temp_directory_path() / "holonomy_lab_tests";
    fs::create_directories(dir);
    return dir / name;
}

int parseErrorLine(const std::string& text) {
    try {
        std::istringstream in(text);
        readRepFile(in);
    } catch (const Error& e) {
        if (e.code() != ErrorCode::ParseError) return -2;
        std::string msg = e.what();
        auto pos = msg.find("line ");
        return pos == std::string::npos ? 0 : std::atoi(msg.c_str() + pos + 5);
    }
    return -1;
}

} // namespace

TEST_CASE("representation files round-trip exactly") {
    std::mt19937_64 rng(8);
    for (int k = 0; k < 20; ++k) {
        auto rep = randomGenus2(rng);
        std::ostringstream out;
        writeRepFile(out, rep);
        std::istringstream in(out.str());
        auto back = readRepFile(in);
        for (size_t i = 0; i < rep.generators.size(); ++i) CHECK(back.generators[i] == rep.generators[i]);
        std::ostringstream again;
        writeRepFile(again, back);
        CHECK(again.str() == out.str());
    }
}

TEST_CASE("representation file parsing") {
    std::istringstream ok("# comment\ngenus 1\n\nB1 2 0 0 0.5  # trailing\nA1 1 0 0 1\n");
    auto rep = readRepFile(ok);
    CHECK(rep.genus == 1);
    CHECK(rep.b(0).m.a == 2);

    CHECK(parseErrorLine("genus 2\nA1 1 0 0 1\nB1 1 0 x 1\n") == 3);
    CHECK(parseErrorLine("genus\n") == 1);
    CHECK(parseErrorLine("genus 1\nA1 1 0 0 1\nC1 1 0 0 1\n") == 3);
    CHECK(parseErrorLine("genus 1\nA1 1 0 0 1\nA1 1 0 0 1\n") == 3);
    CHECK(parseErrorLine("genus 1\nA1 1 0 0 1\nB1 1 0 0\n") == 3);
    CHECK(parseErrorLine("genus 1\nA1 1 0 0 1\nB1 0 1 1 0\n") == 3); // negative determinant
    CHECK(parseErrorLine("genus 1\nA1 1 0 0 1\n") == 0);              // missing generator, no line
    std::istringstream bad("genus 1\nA1 2 0 0 0.5\nB1 1 1 0 1\n");
    CHECK_THROWS_AS(readRepFile(bad), Error);
}

TEST_CASE("domain files round-trip bit-identically") {
    for (const auto& d : {octagonDomain(), buildVAPairDomain(vaFixture()), geometrize(ellipticFixture()).data}) {
        std::ostringstream out;
        writeDomainFile(out, d);
        std::istringstream in(out.str());
        auto back = readDomainFile(in);
        REQUIRE(back.polygon.size() == d.polygon.size());
        for (size_t i = 0; i < d.polygon.size(); ++i) {
            CHECK(back.polygon[i].x == d.polygon[i].x);
            CHECK(back.polygon[i].y == d.polygon[i].y);
        }
        REQUIRE(back.pairings.size() == d.pairings.size());
        for (size_t i = 0; i < d.pairings.size(); ++i) {
            CHECK(back.pairings[i].from == d.pairings[i].from);
            CHECK(back.pairings[i].to == d.pairings[i].to);
            CHECK(back.pairings[i].iso == d.pairings[i].iso);
        }
        REQUIRE(back.conePoints.size() == d.conePoints.size());
        CHECK(back.conePoints[0].angle == d.conePoints[0].angle);
        CHECK(back.conePoints[0].vertexOrbit == d.conePoints[0].vertexOrbit);
        CHECK(back.generatorWords == d.generatorWords);
        CHECK(back.genus == d.genus);
        CHECK(back.chi == d.chi);
        CHECK_NOTHROW(validateDomain(back));
        std::ostringstream again;
        writeDomainFile(again, back);
        CHECK(again.str() == out.str());
    }
}

TEST_CASE("domain file parsing rejects malformed input") {
    std::ostringstream out;
    writeDomainFile(out, octagonDomain());
    const std::string good = out.str();
    auto expectParse = [](const std::string& text) {
        std::istringstream in(text);
        try {
            readDomainFile(in);
            return false;
        } catch (const Error& e) {
            return e.code() == ErrorCode::ParseError;
        }
    };
    CHECK(expectParse("[meta]\ngenus 2\n[bogus]\n"));
    CHECK(expectParse(good.substr(0, good.find("[holonomy]"))));
    std::string badVertex = good;
    badVertex.replace(badVertex.find("[vertices]\n0 "), 13, "[vertices]\n0 x");
    CHECK(expectParse(badVertex));
}

TEST_CASE("bundled fixtures match the library fixtures") {
    auto check = [](const std::string& file, const SurfaceRepresentation& expected, int euler) {
        auto rep = readRepFile(kFixtures + "/" + file);
        for (size_t i = 0; i < rep.generators.size(); ++i)
            CHECK(rep.generators[i].distanceTo(expected.generators[i]) < 1e-14);
        CHECK(eulerNumberClosed(rep) == euler);
    };
    check("trivial.rep", trivialRepresentation(2), 0);
    check("octagon.rep", octagonRepresentation(), -2);
    check("va.rep", vaFixture(), -1);
    check("elliptic.rep", ellipticFixture(), -1);
    check("parabolic.rep", parabolicFixture(), -1);
}

TEST_CASE("cli euler and character") {
    auto triv = run({"euler", kFixtures + "/trivial.rep"});
    CHECK(triv.code == 0);
    CHECK(triv.out == "0\n");
    auto oct = run({"euler", kFixtures + "/octagon.rep"});
    CHECK(oct.code == 0);
    CHECK(oct.out == "-2\n");
    auto ch = run({"character", kFixtures + "/elliptic.rep", "--handle", "1"});
    CHECK(ch.code == 0);
    std::istringstream vals(ch.out);
    double x, y, z, k;
    vals >> x >> y >> z >> k;
    CHECK(x == doctest::Approx(1).epsilon(1e-12));
    CHECK(y == doctest::Approx(3).epsilon(1e-12));
    CHECK(k == doctest::Approx(2 * std::cosh(2.0)).epsilon(1e-9));
    auto cls = run({"classify", kFixtures + "/va.rep"});
    CHECK(cls.code == 0);
    CHECK(cls.out.find("nonhyperbolic_curve A1 Elliptic") != std::string::npos);
    CHECK(cls.out.find("euler -1") != std::string::npos);
}

TEST_CASE("cli exit codes") {
    CHECK(run({}).code == kExitParse);
    CHECK(run({"euler"}).code == kExitParse);
    CHECK(run({"euler", "/nonexistent/file.rep"}).code == kExitParse);
    CHECK(run({"character", kFixtures + "/va.rep", "--handle", "3"}).code == kExitParse);
    auto wrong = run({"pentagon-search", kFixtures + "/octagon.rep"});
    CHECK(wrong.code == kExitContract);
    CHECK(wrong.err.find("WrongRegime") != std::string::npos);
    auto absent = run({"pentagon-search", kFixtures + "/va.rep", "--depth", "1", "--grid", "8"});
    CHECK(absent.code == kExitBudget);
    CHECK(absent.out == "absent\n");
    auto found = run({"pentagon-search", kFixtures + "/elliptic.rep", "--seed", "1"});
    CHECK(found.code == 0);
    CHECK(found.out.rfind("witness\n", 0) == 0);
    CHECK(run({"geometrize", kFixtures + "/octagon.rep"}).code == kExitContract);
    auto rel = scratch("relator.rep");
    std::ofstream(rel) << "genus 1\nA1 2 0 0 0.5\nB1 1 1 0 1\n";
    CHECK(run({"euler", rel.string()}).code == kExitContract);
}

TEST_CASE("cli geometrize, rebase and render") {
    auto dom = scratch("va.dom");
    auto g = run({"geometrize", kFixtures + "/va.rep", "--out", dom.string()});
    REQUIRE(g.code == 0);
    CHECK(g.out.find("route va-pair") != std::string::npos);
    auto d = readDomainFile(dom.string());
    REQUIRE(d.conePoints.size() == 1);
    CHECK(std::abs(d.conePoints[0].angle - 12.566370614) < 1e-6);
    std::string text = slurp(dom);
    CHECK(text.find("[cones]\norbit") != std::string::npos);

    auto g2 = run({"geometrize", kFixtures + "/va.rep"});
    CHECK(g2.out == text);

    auto moved = scratch("va_moved.dom");
    auto r = run({"rebase", dom.string(), "--dx", "0.001", "--dy", "0.002", "--out", moved.string()});
    REQUIRE(r.code == 0);
    auto m = readDomainFile(moved.string());
    CHECK(std::abs(m.polygon[0].x - d.polygon[0].x - 0.001) < 1e-12);
    CHECK(std::abs(m.polygon[0].y - d.polygon[0].y - 0.002) < 1e-12);
    CHECK(std::abs(m.conePoints[0].angle - d.conePoints[0].angle) < 1e-6);
    CHECK(run({"rebase", dom.string(), "--dx", "1000"}).code == kExitContract);

    auto svg = scratch("va.svg");
    REQUIRE(run({"render", dom.string(), "--svg", svg.string(), "--tiles", "2"}).code == 0);
    std::string s1 = slurp(svg);
    CHECK(s1.find("<svg") != std::string::npos);
    CHECK(s1.find("#c0392b") != std::string::npos); // cone point marker
    REQUIRE(run({"render", dom.string(), "--svg", svg.string(), "--tiles", "2"}).code == 0);
    auto dropHeader = [](const std::string& s) {
        auto a = s.find("<!--"), b = s.find("-->");
        return s.substr(0, a) + s.substr(b);
    };
    CHECK(dropHeader(slurp(svg)) == dropHeader(s1));
}

TEST_CASE("cli orbit determinism and seed override") {
    auto a = run({"orbit", "0", "0", "3", "--steps", "20", "--seed", "9"});
    auto b = run({"orbit", "0", "0", "3", "--steps", "20", "--seed", "9"});
    REQUIRE(a.code == 0);
    CHECK(a.out == b.out);
    CHECK(a.out.rfind("step,x,y,z,kappa\n", 0) == 0);
    auto neg = run({"orbit", "-3", "-3", "-3", "--steps", "5"});
    CHECK(neg.code == 0);

    ::setenv("HOLONOMY_LAB_SEED", "9", 1);
    auto env = run({"orbit", "0", "0", "3", "--steps", "20"});
    auto flag = run({"orbit", "0", "0", "3", "--steps", "20", "--seed", "4"});
    auto four = run({"orbit", "0", "0", "3", "--steps", "20", "--seed", "4"});
    ::unsetenv("HOLONOMY_LAB_SEED");
    CHECK(env.out == a.out);
    auto plain4 = run({"orbit", "0", "0", "3", "--steps", "20", "--seed", "4"});
    CHECK(flag.out == plain4.out);
    CHECK(four.code == 0);

    auto csv = scratch("orbit.csv");
    REQUIRE(run({"orbit", "0", "0", "3", "--steps", "20", "--seed", "9", "--csv", csv.string()}).code == 0);
    CHECK(slurp(csv) == a.out);
}
