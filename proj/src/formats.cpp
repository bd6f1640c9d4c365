#include "holonomy/formats.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

namespace holo {

namespace {

std::string num17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v == 0 ? 0.0 : v);
    return buf;
}

std::string num6(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.6g", std::abs(v) < 5e-7 ? 0.0 : v);
    return buf;
}

[[noreturn]] void parseFail(int line, const std::string& what) {
    throw Error(ErrorCode::ParseError, "line " + std::to_string(line) + ": " + what);
}

double toNumber(const std::string& tok, int line) {
    char* end = nullptr;
    double v = std::strtod(tok.c_str(), &end);
    if (tok.empty() || *end != '\0' || !std::isfinite(v)) parseFail(line, "expected a number, got '" + tok + "'");
    return v;
}

int toInt(const std::string& tok, int line) {
    double v = toNumber(tok, line);
    if (v != std::floor(v) || std::abs(v) > 1e9) parseFail(line, "expected an integer, got '" + tok + "'");
    return static_cast<int>(v);
}

// Non-empty lines with comments removed, split into tokens.
struct Line {
    int number;
    std::vector<std::string> tokens;
};

std::vector<Line> tokenize(std::istream& in) {
    std::vector<Line> out;
    std::string raw;
    int number = 0;
    while (std::getline(in, raw)) {
        ++number;
        if (auto hash = raw.find('#'); hash != std::string::npos) raw.resize(hash);
        std::istringstream ss(raw);
        Line l{number, {}};
        for (std::string tok; ss >> tok;) l.tokens.push_back(tok);
        if (!l.tokens.empty()) out.push_back(std::move(l));
    }
    return out;
}

int labelIndex(const std::string& label, int line) {
    if (label.size() < 2 || (label[0] != 'A' && label[0] != 'B' && label[0] != 'a' && label[0] != 'b'))
        parseFail(line, "expected a generator label like A1 or B1, got '" + label + "'");
    int i = toInt(label.substr(1), line);
    if (i < 1) parseFail(line, "generator labels start at 1");
    return 2 * (i - 1) + ((label[0] == 'B' || label[0] == 'b') ? 1 : 0);
}

Isometry matrixFrom(const std::vector<std::string>& t, size_t first, int line) {
    if (t.size() < first + 4) parseFail(line, "expected four matrix entries");
    Mat2 m{toNumber(t[first], line), toNumber(t[first + 1], line), toNumber(t[first + 2], line),
           toNumber(t[first + 3], line)};
    Isometry n;
    try {
        n = normalize(m);
    } catch (const Error& e) {
        parseFail(line, e.what());
    }
    // keep the written digits when they already describe a unimodular matrix
    if (std::abs(m.det() - 1) < 1e-13) {
        bool flipped = n.m.a * m.a + n.m.b * m.b + n.m.c * m.c + n.m.d * m.d < 0;
        return {flipped ? -m : m};
    }
    return n;
}

std::ifstream openOrFail(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorCode::ParseError, "cannot open " + path);
    return in;
}

} // namespace

std::string generatorLabel(int index) { return std::string(index % 2 ? "B" : "A") + std::to_string(index / 2 + 1); }

SurfaceRepresentation readRepFile(std::istream& in) {
    auto lines = tokenize(in);
    if (lines.empty()) throw Error(ErrorCode::ParseError, "empty representation file");
    const Line& head = lines.front();
    if (head.tokens.size() != 2 || head.tokens[0] != "genus") parseFail(head.number, "expected 'genus G'");
    int genus = toInt(head.tokens[1], head.number);
    if (genus < 1) parseFail(head.number, "genus must be positive");
    std::vector<std::optional<Isometry>> gens(2 * genus);
    for (size_t i = 1; i < lines.size(); ++i) {
        const Line& l = lines[i];
        if (l.tokens.size() != 5) parseFail(l.number, "expected 'label a b c d'");
        int idx = labelIndex(l.tokens[0], l.number);
        if (idx >= 2 * genus) parseFail(l.number, "label " + l.tokens[0] + " exceeds the genus");
        if (gens[idx]) parseFail(l.number, "duplicate label " + l.tokens[0]);
        gens[idx] = matrixFrom(l.tokens, 1, l.number);
    }
    std::vector<Isometry> out;
    for (int i = 0; i < 2 * genus; ++i) {
        if (!gens[i]) throw Error(ErrorCode::ParseError, "missing generator " + generatorLabel(i));
        out.push_back(*gens[i]);
    }
    return makeRepresentation(genus, out);
}

SurfaceRepresentation readRepFile(const std::string& path) {
    auto in = openOrFail(path);
    return readRepFile(in);
}

void writeRepFile(std::ostream& out, const SurfaceRepresentation& rep) {
    out << "genus " << rep.genus << "\n";
    for (size_t i = 0; i < rep.generators.size(); ++i) {
        const Mat2& m = rep.generators[i].m;
        out << generatorLabel(static_cast<int>(i)) << " " << num17(m.a) << " " << num17(m.b) << " " << num17(m.c)
            << " " << num17(m.d) << "\n";
    }
}

void writeDomainFile(std::ostream& out, const ConeSurfaceData& data) {
    out << "[meta]\n";
    out << "genus " << data.genus << "\n";
    out << "chi " << data.chi << "\n";
    out << "euler " << eulerNumberClosed(data.holonomy) << "\n";
    out << "[vertices]\n";
    for (size_t i = 0; i < data.polygon.size(); ++i)
        out << i << " " << num17(data.polygon[i].x) << " " << num17(data.polygon[i].y) << "\n";
    out << "[pairings]\n";
    for (const auto& p : data.pairings)
        out << p.from << " " << p.to << " " << num17(p.iso.m.a) << " " << num17(p.iso.m.b) << " "
            << num17(p.iso.m.c) << " " << num17(p.iso.m.d) << "\n";
    out << "[cones]\n";
    for (const auto& c : data.conePoints) {
        out << "orbit";
        for (int v : c.vertexOrbit) out << " " << v;
        out << " angle " << num17(c.angle) << "\n";
    }
    out << "[holonomy]\n";
    for (size_t i = 0; i < data.holonomy.generators.size(); ++i) {
        const Mat2& m = data.holonomy.generators[i].m;
        out << generatorLabel(static_cast<int>(i)) << " " << num17(m.a) << " " << num17(m.b) << " " << num17(m.c)
            << " " << num17(m.d) << " word";
        if (i < data.generatorWords.size())
            for (int k : data.generatorWords[i]) out << " " << k;
        out << "\n";
    }
}

ConeSurfaceData readDomainFile(std::istream& in) {
    ConeSurfaceData d;
    d.conePoints.clear();
    std::string section;
    std::map<int, PointH2> vertices;
    std::vector<std::optional<Isometry>> gens;
    std::vector<Word> words;
    int genus = -1;
    for (const Line& l : tokenize(in)) {
        const auto& t = l.tokens;
        if (t[0].front() == '[') {
            section = t[0];
            if (section != "[meta]" && section != "[vertices]" && section != "[pairings]" && section != "[cones]" &&
                section != "[holonomy]")
                parseFail(l.number, "unknown section " + section);
            continue;
        }
        if (section == "[meta]") {
            if (t.size() != 2) parseFail(l.number, "expected 'key value'");
            if (t[0] == "genus") genus = toInt(t[1], l.number);
            else if (t[0] == "chi") d.chi = toInt(t[1], l.number);
            else if (t[0] != "euler") parseFail(l.number, "unknown meta key " + t[0]);
        } else if (section == "[vertices]") {
            if (t.size() != 3) parseFail(l.number, "expected 'index x y'");
            int i = toInt(t[0], l.number);
            PointH2 p{toNumber(t[1], l.number), toNumber(t[2], l.number)};
            if (!(p.y > 0)) parseFail(l.number, "vertex must lie in the upper half-plane");
            if (i != static_cast<int>(vertices.size()) || vertices.count(i)) parseFail(l.number, "vertices must be listed in order");
            vertices[i] = p;
        } else if (section == "[pairings]") {
            if (t.size() != 6) parseFail(l.number, "expected 'from to a b c d'");
            d.pairings.push_back({toInt(t[0], l.number), toInt(t[1], l.number), matrixFrom(t, 2, l.number)});
        } else if (section == "[cones]") {
            if (t.size() < 4 || t[0] != "orbit" || t[t.size() - 2] != "angle")
                parseFail(l.number, "expected 'orbit i j ... angle value'");
            ConePoint c;
            for (size_t k = 1; k + 2 < t.size(); ++k) c.vertexOrbit.push_back(toInt(t[k], l.number));
            c.angle = toNumber(t.back(), l.number);
            c.order = c.angle / kTwoPi - 1;
            d.conePoints.push_back(c);
        } else if (section == "[holonomy]") {
            if (t.size() < 6 || t[5] != "word") parseFail(l.number, "expected 'label a b c d word letters...'");
            int idx = labelIndex(t[0], l.number);
            if (idx >= static_cast<int>(gens.size())) {
                gens.resize(idx + 1);
                words.resize(idx + 1);
            }
            gens[idx] = matrixFrom(t, 1, l.number);
            Word w;
            for (size_t k = 6; k < t.size(); ++k) w.push_back(toInt(t[k], l.number));
            words[idx] = w;
        } else {
            parseFail(l.number, "data outside a section");
        }
    }
    if (genus < 1) throw Error(ErrorCode::ParseError, "missing genus in [meta]");
    d.genus = genus;
    for (auto& [i, p] : vertices) d.polygon.push_back(p);
    const int n = static_cast<int>(d.polygon.size());
    for (const auto& p : d.pairings)
        if (p.from < 0 || p.from >= n || p.to < 0 || p.to >= n)
            throw Error(ErrorCode::ParseError, "pairing side index out of range");
    for (const auto& c : d.conePoints)
        for (int v : c.vertexOrbit)
            if (v < 0 || v >= n) throw Error(ErrorCode::ParseError, "cone orbit vertex out of range");
    std::vector<Isometry> hol;
    for (size_t i = 0; i < gens.size(); ++i) {
        if (!gens[i]) throw Error(ErrorCode::ParseError, "missing holonomy generator " + generatorLabel(static_cast<int>(i)));
        hol.push_back(*gens[i]);
    }
    if (static_cast<int>(hol.size()) != 2 * genus)
        throw Error(ErrorCode::ParseError, "holonomy section does not match the genus");
    for (const Word& w : words)
        for (int k : w)
            if (k == 0 || std::abs(k) > static_cast<int>(d.pairings.size()))
                throw Error(ErrorCode::ParseError, "holonomy word letter out of range");
    d.holonomy = makeRepresentation(genus, hol);
    d.generatorWords = words;
    return d;
}

ConeSurfaceData readDomainFile(const std::string& path) {
    auto in = openOrFail(path);
    return readDomainFile(in);
}

namespace {

struct Canvas {
    double size;
    double cx() const { return size / 2; }
    double scale() const { return size / 2 - 10; }
    // Disk point to screen (y grows downwards).
    std::pair<double, double> screen(cplx w) const { return {cx() + scale() * w.real(), cx() - scale() * w.imag()}; }
};

// Path command drawing the geodesic from a to b (the pen is at a).
std::string arcPath(const Canvas& cv, cplx a, cplx b) {
    auto [ax, ay] = cv.screen(a);
    auto [bx, by] = cv.screen(b);
    std::ostringstream ss;
    // circle through a, b and the inverse of a; straight when a, b and 0 are collinear
    double cross = a.real() * b.imag() - a.imag() * b.real();
    double na = std::norm(a);
    if (std::abs(cross) < 1e-12 || na < 1e-24) {
        ss << "L " << num6(bx) << " " << num6(by);
        return ss.str();
    }
    cplx inv = a / na;
    // circumcentre of a, b, inv
    auto circum = [](cplx p, cplx q, cplx r) {
        double d = 2 * (p.real() * (q.imag() - r.imag()) + q.real() * (r.imag() - p.imag()) + r.real() * (p.imag() - q.imag()));
        double ux = (std::norm(p) * (q.imag() - r.imag()) + std::norm(q) * (r.imag() - p.imag()) + std::norm(r) * (p.imag() - q.imag())) / d;
        double uy = (std::norm(p) * (r.real() - q.real()) + std::norm(q) * (p.real() - r.real()) + std::norm(r) * (q.real() - p.real())) / d;
        return cplx(ux, uy);
    };
    cplx c = circum(a, b, inv);
    double r = std::abs(a - c) * cv.scale();
    auto [cx, cy] = cv.screen(c);
    double sweep = (ax - cx) * (by - cy) - (ay - cy) * (bx - cx);
    ss << "A " << num6(r) << " " << num6(r) << " 0 0 " << (sweep > 0 ? 1 : 0) << " " << num6(bx) << " " << num6(by);
    return ss.str();
}

std::string polygonPath(const Canvas& cv, const std::vector<PointH2>& poly) {
    auto [x0, y0] = cv.screen(poly[0].toDisk());
    std::string out = "M " + num6(x0) + " " + num6(y0);
    for (size_t i = 0; i < poly.size(); ++i)
        out += " " + arcPath(cv, poly[i].toDisk(), poly[(i + 1) % poly.size()].toDisk());
    return out + " Z";
}

} // namespace

void writeSvg(std::ostream& out, const ConeSurfaceData& data, const RenderOptions& opts) {
    Canvas cv{opts.size};
    out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    out << "<!-- holonomy_lab svg 1 -->\n";
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << num6(cv.size) << "\" height=\"" << num6(cv.size)
        << "\" viewBox=\"0 0 " << num6(cv.size) << " " << num6(cv.size) << "\">\n";
    out << "<circle cx=\"" << num6(cv.cx()) << "\" cy=\"" << num6(cv.cx()) << "\" r=\"" << num6(cv.scale())
        << "\" fill=\"white\" stroke=\"black\" stroke-width=\"1\"/>\n";

    // tiles: group elements reached through pairings, deduplicated by the image of an interior point
    std::array<double, 2> k{0, 0};
    for (const auto& v : data.polygon) {
        auto kv = v.toKlein();
        k[0] += kv[0] / data.polygon.size();
        k[1] += kv[1] / data.polygon.size();
    }
    const PointH2 probe = PointH2::fromKlein(k);
    // display coordinates: the interior probe point sits at the centre of the disk
    const Isometry view = pointFrame(probe).inverse();
    auto key = [&](const Isometry& g) {
        cplx w = apply(g, probe).toDisk();
        return std::make_pair(std::llround(w.real() * 1e6), std::llround(w.imag() * 1e6));
    };
    std::vector<std::vector<Isometry>> layers{{Isometry::identity()}};
    std::set<std::pair<long long, long long>> seen{key(Isometry::identity())};
    const size_t cap = 4000;
    size_t total = 1;
    for (int layer = 1; layer <= opts.tiles && total < cap; ++layer) {
        std::vector<Isometry> next;
        for (const auto& m : layers.back())
            for (const auto& p : data.pairings)
                for (const Isometry& t : {p.iso, p.iso.inverse()}) {
                    Isometry g = m * t;
                    cplx w = apply(view * g, probe).toDisk();
                    if (!(std::abs(w) < 0.9999)) continue;
                    if (!seen.insert(key(g)).second || total >= cap) continue;
                    next.push_back(g);
                    ++total;
                }
        layers.push_back(next);
    }
    for (size_t layer = layers.size(); layer-- > 1;)
        for (const auto& g : layers[layer]) {
            std::vector<PointH2> img;
            for (const auto& v : data.polygon) img.push_back(apply(view * g, v));
            out << "<path d=\"" << polygonPath(cv, img) << "\" fill=\"none\" stroke=\"#7a8ca6\" stroke-width=\"0.6\"/>\n";
        }
    std::vector<PointH2> base;
    for (const auto& v : data.polygon) base.push_back(apply(view, v));
    out << "<path d=\"" << polygonPath(cv, base)
        << "\" fill=\"#f3d9a4\" fill-opacity=\"0.6\" stroke=\"black\" stroke-width=\"1.5\"/>\n";
    for (const auto& c : data.conePoints)
        for (int v : c.vertexOrbit) {
            auto [x, y] = cv.screen(base[v].toDisk());
            out << "<circle cx=\"" << num6(x) << "\" cy=\"" << num6(y) << "\" r=\"3\" fill=\""
                << (std::abs(c.angle - kTwoPi) > tol_ang ? "#c0392b" : "#2c3e50") << "\"/>\n";
        }
    out << "</svg>\n";
}

void writeOrbitCsv(std::ostream& out, const std::vector<Character>& orbit) {
    out << "step,x,y,z,kappa\n";
    for (size_t i = 0; i < orbit.size(); ++i) {
        const auto& c = orbit[i];
        out << i << "," << num17(c.x) << "," << num17(c.y) << "," << num17(c.z) << "," << num17(c.kappa) << "\n";
    }
}

} // namespace holo
