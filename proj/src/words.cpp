#include "holonomy/words.hpp"

#include <cstdlib>

namespace holo {

Word reduceWord(const Word& w) {
    Word out;
    out.reserve(w.size());
    for (int k : w) {
        if (!out.empty() && out.back() == -k)
            out.pop_back();
        else
            out.push_back(k);
    }
    return out;
}

Word inverseWord(const Word& w) {
    Word out(w.rbegin(), w.rend());
    for (int& k : out) k = -k;
    return out;
}

Word concat(const Word& a, const Word& b) {
    Word out = a;
    out.insert(out.end(), b.begin(), b.end());
    return reduceWord(out);
}

Word substitute(const Word& w, const std::vector<Word>& images) {
    Word out;
    for (int k : w) {
        const Word& img = images[std::abs(k) - 1];
        if (k > 0)
            out.insert(out.end(), img.begin(), img.end());
        else {
            Word inv = inverseWord(img);
            out.insert(out.end(), inv.begin(), inv.end());
        }
    }
    return reduceWord(out);
}

Isometry evaluate(const Word& w, const std::vector<Isometry>& gens) {
    Mat2 acc;
    for (int k : w) {
        const Mat2& m = gens[std::abs(k) - 1].m;
        acc = acc * (k > 0 ? m : m.adjugate());
    }
    return normalize(acc);
}

std::string formatWord(const Word& w, const std::vector<std::string>& names) {
    if (w.empty()) return "1";
    std::string s;
    for (int k : w) {
        if (!s.empty()) s += ' ';
        s += names[std::abs(k) - 1];
        if (k < 0) s += "^-1";
    }
    return s;
}

} // namespace holo
