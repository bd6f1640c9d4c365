#pragma once
#include <string>
#include <vector>

#include "holonomy/hyp_core.hpp"

namespace holo {

// Free-group word; letter k > 0 is generator k-1, -k its inverse.
using Word = std::vector<int>;

Word reduceWord(const Word& w);
Word inverseWord(const Word& w);
Word concat(const Word& a, const Word& b);
inline Word letter(int generator, int exponent = 1) { return {exponent > 0 ? generator + 1 : -(generator + 1)}; }
// Replace each letter k by images[k-1] (or its inverse).
Word substitute(const Word& w, const std::vector<Word>& images);
Isometry evaluate(const Word& w, const std::vector<Isometry>& gens);
std::string formatWord(const Word& w, const std::vector<std::string>& names);

} // namespace holo
