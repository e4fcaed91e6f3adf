#pragma once

#include <cstdlib>
#include <string>
#include <vector>

#include "volent/errors.hpp"

namespace volent {

/// Group word: nonzero signed 1-based generator indices, -k meaning the
/// inverse of generator k.
using Word = std::vector<int>;

inline Word free_reduce(const Word& w) {
  Word out;
  for (int letter : w) {
    if (!out.empty() && out.back() == -letter)
      out.pop_back();
    else
      out.push_back(letter);
  }
  return out;
}

inline Word invert_word(const Word& w) {
  Word out;
  out.reserve(w.size());
  for (auto it = w.rbegin(); it != w.rend(); ++it) out.push_back(-*it);
  return out;
}

inline Word concat(const Word& a, const Word& b) {
  Word out(a);
  out.insert(out.end(), b.begin(), b.end());
  return out;
}

/// Free reduction plus removal of cancelling first/last letters.
inline Word cyclic_reduce(const Word& w) {
  Word out = free_reduce(w);
  while (out.size() >= 2 && out.front() == -out.back()) {
    out.erase(out.begin());
    out.pop_back();
  }
  return out;
}

inline std::string word_to_string(const Word& w,
                                  const std::vector<std::string>& names) {
  if (w.empty()) return "e";
  std::string out;
  for (int letter : w) {
    size_t k = static_cast<size_t>(std::abs(letter)) - 1;
    if (!out.empty()) out += " ";
    out += (k < names.size() ? names[k] : "g" + std::to_string(k));
    if (letter < 0) out += "^-1";
  }
  return out;
}

/// Finite group presentation. Relators are kept nonempty and cyclically
/// reduced.
struct Presentation {
  std::vector<std::string> generators;
  std::vector<Word> relators;

  size_t rank() const { return generators.size(); }

  void validate() const {
    for (const Word& r : relators) {
      if (r.empty()) throw Error("presentation: empty relator");
      if (cyclic_reduce(r) != r)
        throw Error("presentation: relator not cyclically reduced");
      for (int letter : r) {
        size_t k = static_cast<size_t>(std::abs(letter));
        if (letter == 0 || k > generators.size())
          throw Error("presentation: relator letter out of range");
      }
    }
  }

  /// Exponent-sum vector of a word (image in Z^rank before quotienting).
  std::vector<long long> exponent_sums(const Word& w) const {
    std::vector<long long> e(generators.size(), 0);
    for (int letter : w) {
      size_t k = static_cast<size_t>(std::abs(letter)) - 1;
      e[k] += letter > 0 ? 1 : -1;
    }
    return e;
  }
};

/// Genus-g closed orientable surface group
/// <a1,b1,...,ag,bg | [a1,b1]...[ag,bg]>.
inline Presentation surface_presentation(int genus) {
  if (genus < 1) throw ParameterOutOfRangeError("surface: genus must be >= 1");
  Presentation P;
  Word rel;
  for (int i = 0; i < genus; ++i) {
    P.generators.push_back("a" + std::to_string(i + 1));
    P.generators.push_back("b" + std::to_string(i + 1));
    int a = 2 * i + 1, b = 2 * i + 2;
    rel.insert(rel.end(), {a, b, -a, -b});
  }
  P.relators.push_back(rel);
  P.validate();
  return P;
}

/// One-relator group of a genus-h surface with one boundary circle glued onto
/// a circle by a degree-d map:
/// <x1,y1,...,xh,yh,z | [x1,y1]...[xh,yh] z^d>.
inline Presentation glued_surface_presentation(int h, int d) {
  if (h < 1 || d < 1)
    throw ParameterOutOfRangeError("glued surface: need h >= 1, d >= 1");
  Presentation P;
  for (int i = 0; i < h; ++i) {
    P.generators.push_back("x" + std::to_string(i + 1));
    P.generators.push_back("y" + std::to_string(i + 1));
  }
  P.generators.push_back("z");
  Word rel;
  for (int i = 0; i < h; ++i) {
    int x = 2 * i + 1, y = 2 * i + 2;
    rel.insert(rel.end(), {x, y, -x, -y});
  }
  int z = 2 * h + 1;
  for (int i = 0; i < d; ++i) rel.push_back(z);
  P.relators.push_back(rel);
  P.validate();
  return P;
}

/// Finitely presented HNN extension containing the first Grigorchuk group
/// (generators a, c, d and stable letter u). Shipped for documentation and
/// abelianization checks; no word-problem oracle is provided for it.
inline Presentation grigorchuk_hnn_presentation() {
  Presentation P;
  P.generators = {"a", "c", "d", "u"};
  const int a = 1, c = 2, d = 3, u = 4;
  auto power = [](const Word& w, int n) {
    Word out;
    for (int i = 0; i < n; ++i) out.insert(out.end(), w.begin(), w.end());
    return out;
  };
  P.relators.push_back(Word{a, a});
  P.relators.push_back(Word{c, c});
  P.relators.push_back(Word{d, d});
  P.relators.push_back(power(Word{a, d}, 4));
  P.relators.push_back(power(Word{a, d, a, c, a, c}, 4));
  // u^-1 a u = aca,  u^-1 c u = dc,  u^-1 d u = c
  P.relators.push_back(cyclic_reduce(Word{-u, a, u, -a, -c, -a}));
  P.relators.push_back(cyclic_reduce(Word{-u, c, u, -c, -d}));
  P.relators.push_back(cyclic_reduce(Word{-u, d, u, -c}));
  P.validate();
  return P;
}

}  // namespace volent
