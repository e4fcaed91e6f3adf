#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "volent/group_oracle.hpp"

namespace volent {

namespace grig {

// Generators a=1, b=2, c=3, d=4 acting on the rooted binary tree:
// a swaps the two subtrees; b=(a,c), c=(a,d), d=(1,b) on sections.
// All four are involutions and {1,b,c,d} is a Klein four-group.

inline constexpr int kA = 1, kB = 2, kC = 3, kD = 4;

/// Klein multiplication within {b,c,d}: product of two distinct letters is
/// the third, equal letters cancel (0 = identity).
inline int klein_product(int x, int y) {
  if (x == 0) return y;
  if (y == 0) return x;
  if (x == y) return 0;
  return kB + kC + kD - x - y;
}

/// Normalizes a word over {a,b,c,d} (negative letters folded, aa cancelled,
/// adjacent b/c/d letters combined) into the alternating reduced form.
inline Word reduce(const Word& w) {
  Word out;
  for (int raw : w) {
    int letter = raw < 0 ? -raw : raw;
    if (letter < kA || letter > kD)
      throw ParameterOutOfRangeError("grigorchuk: bad letter");
    if (letter == kA) {
      if (!out.empty() && out.back() == kA)
        out.pop_back();
      else
        out.push_back(kA);
    } else {
      if (!out.empty() && out.back() != kA) {
        int combined = klein_product(out.back(), letter);
        out.pop_back();
        if (combined != 0) {
          // The combined letter may now cancel/combine again.
          Word rest = out;
          rest.push_back(combined);
          out = reduce(rest);
        }
      } else {
        out.push_back(letter);
      }
    }
  }
  return out;
}

/// First-level sections (left, right) of the generators; 0 = identity.
inline std::pair<int, int> sections_of(int letter) {
  switch (letter) {
    case kB: return {kA, kC};
    case kC: return {kA, kD};
    case kD: return {0, kB};
    default: throw ParameterOutOfRangeError("grigorchuk: no sections for a");
  }
}

/// Sections of a reduced word in the level-1 stabilizer. For a reduced word
/// of length n each section has at most (n+1)/2 letters, which is what makes
/// the recursion terminate.
inline std::pair<Word, Word> word_sections(const Word& reduced) {
  Word s0, s1;
  int parity = 0;
  for (int letter : reduced) {
    if (letter == kA) {
      parity ^= 1;
      continue;
    }
    auto [left, right] = sections_of(letter);
    if (parity == 0) {
      if (left) s0.push_back(left);
      if (right) s1.push_back(right);
    } else {
      if (right) s0.push_back(right);
      if (left) s1.push_back(left);
    }
  }
  return {s0, s1};
}

inline bool word_trivial(const Word& w) {
  Word r = reduce(w);
  if (r.empty()) return true;
  if (r.size() == 1) return false;
  int a_count = 0;
  for (int letter : r)
    if (letter == kA) ++a_count;
  if (a_count % 2 == 1) return false;  // acts nontrivially on level 1
  auto [s0, s1] = word_sections(r);
  return word_trivial(s0) && word_trivial(s1);
}

}  // namespace grig

/// The first Grigorchuk group via the standard section recursion: an element
/// is trivial iff it stabilizes level 1 and both level-1 sections are
/// trivial. Section words strictly shrink, so the recursion terminates.
class GrigorchukOracle final : public GroupOracle {
 public:
  std::string name() const override { return "grigorchuk"; }
  size_t rank() const override { return 4; }

  /// All generators are involutions, so inverses add nothing.
  std::vector<int> alphabet() const override { return {1, 2, 3, 4}; }

  bool is_trivial(const Word& w) const override { return grig::word_trivial(w); }

  bool equal(const Word& u, const Word& v) const override {
    Word uv = u;
    for (auto it = v.rbegin(); it != v.rend(); ++it) uv.push_back(std::abs(*it));
    return is_trivial(uv);
  }

  /// Parities of (a, b+d, c+d) exponents: the image in the abelianization
  /// (Z/2)^3, since d = bc.
  std::vector<long long> abelian_key(const Word& w) const override {
    long long ea = 0, eb = 0, ec = 0;
    for (int raw : w) {
      int letter = std::abs(raw);
      if (letter == grig::kA) ++ea;
      if (letter == grig::kB || letter == grig::kD) ++eb;
      if (letter == grig::kC || letter == grig::kD) ++ec;
    }
    return {ea % 2, eb % 2, ec % 2};
  }
};

/// Independent implementation: generators realized as explicit permutations
/// of the level-L vertices of the binary tree; a word is trivial iff its
/// permutation is the identity. The level is fixed per oracle and must
/// dominate the depth at which short elements act; the section contraction
/// bounds that depth by about log2 of the word length plus a constant, so the
/// default of 12 covers every word these searches produce.
class GrigorchukTreeOracle final : public GroupOracle {
 public:
  explicit GrigorchukTreeOracle(int level = 12) : level_(level) {
    if (level < 3 || level > 24)
      throw ParameterOutOfRangeError("tree oracle: level out of range");
    build();
  }

  std::string name() const override {
    return "grigorchuk-tree(" + std::to_string(level_) + ")";
  }
  size_t rank() const override { return 4; }
  std::vector<int> alphabet() const override { return {1, 2, 3, 4}; }

  bool is_trivial(const Word& w) const override {
    auto p = permutation(w);
    for (uint32_t i = 0; i < p.size(); ++i)
      if (p[i] != i) return false;
    return true;
  }

  std::optional<std::string> canonical_key(const Word& w) const override {
    auto p = permutation(w);
    return std::string(reinterpret_cast<const char*>(p.data()),
                       p.size() * sizeof(uint32_t));
  }

  std::vector<long long> abelian_key(const Word& w) const override {
    long long ea = 0, eb = 0, ec = 0;
    for (int raw : w) {
      int letter = std::abs(raw);
      if (letter == grig::kA) ++ea;
      if (letter == grig::kB || letter == grig::kD) ++eb;
      if (letter == grig::kC || letter == grig::kD) ++ec;
    }
    return {ea % 2, eb % 2, ec % 2};
  }

  std::vector<uint32_t> permutation(const Word& w) const {
    const uint32_t n = 1u << level_;
    std::vector<uint32_t> p(n);
    for (uint32_t i = 0; i < n; ++i) p[i] = i;
    // Left-to-right word order: the image of a leaf under the word is the
    // composite of generator actions applied in reading order.
    for (int raw : w) {
      int letter = std::abs(raw);
      const auto& g = letter_perm_[letter - 1];
      for (uint32_t i = 0; i < n; ++i) p[i] = g[p[i]];
    }
    return p;
  }

 private:
  void build() {
    // Level-by-level construction: at level 1, a swaps and b,c,d fix; at
    // level l+1 the top bit routes into the sections.
    std::array<std::vector<uint32_t>, 4> cur;
    for (auto& v : cur) v = {0, 1};
    cur[0] = {1, 0};  // a swaps
    for (int l = 2; l <= level_; ++l) {
      const uint32_t half = 1u << (l - 1);
      std::array<std::vector<uint32_t>, 4> next;
      for (auto& v : next) v.resize(2 * half);
      for (uint32_t x = 0; x < 2 * half; ++x) {
        const uint32_t top = x >> (l - 1);
        const uint32_t rest = x & (half - 1);
        next[0][x] = ((1 - top) << (l - 1)) | rest;          // a: swap subtrees
        auto with_top = [&](uint32_t t, uint32_t r) { return (t << (l - 1)) | r; };
        next[1][x] = top == 0 ? with_top(0, cur[0][rest])    // b = (a, c)
                              : with_top(1, cur[2][rest]);
        next[2][x] = top == 0 ? with_top(0, cur[0][rest])    // c = (a, d)
                              : with_top(1, cur[3][rest]);
        next[3][x] = top == 0 ? with_top(0, rest)            // d = (1, b)
                              : with_top(1, cur[1][rest]);
      }
      cur = std::move(next);
    }
    letter_perm_ = std::move(cur);
  }

  int level_;
  std::array<std::vector<uint32_t>, 4> letter_perm_;
};

}  // namespace volent
