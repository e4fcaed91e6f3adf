#pragma once

#include <map>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "volent/errors.hpp"
#include "volent/presentation.hpp"
#include "volent/smith.hpp"

namespace volent {

/// Word-problem oracle: a generating alphabet plus decidable equality. A
/// canonical key (hashable normal form) is an optional acceleration; search
/// kernels fall back to bucketed pairwise equality without one.
class GroupOracle {
 public:
  virtual ~GroupOracle() = default;

  virtual std::string name() const = 0;
  virtual size_t rank() const = 0;

  /// Letters to append when extending words. Default: every generator and its
  /// formal inverse. Oracles for involution generators shrink this.
  virtual std::vector<int> alphabet() const {
    std::vector<int> a;
    for (int k = 1; k <= static_cast<int>(rank()); ++k) {
      a.push_back(k);
      a.push_back(-k);
    }
    return a;
  }

  virtual bool is_trivial(const Word& w) const = 0;

  virtual bool equal(const Word& u, const Word& v) const {
    return is_trivial(concat(u, invert_word(v)));
  }

  /// Canonical word, when the group has a cheap normal form.
  virtual std::optional<Word> normal_form(const Word&) const { return std::nullopt; }

  /// Canonical hashable key; equal words get equal keys.
  virtual std::optional<std::string> canonical_key(const Word& w) const {
    auto nf = normal_form(w);
    if (!nf) return std::nullopt;
    std::ostringstream os;
    for (int x : *nf) os << x << ",";
    return os.str();
  }

  /// Group-invariant bucket key (image in some abelian quotient): words equal
  /// under the oracle must receive equal keys. Used to localize pairwise
  /// equality sweeps. Default: exponent sums, valid when relators have zero
  /// exponent sum in every generator.
  virtual std::vector<long long> abelian_key(const Word& w) const {
    std::vector<long long> e(rank(), 0);
    for (int letter : w) e[static_cast<size_t>(std::abs(letter)) - 1] += letter > 0 ? 1 : -1;
    return e;
  }
};

/// Free group of given rank; equality by free reduction.
class FreeOracle final : public GroupOracle {
 public:
  explicit FreeOracle(size_t rank) : rank_(rank) {
    if (rank < 1) throw ParameterOutOfRangeError("free oracle: rank >= 1");
  }
  std::string name() const override { return "free(" + std::to_string(rank_) + ")"; }
  size_t rank() const override { return rank_; }
  bool is_trivial(const Word& w) const override { return free_reduce(w).empty(); }
  std::optional<Word> normal_form(const Word& w) const override {
    return free_reduce(w);
  }

 private:
  size_t rank_;
};

/// Free abelian group Z^n; equality by exponent vectors.
class AbelianOracle final : public GroupOracle {
 public:
  explicit AbelianOracle(size_t rank) : rank_(rank) {
    if (rank < 1) throw ParameterOutOfRangeError("abelian oracle: rank >= 1");
  }
  std::string name() const override { return "abelian(" + std::to_string(rank_) + ")"; }
  size_t rank() const override { return rank_; }
  bool is_trivial(const Word& w) const override {
    for (long long e : abelian_key(w))
      if (e != 0) return false;
    return true;
  }
  std::optional<Word> normal_form(const Word& w) const override {
    Word nf;
    auto e = abelian_key(w);
    for (size_t k = 0; k < rank_; ++k) {
      int letter = e[k] > 0 ? static_cast<int>(k) + 1 : -static_cast<int>(k) - 1;
      for (long long i = 0; i < std::llabs(e[k]); ++i) nf.push_back(letter);
    }
    return nf;
  }

 private:
  size_t rank_;
};

/// Equality through the abelianization of a presentation, computed once by
/// Smith reduction. This decides the word problem exactly when the presented
/// group is abelian (e.g. the edge-path presentation of a torus); for
/// non-abelian groups it only decides equality of homology classes.
class AbelianizedPresentationOracle final : public GroupOracle {
 public:
  explicit AbelianizedPresentationOracle(Presentation pres)
      : pres_(std::move(pres)) {
    pres_.validate();
    // Column-style Smith reduction of the relator matrix with a running
    // change of basis U so that image(w) = U * exponent_sums(w) has its
    // first torsion_.size() entries taken modulo the invariant factors and
    // the rest free.
    const size_t n = pres_.rank();
    IntegerMatrix R(n, std::vector<Integer>(pres_.relators.size(), 0));
    for (size_t j = 0; j < pres_.relators.size(); ++j) {
      auto e = pres_.exponent_sums(pres_.relators[j]);
      for (size_t i = 0; i < n; ++i) R[i][j] = static_cast<long>(e[i]);
    }
    basis_ = IntegerMatrix(n, std::vector<Integer>(n, 0));
    for (size_t i = 0; i < n; ++i) basis_[i][i] = 1;
    reduce(R);
  }

  std::string name() const override { return "abelianized"; }
  size_t rank() const override { return pres_.rank(); }

  bool is_trivial(const Word& w) const override {
    auto img = image(w);
    for (const Integer& x : img)
      if (x != 0) return false;
    return true;
  }

  std::optional<std::string> canonical_key(const Word& w) const override {
    std::ostringstream os;
    for (const Integer& x : image(w)) os << x.get_str() << ",";
    return os.str();
  }

  std::vector<long long> abelian_key(const Word& w) const override {
    std::vector<long long> out;
    for (const Integer& x : image(w)) out.push_back(x.get_si());
    return out;
  }

  /// Image of a word in the abelianization, torsion coordinates reduced.
  std::vector<Integer> image(const Word& w) const {
    const size_t n = pres_.rank();
    std::vector<Integer> e(n, 0);
    for (int letter : w)
      e[static_cast<size_t>(std::abs(letter)) - 1] += letter > 0 ? 1 : -1;
    std::vector<Integer> img(n, 0);
    for (size_t i = 0; i < n; ++i)
      for (size_t j = 0; j < n; ++j) img[i] += basis_[i][j] * e[j];
    for (size_t i = 0; i < diag_.size(); ++i) {
      if (diag_[i] == 0) continue;
      img[i] %= diag_[i];
      if (img[i] < 0) img[i] += diag_[i];
    }
    return img;
  }

  AbelianInvariants invariants() const { return abelianization(pres_); }

 private:
  // Row/column elimination on R, mirroring every row operation on basis_,
  // until R is diagonal; diag_ keeps the nonzero diagonal entries.
  void reduce(IntegerMatrix& R) {
    const size_t rows = R.size();
    const size_t cols = rows == 0 ? 0 : R[0].size();
    size_t corner = 0;
    auto any_nonzero = [&](size_t from) {
      for (size_t i = from; i < rows; ++i)
        for (size_t j = from; j < cols; ++j)
          if (R[i][j] != 0) return true;
      return false;
    };
    while (corner < rows && corner < cols && any_nonzero(corner)) {
      size_t pi = corner, pj = corner;
      Integer best = 0;
      for (size_t i = corner; i < rows; ++i)
        for (size_t j = corner; j < cols; ++j) {
          if (R[i][j] == 0) continue;
          Integer a = abs(R[i][j]);
          if (best == 0 || a < best) {
            best = a;
            pi = i;
            pj = j;
          }
        }
      std::swap(R[corner], R[pi]);
      std::swap(basis_[corner], basis_[pi]);
      for (size_t i = 0; i < rows; ++i) std::swap(R[i][corner], R[i][pj]);

      bool clean = true;
      for (size_t i = corner + 1; i < rows; ++i) {
        if (R[i][corner] == 0) continue;
        Integer q = R[i][corner] / R[corner][corner];
        for (size_t j = 0; j < cols; ++j) R[i][j] -= q * R[corner][j];
        for (size_t j = 0; j < rows; ++j)
          basis_[i][j] -= q * basis_[corner][j];
        if (R[i][corner] != 0) clean = false;
      }
      for (size_t j = corner + 1; j < cols; ++j) {
        if (R[corner][j] == 0) continue;
        Integer q = R[corner][j] / R[corner][corner];
        for (size_t i = 0; i < rows; ++i) R[i][j] -= q * R[i][corner];
        if (R[corner][j] != 0) clean = false;
      }
      if (!clean) continue;
      Integer d = abs(R[corner][corner]);
      diag_.push_back(d);
      ++corner;
    }
  }

  Presentation pres_;
  IntegerMatrix basis_;
  std::vector<Integer> diag_;
};

/// Subgroup generated by fixed ambient words: letters substitute to the
/// ambient group, where all questions are answered.
class WordSubstitutionOracle final : public GroupOracle {
 public:
  WordSubstitutionOracle(std::shared_ptr<const GroupOracle> base,
                         std::vector<Word> generator_words)
      : base_(std::move(base)), gens_(std::move(generator_words)) {
    if (gens_.empty())
      throw ParameterOutOfRangeError("subgroup oracle: no generators");
  }
  std::string name() const override { return "subgroup of " + base_->name(); }
  size_t rank() const override { return gens_.size(); }
  bool is_trivial(const Word& w) const override {
    return base_->is_trivial(substitute(w));
  }
  std::optional<std::string> canonical_key(const Word& w) const override {
    return base_->canonical_key(substitute(w));
  }
  std::vector<long long> abelian_key(const Word& w) const override {
    return base_->abelian_key(substitute(w));
  }

  Word substitute(const Word& w) const {
    Word out;
    for (int letter : w) {
      const Word& g = gens_[static_cast<size_t>(std::abs(letter)) - 1];
      if (letter > 0)
        out.insert(out.end(), g.begin(), g.end());
      else {
        Word gi = invert_word(g);
        out.insert(out.end(), gi.begin(), gi.end());
      }
    }
    return free_reduce(out);
  }

 private:
  std::shared_ptr<const GroupOracle> base_;
  std::vector<Word> gens_;
};

}  // namespace volent
