#pragma once

#include <algorithm>
#include <memory>
#include <string>
#include <vector>

#include "volent/group_oracle.hpp"
#include "volent/presentation.hpp"
#include "volent/rational.hpp"

namespace volent {

struct SmallCancellationReport {
  bool pass = false;
  Word max_piece;          // empty when there are no pieces
  size_t max_piece_length = 0;
  size_t min_relator_length = 0;
  std::string max_piece_text;
};

namespace detail {

/// All cyclic rotations of the relators and their inverses, tagged by
/// (relator index, orientation, shift) so that distinct occurrence sites of
/// the same word are distinguished.
struct SymmetrizedSite {
  size_t relator;
  int orientation;  // +1 or -1
  size_t shift;
  Word word;
};

inline std::vector<SymmetrizedSite> symmetrized_sites(const Presentation& P) {
  std::vector<SymmetrizedSite> sites;
  for (size_t r = 0; r < P.relators.size(); ++r) {
    for (int orientation : {+1, -1}) {
      Word base = orientation > 0 ? P.relators[r] : invert_word(P.relators[r]);
      for (size_t s = 0; s < base.size(); ++s) {
        Word rot(base.begin() + s, base.end());
        rot.insert(rot.end(), base.begin(), base.begin() + s);
        sites.push_back({r, orientation, s, std::move(rot)});
      }
    }
  }
  return sites;
}

inline size_t common_prefix(const Word& a, const Word& b) {
  size_t n = std::min(a.size(), b.size());
  size_t i = 0;
  while (i < n && a[i] == b[i]) ++i;
  return i;
}

}  // namespace detail

/// Metric small-cancellation test: every piece (common prefix of two distinct
/// occurrence sites among the symmetrized relators, proper within a single
/// relator) must be shorter than lambda times the minimal relator length.
inline SmallCancellationReport small_cancellation_check(const Presentation& P,
                                                        const Rational& lambda) {
  P.validate();
  SmallCancellationReport report;
  if (P.relators.empty()) {
    report.pass = true;  // vacuously
    return report;
  }
  report.min_relator_length = P.relators[0].size();
  for (const Word& r : P.relators)
    report.min_relator_length = std::min(report.min_relator_length, r.size());

  auto sites = detail::symmetrized_sites(P);
  for (size_t i = 0; i < sites.size(); ++i)
    for (size_t j = i + 1; j < sites.size(); ++j) {
      const auto& x = sites[i];
      const auto& y = sites[j];
      size_t lcp = detail::common_prefix(x.word, y.word);
      if (x.relator == y.relator) {
        // Within a single relator a piece must be a proper cyclic subword;
        // this is what catches proper powers (z^d yields the piece z^{d-1}).
        lcp = std::min(lcp, P.relators[x.relator].size() - 1);
      }
      if (lcp > report.max_piece_length) {
        report.max_piece_length = lcp;
        report.max_piece = Word(x.word.begin(), x.word.begin() + lcp);
      }
    }

  report.pass =
      Rational(static_cast<long>(report.max_piece_length)) <
      lambda * Rational(static_cast<long>(report.min_relator_length));
  report.max_piece_text = word_to_string(report.max_piece, P.generators);
  return report;
}

/// Dehn's algorithm for C'(1/6) presentations: repeatedly free-reduce and
/// replace any subword matching more than half of a symmetrized relator by
/// the shorter complement; a word is trivial iff the reduction reaches the
/// empty word.
class DehnOracle final : public GroupOracle {
 public:
  explicit DehnOracle(Presentation pres, Rational lambda = Rational(1, 6))
      : pres_(std::move(pres)) {
    auto report = small_cancellation_check(pres_, lambda);
    if (!report.pass)
      throw NotSmallCancellationError(
          "dehn: presentation fails C'(" + rational_to_string(lambda) +
          "): piece '" + report.max_piece_text + "' has length " +
          std::to_string(report.max_piece_length) + " >= " +
          rational_to_string(lambda) + " * " +
          std::to_string(report.min_relator_length));
    for (const auto& site : detail::symmetrized_sites(pres_))
      rotations_.push_back(site.word);
    // Abelianization data for bucketing keys.
    abelianized_ = std::make_unique<AbelianizedPresentationOracle>(pres_);
  }

  std::string name() const override { return "dehn"; }
  size_t rank() const override { return pres_.rank(); }

  bool is_trivial(const Word& w) const override {
    Word cur = free_reduce(w);
    bool progress = true;
    while (progress && !cur.empty()) {
      progress = false;
      for (const Word& rot : rotations_) {
        // Longest prefixes first: any match longer than half the relator
        // shortens the word.
        const size_t len = rot.size();
        for (size_t plen = len; plen * 2 > len && plen <= cur.size(); --plen) {
          auto it = std::search(cur.begin(), cur.end(), rot.begin(),
                                rot.begin() + plen);
          if (it == cur.end()) continue;
          Word complement(rot.begin() + plen, rot.end());
          Word replacement = invert_word(complement);
          Word next(cur.begin(), it);
          next.insert(next.end(), replacement.begin(), replacement.end());
          next.insert(next.end(), it + plen, cur.end());
          cur = free_reduce(next);
          progress = true;
          break;
        }
        if (progress) break;
      }
    }
    return cur.empty();
  }

  std::vector<long long> abelian_key(const Word& w) const override {
    return abelianized_->abelian_key(w);
  }

  const Presentation& presentation() const { return pres_; }

 private:
  Presentation pres_;
  std::vector<Word> rotations_;
  std::unique_ptr<AbelianizedPresentationOracle> abelianized_;
};

}  // namespace volent
