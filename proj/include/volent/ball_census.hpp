#pragma once

#include <cmath>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <unordered_map>
#include <vector>

#include "volent/errors.hpp"
#include "volent/fit.hpp"
#include "volent/group_oracle.hpp"

namespace volent {

struct Budget {
  size_t max_elements = 5'000'000;
};

/// counts[t] = |B_S(t)|, the number of group elements of word length <= t.
struct BallCensus {
  std::string group_id;
  std::string generating_set_id;
  std::vector<unsigned long long> counts;
  bool complete = true;

  int radius() const { return static_cast<int>(counts.size()) - 1; }
};

namespace detail {

inline std::string key_of(const std::vector<long long>& v) {
  std::ostringstream os;
  for (long long x : v) os << x << ",";
  return os.str();
}

}  // namespace detail

/// Breadth-first enumeration of the ball of the given radius. Deduplication
/// uses the oracle's canonical key when available; otherwise candidates are
/// bucketed by their abelian key and compared pairwise through the oracle.
/// On budget exhaustion the census of the largest completed radius is
/// returned with complete = false.
inline BallCensus ball_census(const GroupOracle& oracle, int radius,
                              Budget budget = {}) {
  if (radius < 0) throw ParameterOutOfRangeError("census: radius >= 0");
  BallCensus census;
  census.group_id = oracle.name();
  {
    std::ostringstream os;
    for (int a : oracle.alphabet()) os << a << " ";
    census.generating_set_id = os.str();
  }
  census.counts = {1};

  std::vector<Word> elements{{}};  // representatives, BFS order
  std::vector<size_t> frontier{0};

  const bool keyed = oracle.canonical_key(Word{}).has_value();
  std::unordered_map<std::string, size_t> by_key;
  std::unordered_map<std::string, std::vector<size_t>> buckets;
  if (keyed)
    by_key[*oracle.canonical_key(Word{})] = 0;
  else
    buckets[detail::key_of(oracle.abelian_key(Word{}))].push_back(0);

  const auto alphabet = oracle.alphabet();
  for (int t = 1; t <= radius; ++t) {
    std::vector<size_t> next;
    for (size_t idx : frontier) {
      for (int letter : alphabet) {
        Word w = elements[idx];
        w.push_back(letter);
        bool fresh = false;
        if (keyed) {
          std::string key = *oracle.canonical_key(w);
          fresh = by_key.emplace(std::move(key), elements.size()).second;
        } else {
          auto& bucket = buckets[detail::key_of(oracle.abelian_key(w))];
          fresh = true;
          for (size_t other : bucket)
            if (oracle.equal(w, elements[other])) {
              fresh = false;
              break;
            }
          if (fresh) bucket.push_back(elements.size());
        }
        if (fresh) {
          next.push_back(elements.size());
          elements.push_back(std::move(w));
          if (elements.size() > budget.max_elements) {
            census.complete = false;
            return census;
          }
        }
      }
    }
    census.counts.push_back(census.counts.back() + next.size());
    frontier = std::move(next);
  }
  return census;
}

/// Checks the structural ball invariants: |B(0)| = 1, monotone counts, and
/// submultiplicativity |B(s+t)| <= |B(s)||B(t)|.
inline void check_census_invariants(const BallCensus& census) {
  const auto& counts = census.counts;
  if (counts.empty() || counts[0] != 1)
    throw Error("census: |B(0)| must be 1");
  for (size_t t = 1; t < counts.size(); ++t)
    if (counts[t] < counts[t - 1]) throw Error("census: counts decreasing");
  for (size_t s = 0; s < counts.size(); ++s)
    for (size_t t = 0; s + t < counts.size(); ++t)
      if (counts[s + t] > counts[s] * counts[t])
        throw Error("census: submultiplicativity violated");
}

struct GrowthEstimate {
  double ent_estimate = 0;             // 1 / word-length units
  std::pair<int, int> ent_fit_window;  // [t_min, t_max]
  double nu_estimate = 0;
  double ent_residual_rms = 0;
  double nu_residual_rms = 0;
};

/// Regression estimates of the growth invariants over the upper half of the
/// census. These are finite-size estimates of limits; the residuals are part
/// of the output so callers can judge convergence for themselves.
inline GrowthEstimate growth_estimates(const BallCensus& census) {
  const int R = census.radius();
  if (R < 4) throw CensusTooShortError("growth: census radius < 4");
  const int t_min = (R + 1) / 2;

  GrowthEstimate out;
  out.ent_fit_window = {t_min, R};
  std::vector<double> xs, ys;
  for (int t = t_min; t <= R; ++t) {
    xs.push_back(t);
    ys.push_back(std::log(static_cast<double>(census.counts[t])));
  }
  LineFit ent = fit_line(xs, ys);
  out.ent_estimate = ent.slope;
  out.ent_residual_rms = ent.residual_rms;

  std::vector<double> lxs, lys;
  for (int t = std::max(t_min, 1); t <= R; ++t) {
    if (census.counts[t] < 2) continue;
    lxs.push_back(std::log(static_cast<double>(t)));
    lys.push_back(std::log(std::log(static_cast<double>(census.counts[t]))));
  }
  if (lxs.size() >= 2) {
    LineFit nu = fit_line(lxs, lys);
    out.nu_estimate = nu.slope;
    out.nu_residual_rms = nu.residual_rms;
  }
  return out;
}

/// Searches for two short words generating a free subsemigroup, certified up
/// to the given depth: all positive words in (u, v) of length <= depth are
/// pairwise distinct under the oracle. Candidates are scanned in
/// (length, lexicographic) order; returns the first certified pair.
inline std::optional<std::pair<Word, Word>> uniform_growth_witness(
    const GroupOracle& oracle, int depth, int max_base_length = 2) {
  if (depth < 2) throw ParameterOutOfRangeError("witness: depth >= 2");

  std::vector<Word> candidates;
  std::vector<Word> frontier{{}};
  for (int len = 1; len <= max_base_length; ++len) {
    std::vector<Word> next;
    for (const Word& w : frontier)
      for (int letter : oracle.alphabet()) {
        Word e = w;
        e.push_back(letter);
        next.push_back(e);
        if (!oracle.is_trivial(e)) candidates.push_back(e);
      }
    frontier = std::move(next);
  }

  auto certify = [&](const Word& u, const Word& v) {
    // All positive words in u, v up to the depth, as bitstrings.
    std::vector<Word> words;
    for (int len = 1; len <= depth; ++len)
      for (unsigned mask = 0; mask < (1u << len); ++mask) {
        Word w;
        for (int i = 0; i < len; ++i) {
          const Word& g = (mask >> i) & 1 ? v : u;
          w.insert(w.end(), g.begin(), g.end());
        }
        words.push_back(std::move(w));
      }
    for (size_t i = 0; i < words.size(); ++i)
      for (size_t j = i + 1; j < words.size(); ++j)
        if (oracle.equal(words[i], words[j])) return false;
    return true;
  };

  for (size_t i = 0; i < candidates.size(); ++i)
    for (size_t j = i + 1; j < candidates.size(); ++j) {
      if (oracle.equal(candidates[i], candidates[j])) continue;
      if (certify(candidates[i], candidates[j]))
        return std::make_pair(candidates[i], candidates[j]);
    }
  return std::nullopt;
}

}  // namespace volent
