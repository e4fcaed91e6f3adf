#pragma once

#include <algorithm>
#include <cmath>
#include <map>
#include <queue>
#include <set>
#include <string>
#include <vector>

#include "volent/ball_census.hpp"
#include "volent/errors.hpp"
#include "volent/fit.hpp"
#include "volent/group_oracle.hpp"
#include "volent/metric_complex.hpp"
#include "volent/pi1.hpp"
#include "volent/subcomplex.hpp"

namespace volent {

/// counts[i] = N_e(X,g;thresholds[i]): homotopy classes of based edge-loops of
/// g-length at most the threshold.
struct LoopCensus {
  std::vector<double> thresholds;
  std::vector<unsigned long long> counts;
  VertexId basepoint = 0;
  bool exact = true;  // enumeration completed within budget
};

struct LoopBudget {
  size_t max_states = 5'000'000;
};

namespace detail {

/// Dijkstra over the universal cover: states are (vertex, class of the path
/// word relative to the basepoint). Settling a state over the start vertex
/// realizes a homotopy class at its minimal edge-loop length.
///
/// `edge_ok` restricts the usable edges (for subcomplex censuses). Calls
/// `settle(class_distance)` once per class, in increasing distance order.
template <typename SettleFn>
inline bool cover_dijkstra(const MetricComplex& M, const Pi1Data& pi1,
                           const GroupOracle& oracle, VertexId start,
                           double t_max,
                           const std::set<Simplex>* edge_filter,
                           size_t max_states, SettleFn&& settle) {
  struct State {
    double dist;
    VertexId vertex;
    size_t id;  // insertion id, used for deterministic tie-breaking
  };
  auto cmp = [](const State& a, const State& b) {
    if (a.dist != b.dist) return a.dist > b.dist;
    return a.id > b.id;
  };

  const double eps = 1e-9 * std::max(1.0, t_max);
  auto adj = M.complex().adjacency();

  const bool keyed = oracle.canonical_key(Word{}).has_value();
  std::map<std::pair<VertexId, std::string>, size_t> by_key;
  std::map<std::pair<VertexId, std::string>, std::vector<size_t>> buckets;

  std::vector<Word> words;         // state id -> path word
  std::vector<double> best;        // state id -> best distance
  std::vector<bool> settled;
  std::vector<VertexId> vertex_of;

  auto state_key = [&](VertexId v, const Word& w) {
    if (keyed) return std::make_pair(v, *oracle.canonical_key(w));
    return std::make_pair(v, key_of(oracle.abelian_key(w)));
  };

  auto find_or_add = [&](VertexId v, const Word& w, double d) -> long long {
    // returns state id if new or improved, -1 otherwise
    auto key = state_key(v, w);
    if (keyed) {
      auto it = by_key.find(key);
      if (it == by_key.end()) {
        size_t id = words.size();
        by_key.emplace(std::move(key), id);
        words.push_back(w);
        best.push_back(d);
        settled.push_back(false);
        vertex_of.push_back(v);
        return static_cast<long long>(id);
      }
      size_t id = it->second;
      if (!settled[id] && d < best[id]) {
        best[id] = d;
        return static_cast<long long>(id);
      }
      return -1;
    }
    auto& bucket = buckets[key];
    for (size_t id : bucket)
      if (oracle.equal(words[id], w)) {
        if (!settled[id] && d < best[id]) {
          best[id] = d;
          return static_cast<long long>(id);
        }
        return -1;
      }
    size_t id = words.size();
    bucket.push_back(id);
    words.push_back(w);
    best.push_back(d);
    settled.push_back(false);
    vertex_of.push_back(v);
    return static_cast<long long>(id);
  };

  std::priority_queue<State, std::vector<State>, decltype(cmp)> pq(cmp);
  find_or_add(start, Word{}, 0.0);
  pq.push({0.0, start, 0});

  auto edge_usable = [&](VertexId u, VertexId v) {
    if (!edge_filter) return true;
    Simplex e{std::min(u, v), std::max(u, v)};
    return edge_filter->count(e) > 0;
  };

  while (!pq.empty()) {
    State s = pq.top();
    pq.pop();
    if (settled[s.id] || s.dist > best[s.id]) continue;
    settled[s.id] = true;
    if (vertex_of[s.id] == start) settle(words[s.id], s.dist);
    for (VertexId w : adj.at(vertex_of[s.id])) {
      if (!edge_usable(vertex_of[s.id], w)) continue;
      double nd = s.dist + M.edge_length(vertex_of[s.id], w);
      if (nd > t_max + eps) continue;
      Word nw = free_reduce(concat(words[s.id], pi1.word_of_edge(vertex_of[s.id], w)));
      long long id = find_or_add(w, nw, nd);
      if (id >= 0) {
        if (words.size() > max_states) return false;
        pq.push({nd, w, static_cast<size_t>(id)});
      }
    }
  }
  return true;
}

}  // namespace detail

/// Verifies that the oracle kills every relator of the presentation; a
/// failing relator means the oracle answers for a different group.
inline void check_oracle_matches(const Pi1Data& pi1, const GroupOracle& oracle) {
  if (oracle.rank() < pi1.presentation.rank())
    throw OracleMismatchError("loop census: oracle rank " +
                              std::to_string(oracle.rank()) +
                              " below presentation rank " +
                              std::to_string(pi1.presentation.rank()));
  for (const Word& r : pi1.presentation.relators)
    if (!oracle.is_trivial(r))
      throw OracleMismatchError("loop census: relator not trivial under oracle");
}

/// N_e(X,g;T) for every threshold, by shortest-realization search on the
/// universal cover.
inline LoopCensus loop_census(const MetricComplex& M, const Pi1Data& pi1,
                              const GroupOracle& oracle,
                              std::vector<double> thresholds,
                              LoopBudget budget = {}) {
  if (thresholds.empty())
    throw ParameterOutOfRangeError("loop census: no thresholds");
  std::sort(thresholds.begin(), thresholds.end());
  check_oracle_matches(pi1, oracle);

  LoopCensus census;
  census.thresholds = thresholds;
  census.counts.assign(thresholds.size(), 0);
  census.basepoint = pi1.basepoint;

  const double t_max = thresholds.back();
  const double eps = 1e-9 * std::max(1.0, t_max);
  std::vector<double> settled_distances;
  census.exact = detail::cover_dijkstra(
      M, pi1, oracle, pi1.basepoint, t_max, nullptr, budget.max_states,
      [&](const Word&, double d) { settled_distances.push_back(d); });

  for (size_t i = 0; i < thresholds.size(); ++i) {
    unsigned long long n = 0;
    for (double d : settled_distances)
      if (d <= thresholds[i] + eps) ++n;
    census.counts[i] = n;
  }
  return census;
}

/// N(A subset of X; T) for every threshold: same search with edges restricted
/// to A, classes still compared in pi_1(X).
inline LoopCensus subcomplex_loop_census(const MetricComplex& M,
                                         const BasedSubcomplex& A,
                                         const Pi1Data& pi1,
                                         const GroupOracle& oracle,
                                         std::vector<double> thresholds,
                                         LoopBudget budget = {}) {
  if (thresholds.empty())
    throw ParameterOutOfRangeError("subcomplex census: no thresholds");
  if (!A.is_connected())
    throw DisconnectedSubcomplexError("subcomplex census: A disconnected");
  std::sort(thresholds.begin(), thresholds.end());
  check_oracle_matches(pi1, oracle);

  std::set<Simplex> edges;
  for (const Simplex& e : A.edges()) edges.insert(e);

  LoopCensus census;
  census.thresholds = thresholds;
  census.counts.assign(thresholds.size(), 0);
  census.basepoint = A.basepoint;

  const double t_max = thresholds.back();
  const double eps = 1e-9 * std::max(1.0, t_max);
  std::vector<double> settled;
  census.exact = detail::cover_dijkstra(
      M, pi1, oracle, A.basepoint, t_max, &edges, budget.max_states,
      [&](const Word&, double d) { settled.push_back(d); });
  for (size_t i = 0; i < thresholds.size(); ++i) {
    unsigned long long n = 0;
    for (double d : settled)
      if (d <= thresholds[i] + eps) ++n;
    census.counts[i] = n;
  }
  return census;
}

/// Single-threshold count form of the subcomplex census.
inline unsigned long long subcomplex_census(const MetricComplex& M,
                                            const BasedSubcomplex& A,
                                            const Pi1Data& pi1,
                                            const GroupOracle& oracle, double T,
                                            LoopBudget budget = {}) {
  LoopCensus census = subcomplex_loop_census(M, A, pi1, oracle, {T}, budget);
  if (!census.exact)
    throw BudgetExceededError("subcomplex census: state budget exhausted");
  return census.counts.back();
}

struct EntropyEstimate {
  double ent_e_estimate = 0;
  std::pair<double, double> window;
  double residual_rms = 0;
};

/// Least-squares slope of log N_e(T) against T over the upper half of the
/// threshold range.
inline EntropyEstimate estimate_edge_entropy(const LoopCensus& census) {
  if (census.thresholds.size() < 4)
    throw CensusTooShortError("edge entropy: need >= 4 thresholds");
  const double t_max = census.thresholds.back();
  const double t_min = t_max / 2;
  std::vector<double> xs, ys;
  for (size_t i = 0; i < census.thresholds.size(); ++i) {
    if (census.thresholds[i] < t_min) continue;
    xs.push_back(census.thresholds[i]);
    ys.push_back(std::log(static_cast<double>(census.counts[i])));
  }
  if (xs.size() < 2) throw CensusTooShortError("edge entropy: window too small");
  LineFit fit = fit_line(xs, ys);
  EntropyEstimate out;
  out.ent_e_estimate = fit.slope;
  out.window = {t_min, t_max};
  out.residual_rms = fit.residual_rms;
  return out;
}

/// Closed-form census bound T 2^T n_e^T A^T exp(2T/t^nu), in log form to
/// avoid overflow.
inline double analytic_census_log_bound(double T, double t, double nu, double A,
                                        double n_e) {
  if (T <= 0 || t <= 0 || t > 1 || nu < 0 || nu >= 1 || A <= 0 || n_e < 1)
    throw ParameterOutOfRangeError("census bound: parameter out of range");
  return std::log(T) + T * std::log(2.0) + T * std::log(n_e) + T * std::log(A) +
         2.0 * T / std::pow(t, nu);
}

inline double analytic_census_bound(double T, double t, double nu, double A,
                                    double n_e) {
  return std::exp(analytic_census_log_bound(T, t, nu, A, n_e));
}

/// The entropy bound implied by the census bound: log(2 n_e A) + 2/t^nu.
inline double analytic_entropy_bound(double t, double nu, double A, double n_e) {
  if (t <= 0 || t > 1 || nu < 0 || nu >= 1 || A <= 0 || n_e < 1)
    throw ParameterOutOfRangeError("entropy bound: parameter out of range");
  return std::log(2.0 * n_e * A) + 2.0 / std::pow(t, nu);
}

/// Certified lower bound ent(X,g) >= ent(Gamma_U) / (2 diam(U)).
inline double diam_entropy_lower_bound(double diam, double ent_gamma) {
  if (diam <= 0)
    throw NonpositiveDiameterError("lower bound: diameter must be positive");
  if (ent_gamma < 0)
    throw ParameterOutOfRangeError("lower bound: entropy must be >= 0");
  return ent_gamma / (2.0 * diam);
}

}  // namespace volent
