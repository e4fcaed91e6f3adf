#pragma once

#include <cmath>
#include <limits>
#include <map>
#include <queue>
#include <set>
#include <vector>

#include "volent/errors.hpp"
#include "volent/metric_complex.hpp"
#include "volent/rational.hpp"
#include "volent/subcomplex.hpp"

namespace volent {

struct SubdividedMetric {
  MetricComplex metric;
  /// Composite image of each original vertex in the subdivided complex.
  std::map<VertexId, VertexId> vertex_image;
};

/// Iterated barycentric subdivision with barycenter coordinates, so graph
/// distances on the subdivided 1-skeleton refine the original ones.
inline SubdividedMetric subdivide_metric(const MetricComplex& M, int depth) {
  SubdividedMetric out;
  out.metric = M;
  for (VertexId v : M.complex().vertices()) out.vertex_image[v] = v;
  for (int step = 0; step < depth; ++step) {
    BarycentricSubdivision sd = barycentric_subdivide(out.metric.complex());
    std::vector<std::vector<double>> coords(sd.carrier.size());
    for (size_t w = 0; w < sd.carrier.size(); ++w) {
      const Simplex& carrier = sd.carrier[w];
      std::vector<double> c(out.metric.ambient_dim(), 0.0);
      for (VertexId v : carrier) {
        const auto& x = out.metric.coord(v);
        for (size_t k = 0; k < c.size(); ++k) c[k] += x[k];
      }
      for (double& x : c) x /= static_cast<double>(carrier.size());
      coords[w] = std::move(c);
    }
    MetricComplex next(sd.complex, std::move(coords));
    for (auto& [orig, cur] : out.vertex_image) cur = sd.vertex_image.at(cur);
    out.metric = std::move(next);
  }
  return out;
}

namespace detail {

/// Dijkstra on the 1-skeleton from one source; unreachable = infinity.
inline std::map<VertexId, double> graph_distances(const MetricComplex& M,
                                                  VertexId source) {
  auto adj = M.complex().adjacency();
  std::map<VertexId, double> dist;
  using Item = std::pair<double, VertexId>;
  std::priority_queue<Item, std::vector<Item>, std::greater<Item>> pq;
  dist[source] = 0;
  pq.push({0.0, source});
  while (!pq.empty()) {
    auto [d, v] = pq.top();
    pq.pop();
    if (d > dist.at(v)) continue;
    for (VertexId w : adj.at(v)) {
      double nd = d + M.edge_length(v, w);
      auto it = dist.find(w);
      if (it == dist.end() || nd < it->second) {
        dist[w] = nd;
        pq.push({nd, w});
      }
    }
  }
  return dist;
}

}  // namespace detail

/// Length of the form a + b*sqrt(1+t^2) with a, b rational: closed under
/// addition along paths of a collapse metric, and comparable exactly.
struct CollapseLength {
  Rational a, b;
  Rational s_sq;  // 1 + t^2

  static CollapseLength zero(const Rational& t) {
    return {Rational(0), Rational(0), 1 + t * t};
  }
  CollapseLength plus(const Rational& da, const Rational& db) const {
    return {a + da, b + db, s_sq};
  }
  double value() const { return to_double(a) + to_double(b) * std::sqrt(to_double(s_sq)); }

  // sign of (a + b*sqrt(s_sq))
  static int sign(const Rational& a, const Rational& b, const Rational& s_sq) {
    int sa = sgn(a), sb = sgn(b);
    if (sa == 0 && sb == 0) return 0;
    if (sa >= 0 && sb >= 0) return 1;
    if (sa <= 0 && sb <= 0) return -1;
    // opposite signs: compare a^2 vs b^2 * s_sq
    Rational lhs = a * a, rhs = b * b * s_sq;
    if (sa > 0) return lhs > rhs ? 1 : (lhs < rhs ? -1 : 0);
    return rhs > lhs ? 1 : (rhs < lhs ? -1 : 0);
  }

  bool operator<(const CollapseLength& o) const {
    return sign(a - o.a, b - o.b, s_sq) < 0;
  }
  bool operator==(const CollapseLength& o) const {
    return a == o.a && b == o.b;
  }
};

/// Exact single-source distances on the 1-skeleton of a collapse metric:
/// fiber edges contribute (t, 0), cross edges (0, 1)*sqrt(1+t^2).
inline std::map<VertexId, CollapseLength> exact_collapse_distances(
    const MetricComplex& M, VertexId source) {
  if (!M.has_exact() || !M.collapse_t())
    throw Error("exact distances need a collapse metric");
  const Rational t = *M.collapse_t();
  const Rational one(1), zero(0);

  // An edge is a fiber edge iff its exact squared length equals t^2.
  auto edge_term = [&](VertexId u, VertexId v) -> std::pair<Rational, Rational> {
    Rational len_sq = M.exact_edge_length_sq(u, v);
    if (len_sq == t * t) return {t, zero};
    if (len_sq == 1 + t * t) return {zero, one};
    throw Error("collapse metric: unexpected edge length");
  };

  auto adj = M.complex().adjacency();
  std::map<VertexId, CollapseLength> dist;
  using Item = std::pair<CollapseLength, VertexId>;
  auto cmp = [](const Item& x, const Item& y) {
    if (y.first < x.first) return true;
    if (x.first < y.first) return false;
    return x.second > y.second;
  };
  std::priority_queue<Item, std::vector<Item>, decltype(cmp)> pq(cmp);
  dist.insert({source, CollapseLength::zero(t)});
  pq.push({CollapseLength::zero(t), source});
  while (!pq.empty()) {
    auto [d, v] = pq.top();
    pq.pop();
    auto cur = dist.find(v);
    if (cur != dist.end() && cur->second < d) continue;
    for (VertexId w : adj.at(v)) {
      auto [da, db] = edge_term(v, w);
      CollapseLength nd = d.plus(da, db);
      auto it = dist.find(w);
      if (it == dist.end() || nd < it->second) {
        dist.insert_or_assign(w, nd);
        pq.push({nd, w});
      }
    }
  }
  return dist;
}

/// Upper estimate of diam_X(A): shortest-path distances in the 1-skeleton of
/// the depth-times subdivided ambient complex, maximized over the (original)
/// vertex pairs of A. Nonincreasing in depth and converging to the metric
/// diameter of A's vertex set.
inline double path_diameter(const MetricComplex& M, const BasedSubcomplex& A,
                            int subdivision_depth) {
  auto verts = A.vertices();
  if (verts.size() <= 1) return 0.0;
  SubdividedMetric S = subdivide_metric(M, subdivision_depth);
  double best = 0;
  for (VertexId a : verts) {
    auto dist = detail::graph_distances(S.metric, S.vertex_image.at(a));
    for (VertexId b : verts) {
      if (b <= a) continue;
      auto it = dist.find(S.vertex_image.at(b));
      if (it == dist.end())
        throw DisconnectedError("path_diameter: vertices " + std::to_string(a) +
                                " and " + std::to_string(b) + " disconnected");
      best = std::max(best, it->second);
    }
  }
  return best;
}

/// Exact variant for collapse metrics at subdivision depth 0.
inline CollapseLength path_diameter_exact(const MetricComplex& M,
                                          const BasedSubcomplex& A) {
  auto verts = A.vertices();
  CollapseLength best = CollapseLength::zero(
      M.collapse_t() ? *M.collapse_t() : Rational(1));
  if (verts.size() <= 1) return best;
  for (VertexId a : verts) {
    auto dist = exact_collapse_distances(M, a);
    for (VertexId b : verts) {
      if (b <= a) continue;
      auto it = dist.find(b);
      if (it == dist.end())
        throw DisconnectedError("path_diameter: disconnected");
      if (best < it->second) best = it->second;
    }
  }
  return best;
}

}  // namespace volent
