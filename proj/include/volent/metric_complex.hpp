#pragma once

#include <cmath>
#include <map>
#include <optional>
#include <vector>

#include "volent/errors.hpp"
#include "volent/rational.hpp"
#include "volent/simplicial_complex.hpp"
#include "volent/simplicial_map.hpp"

namespace volent {

/// Piecewise-flat metric induced by an explicit Euclidean embedding of the
/// vertices. When the embedding comes from a collapse family at rational t,
/// exact coordinates are kept as well: they are the true coordinates scaled
/// by sqrt(2), so every exact inner product is half the stored one. This
/// keeps all entries rational.
class MetricComplex {
 public:
  MetricComplex() = default;

  MetricComplex(SimplicialComplex complex, std::vector<std::vector<double>> coords)
      : complex_(std::move(complex)), coords_(std::move(coords)) {
    if (coords_.size() != complex_.vertices().size())
      throw Error("metric: coordinate count mismatch");
    ambient_dim_ = coords_.empty() ? 0 : coords_[0].size();
    for (const auto& c : coords_)
      if (c.size() != ambient_dim_) throw Error("metric: ragged coordinates");
  }

  const SimplicialComplex& complex() const { return complex_; }
  size_t ambient_dim() const { return ambient_dim_; }
  bool has_exact() const { return !exact_scaled_coords_.empty(); }
  const std::optional<Rational>& collapse_t() const { return t_; }

  const std::vector<double>& coord(VertexId v) const {
    return coords_[complex_.vertex_index(v)];
  }
  const std::vector<Rational>& exact_scaled_coord(VertexId v) const {
    return exact_scaled_coords_[complex_.vertex_index(v)];
  }

  double edge_length(VertexId u, VertexId v) const {
    const auto& a = coord(u);
    const auto& b = coord(v);
    double s = 0;
    for (size_t i = 0; i < a.size(); ++i) s += (a[i] - b[i]) * (a[i] - b[i]);
    return std::sqrt(s);
  }

  /// Exact squared length (true metric, not the scaled frame).
  Rational exact_edge_length_sq(VertexId u, VertexId v) const {
    const auto& a = exact_scaled_coord(u);
    const auto& b = exact_scaled_coord(v);
    Rational s(0);
    for (size_t i = 0; i < a.size(); ++i) s += (a[i] - b[i]) * (a[i] - b[i]);
    return s / 2;
  }

  void set_exact(std::vector<std::vector<Rational>> scaled, Rational t) {
    exact_scaled_coords_ = std::move(scaled);
    t_ = std::move(t);
  }

 private:
  SimplicialComplex complex_;
  size_t ambient_dim_ = 0;
  std::vector<std::vector<double>> coords_;
  std::vector<std::vector<Rational>> exact_scaled_coords_;
  std::optional<Rational> t_;
};

/// The collapsing family: the target P embeds with vertex p_i at e_i/sqrt(2);
/// a source vertex with local index j inside the fiber over p_i goes to
/// e_i/sqrt(2) + t e^i_j/sqrt(2). Every fiber edge then has length exactly t
/// and every edge mapped onto a target edge has length exactly sqrt(1+t^2).
inline MetricComplex collapse_embedding(const SimplicialMap& pi, const Rational& t) {
  if (t <= 0 || t > 1)
    throw TOutOfRangeError("collapse: t must lie in (0,1], got " +
                           rational_to_string(t));
  if (!pi.is_surjective_on_vertices())
    throw Error("collapse: map not surjective onto target vertices");

  const auto& target_vertices = pi.target.vertices();
  const size_t s1 = target_vertices.size();  // dim H = s+1

  // Local indices within each fiber, sorted by vertex id.
  std::map<VertexId, size_t> fiber_index_of;  // target vertex -> i
  std::vector<std::vector<VertexId>> fibers(s1);
  for (size_t i = 0; i < s1; ++i) fiber_index_of[target_vertices[i]] = i;
  for (VertexId v : pi.source.vertices())
    fibers[fiber_index_of.at(pi(v))].push_back(v);

  std::vector<size_t> offset(s1);  // start of H_i block
  size_t dim = s1;
  for (size_t i = 0; i < s1; ++i) {
    offset[i] = dim;
    dim += fibers[i].size();
  }

  const double td = to_double(t);
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  std::vector<std::vector<double>> coords(pi.source.vertices().size(),
                                          std::vector<double>(dim, 0.0));
  std::vector<std::vector<Rational>> scaled(pi.source.vertices().size(),
                                            std::vector<Rational>(dim, Rational(0)));
  for (size_t i = 0; i < s1; ++i) {
    for (size_t j = 0; j < fibers[i].size(); ++j) {
      VertexId v = fibers[i][j];
      size_t row = pi.source.vertex_index(v);
      coords[row][i] = inv_sqrt2;
      coords[row][offset[i] + j] = td * inv_sqrt2;
      scaled[row][i] = 1;
      scaled[row][offset[i] + j] = t;
    }
  }

  MetricComplex M(pi.source, std::move(coords));
  M.set_exact(std::move(scaled), t);
  return M;
}

/// Metric complex from the natural regular embedding (vertex k of the complex
/// at e_k/sqrt(2)); every edge has length 1. Handy for unit-edge test spaces.
inline MetricComplex unit_embedding(const SimplicialComplex& X) {
  const size_t n = X.vertices().size();
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  std::vector<std::vector<double>> coords(n, std::vector<double>(n, 0.0));
  std::vector<std::vector<Rational>> scaled(n, std::vector<Rational>(n, Rational(0)));
  for (size_t k = 0; k < n; ++k) {
    coords[k][k] = inv_sqrt2;
    scaled[k][k] = 1;
  }
  MetricComplex M(X, std::move(coords));
  M.set_exact(std::move(scaled), Rational(1));
  return M;
}

namespace detail {

/// Determinant by Gaussian elimination with partial pivoting.
inline double determinant(std::vector<std::vector<double>> A) {
  const size_t n = A.size();
  double det = 1.0;
  for (size_t k = 0; k < n; ++k) {
    size_t pivot = k;
    for (size_t i = k + 1; i < n; ++i)
      if (std::fabs(A[i][k]) > std::fabs(A[pivot][k])) pivot = i;
    if (A[pivot][k] == 0.0) return 0.0;
    if (pivot != k) {
      std::swap(A[pivot], A[k]);
      det = -det;
    }
    det *= A[k][k];
    for (size_t i = k + 1; i < n; ++i) {
      double f = A[i][k] / A[k][k];
      for (size_t j = k; j < n; ++j) A[i][j] -= f * A[k][j];
    }
  }
  return det;
}

inline Rational determinant_exact(std::vector<std::vector<Rational>> A) {
  const size_t n = A.size();
  Rational det(1);
  for (size_t k = 0; k < n; ++k) {
    size_t pivot = k;
    while (pivot < n && A[pivot][k] == 0) ++pivot;
    if (pivot == n) return Rational(0);
    if (pivot != k) {
      std::swap(A[pivot], A[k]);
      det = -det;
    }
    det *= A[k][k];
    for (size_t i = k + 1; i < n; ++i) {
      if (A[i][k] == 0) continue;
      Rational f = A[i][k] / A[k][k];
      for (size_t j = k; j < n; ++j) A[i][j] -= f * A[k][j];
    }
  }
  return det;
}

inline double factorial(int p) {
  double f = 1;
  for (int i = 2; i <= p; ++i) f *= i;
  return f;
}

}  // namespace detail

/// Euclidean volume of an embedded p-simplex: sqrt(det G)/p! with G the Gram
/// matrix of the edge vectors from the first vertex. A 0-simplex counts 1.
inline double simplex_volume(const MetricComplex& M, const Simplex& s) {
  if (!M.complex().contains(s))
    throw Error("volume: " + simplex_to_string(s) + " not in complex");
  const int p = static_cast<int>(s.size()) - 1;
  if (p == 0) return 1.0;

  const auto& base = M.coord(s[0]);
  std::vector<std::vector<double>> d(p);
  for (int i = 0; i < p; ++i) {
    const auto& x = M.coord(s[i + 1]);
    d[i].resize(base.size());
    for (size_t k = 0; k < base.size(); ++k) d[i][k] = x[k] - base[k];
  }
  std::vector<std::vector<double>> G(p, std::vector<double>(p, 0.0));
  for (int i = 0; i < p; ++i)
    for (int j = 0; j < p; ++j) {
      double dot = 0;
      for (size_t k = 0; k < base.size(); ++k) dot += d[i][k] * d[j][k];
      G[i][j] = dot;
    }
  double det = detail::determinant(std::move(G));
  if (det <= 1e-18)
    throw DegenerateSimplexError("volume: degenerate simplex " +
                                 simplex_to_string(s));
  return std::sqrt(det) / detail::factorial(p);
}

/// Exact squared volume of an embedded p-simplex (requires exact
/// coordinates): det(G)/(p!)^2 with G the true-metric Gram matrix, a rational
/// number since G is half of the scaled-frame Gram matrix.
inline Rational exact_volume_sq(const MetricComplex& M, const Simplex& s) {
  if (!M.has_exact()) throw Error("volume: no exact coordinates");
  const int p = static_cast<int>(s.size()) - 1;
  if (p == 0) return Rational(1);

  const auto& base = M.exact_scaled_coord(s[0]);
  std::vector<std::vector<Rational>> d(p);
  for (int i = 0; i < p; ++i) {
    const auto& x = M.exact_scaled_coord(s[i + 1]);
    d[i].resize(base.size());
    for (size_t k = 0; k < base.size(); ++k) d[i][k] = x[k] - base[k];
  }
  std::vector<std::vector<Rational>> G(p, std::vector<Rational>(p, Rational(0)));
  for (int i = 0; i < p; ++i)
    for (int j = 0; j < p; ++j) {
      Rational dot(0);
      for (size_t k = 0; k < base.size(); ++k) dot += d[i][k] * d[j][k];
      G[i][j] = dot / 2;
    }
  Rational det = detail::determinant_exact(std::move(G));
  Rational pf(1);
  for (int i = 2; i <= p; ++i) pf *= i;
  return det / (pf * pf);
}

struct VolumeReport {
  std::map<Simplex, double> per_simplex;
  double total = 0;
};

/// Sum of the top-dimensional simplex volumes; lower cells contribute zero.
inline VolumeReport total_volume(const MetricComplex& M) {
  VolumeReport report;
  for (const Simplex& s : M.complex().top_simplices()) {
    double v = simplex_volume(M, s);
    report.per_simplex[s] = v;
    report.total += v;
  }
  return report;
}

}  // namespace volent
