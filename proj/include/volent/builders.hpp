#pragma once

#include <map>
#include <vector>

#include "volent/errors.hpp"
#include "volent/simplicial_complex.hpp"
#include "volent/simplicial_map.hpp"

namespace volent {

struct BuiltComplex {
  SimplicialComplex complex;
  VertexId basepoint = 0;
};

struct BuiltMap {
  SimplicialMap map;
  VertexId basepoint = 0;
};

/// Cycle graph on n >= 3 vertices 0..n-1.
inline SimplicialComplex cycle_complex(int n) {
  if (n < 3) throw ParameterOutOfRangeError("cycle: need n >= 3");
  std::vector<Simplex> simplices;
  for (int i = 0; i < n; ++i)
    simplices.push_back({std::min(i, (i + 1) % n), std::max(i, (i + 1) % n)});
  return SimplicialComplex::from_simplices(simplices);
}

/// n x n grid torus triangulation (n >= 3): n^2 vertices, 3n^2 edges, 2n^2
/// triangles, together with the projection (i,j) -> i onto the n-cycle.
/// Vertex (i,j) has id i*n + j.
inline BuiltMap torus_grid(int n) {
  if (n < 3) throw ParameterOutOfRangeError("torus: need n >= 3");
  auto id = [n](int i, int j) {
    return ((i % n + n) % n) * n + ((j % n + n) % n);
  };
  std::vector<Simplex> simplices;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      Simplex lower{id(i, j), id(i + 1, j), id(i + 1, j + 1)};
      Simplex upper{id(i, j), id(i, j + 1), id(i + 1, j + 1)};
      std::sort(lower.begin(), lower.end());
      std::sort(upper.begin(), upper.end());
      simplices.push_back(lower);
      simplices.push_back(upper);
    }
  SimplicialComplex torus = SimplicialComplex::from_simplices(simplices);
  SimplicialComplex base = cycle_complex(n);
  std::map<VertexId, VertexId> f;
  for (VertexId v : torus.vertices()) f[v] = v / n;
  return BuiltMap{check_simplicial(torus, base, f), 0};
}

/// Two circles sharing the basepoint 0, each subdivided into `subdiv` >= 3
/// edges. figure_eight(3) has 5 vertices and 6 edges.
inline BuiltComplex figure_eight(int subdiv) {
  if (subdiv < 3) throw ParameterOutOfRangeError("figure eight: subdiv >= 3");
  std::vector<Simplex> simplices;
  auto add_circle = [&](int first_id) {
    std::vector<VertexId> ring{0};
    for (int k = 0; k < subdiv - 1; ++k) ring.push_back(first_id + k);
    for (int k = 0; k < subdiv; ++k) {
      VertexId u = ring[k], v = ring[(k + 1) % subdiv];
      simplices.push_back({std::min(u, v), std::max(u, v)});
    }
  };
  add_circle(1);
  add_circle(subdiv);
  return BuiltComplex{SimplicialComplex::from_simplices(simplices), 0};
}

/// Genus-h surface with a disk removed, its boundary circle glued onto a
/// circle by a degree-d map. Built as a wedge of 2h+1 triangulated circles
/// (x_1, y_1, ..., x_h, y_h, z) with a disk attached along the edge path
/// spelling [x_1,y_1]...[x_h,y_h] z^d; the disk is triangulated with a fresh
/// interior ring so the attachment stays simplicial. The fundamental group is
/// the one-relator group of that word.
inline BuiltComplex glued_surface_complex(int h, int d) {
  if (h < 1 || d < 1)
    throw ParameterOutOfRangeError("glued surface: need h >= 1, d >= 1");
  const int circles = 2 * h + 1;
  // Circle c has vertices {0, 1 + 2c, 2 + 2c}.
  auto circle_vertex = [&](int c, int k) -> VertexId {
    return k == 0 ? 0 : 2 * c + k;
  };
  std::vector<Simplex> simplices;
  for (int c = 0; c < circles; ++c)
    for (int k = 0; k < 3; ++k) {
      VertexId u = circle_vertex(c, k), v = circle_vertex(c, (k + 1) % 3);
      simplices.push_back({std::min(u, v), std::max(u, v)});
    }

  // Boundary word over circle indices: [x1,y1]...[xh,yh] z^d, z = last.
  std::vector<std::pair<int, bool>> word;  // (circle, forward?)
  for (int i = 0; i < h; ++i) {
    int x = 2 * i, y = 2 * i + 1;
    word.push_back({x, true});
    word.push_back({y, true});
    word.push_back({x, false});
    word.push_back({y, false});
  }
  for (int i = 0; i < d; ++i) word.push_back({circles - 1, true});

  // Boundary vertex path: each letter contributes its three circle edges.
  std::vector<VertexId> boundary;
  for (auto [c, forward] : word) {
    if (forward)
      for (int k = 0; k < 3; ++k) boundary.push_back(circle_vertex(c, k));
    else
      for (int k = 3; k > 0; --k) boundary.push_back(circle_vertex(c, k % 3));
  }
  const int N = static_cast<int>(boundary.size());

  // Fresh interior ring + center; triangulate the annulus and the inner disk.
  const VertexId ring0 = 2 * circles + 1;
  const VertexId center = ring0 + N;
  auto ring = [&](int k) { return ring0 + ((k % N + N) % N); };
  auto push_triangle = [&](VertexId a, VertexId b, VertexId c) {
    Simplex s{a, b, c};
    std::sort(s.begin(), s.end());
    simplices.push_back(s);
  };
  for (int k = 0; k < N; ++k) {
    push_triangle(boundary[k], boundary[(k + 1) % N], ring(k));
    push_triangle(boundary[(k + 1) % N], ring(k), ring(k + 1));
    push_triangle(ring(k), ring(k + 1), center);
  }

  // Duplicate edges collapse in the set (the word revisits circle edges);
  // the fresh ring keeps all triangles distinct.
  std::set<Simplex> dedup(simplices.begin(), simplices.end());
  return BuiltComplex{SimplicialComplex::from_simplex_set(dedup), 0};
}

/// Wedge of complexes at a shared basepoint 0. Vertices of each summand are
/// relabeled into a fresh range; the summand basepoints are all identified.
inline BuiltComplex wedge(const std::vector<BuiltComplex>& summands) {
  if (summands.empty()) throw ParameterOutOfRangeError("wedge: no summands");
  std::vector<Simplex> simplices;
  VertexId next = 1;
  for (const auto& part : summands) {
    std::map<VertexId, VertexId> relabel;
    relabel[part.basepoint] = 0;
    for (VertexId v : part.complex.vertices())
      if (v != part.basepoint) relabel[v] = next++;
    for (const Simplex& s : part.complex.simplices()) {
      if (s.size() == 1) continue;  // vertices come with higher simplices
      Simplex img;
      for (VertexId v : s) img.push_back(relabel[v]);
      std::sort(img.begin(), img.end());
      simplices.push_back(img);
    }
  }
  return BuiltComplex{SimplicialComplex::from_simplices(simplices), 0};
}

/// Folded hexagon: the 6-cycle v0..v5 mapped onto the 4-vertex path a-b-c-d
/// by 0,1,2,3,4,5 -> a,b,c,d,c,b. The fiber over b has two components.
inline BuiltMap folded_hexagon() {
  std::vector<Simplex> hex;
  for (int i = 0; i < 6; ++i)
    hex.push_back({std::min(i, (i + 1) % 6), std::max(i, (i + 1) % 6)});
  SimplicialComplex hexagon = SimplicialComplex::from_simplices(hex);
  SimplicialComplex path =
      SimplicialComplex::from_simplices({{10, 11}, {11, 12}, {12, 13}});
  std::map<VertexId, VertexId> f{{0, 10}, {1, 11}, {2, 12},
                                 {3, 13}, {4, 12}, {5, 11}};
  return BuiltMap{check_simplicial(hexagon, path, f), 0};
}

}  // namespace volent
