#pragma once

#include <algorithm>
#include <limits>
#include <map>
#include <queue>
#include <set>
#include <vector>

#include "volent/errors.hpp"
#include "volent/simplicial_complex.hpp"
#include "volent/simplicial_map.hpp"

namespace volent {

/// Open cover represented combinatorially: each piece is the union of the
/// open stars of a vertex subset of the ambient complex (possibly a
/// subdivision of an original complex, tracked by `depth`).
struct Cover {
  SimplicialComplex ambient;
  int depth = 0;
  std::vector<std::vector<VertexId>> pieces;
  std::vector<VertexId> piece_basepoints;

  bool piece_meets(size_t i, const Simplex& s) const {
    const auto& piece = pieces[i];
    for (VertexId v : s)
      if (std::binary_search(piece.begin(), piece.end(), v)) return true;
    return false;
  }

  /// Indices of the pieces whose open region contains the interior of s.
  std::vector<size_t> pieces_containing(const Simplex& s) const {
    std::vector<size_t> out;
    for (size_t i = 0; i < pieces.size(); ++i)
      if (piece_meets(i, s)) out.push_back(i);
    return out;
  }

  int multiplicity() const {
    int mult = 0;
    for (const Simplex& s : ambient.simplices())
      mult = std::max(mult, static_cast<int>(pieces_containing(s).size()));
    return mult;
  }

  /// Pieces must jointly contain every simplex and each piece's carrier
  /// (the induced subgraph on its vertex set) must be connected.
  void validate() const {
    for (const Simplex& s : ambient.simplices())
      if (pieces_containing(s).empty())
        throw Error("cover: simplex " + simplex_to_string(s) + " uncovered");
    auto adj = ambient.adjacency();
    for (size_t i = 0; i < pieces.size(); ++i) {
      const auto& piece = pieces[i];
      if (piece.empty()) throw Error("cover: empty piece");
      std::set<VertexId> inside(piece.begin(), piece.end());
      std::set<VertexId> seen{piece.front()};
      std::queue<VertexId> queue;
      queue.push(piece.front());
      while (!queue.empty()) {
        VertexId v = queue.front();
        queue.pop();
        for (VertexId w : adj.at(v))
          if (inside.count(w) && seen.insert(w).second) queue.push(w);
      }
      if (seen.size() != inside.size())
        throw Error("cover: piece " + std::to_string(i) + " disconnected");
    }
  }
};

/// One piece per (target vertex, connected component of its fiber); the open
/// region of a piece is the preimage component of the open star of the target
/// vertex. Multiplicity is at most dim(target) + 1.
inline Cover star_cover(const SimplicialMap& pi) {
  Cover C;
  C.ambient = pi.source;
  for (VertexId p : pi.target.vertices()) {
    std::set<VertexId> verts = pi.fiber_vertices(p);
    if (verts.empty()) continue;
    std::set<Simplex> fib = full_subcomplex(pi.source, verts);
    for (const BasedSubcomplex& comp : connected_components(fib)) {
      auto vs = comp.vertices();
      C.pieces.push_back(vs);
      C.piece_basepoints.push_back(comp.basepoint);
    }
  }
  C.validate();
  return C;
}

struct NerveResult {
  SimplicialComplex nerve;
  int multiplicity = 0;
  /// One ambient simplex witnessing each nerve simplex's common intersection.
  std::map<Simplex, Simplex> witness;
};

/// Nerve of a cover: vertex i per piece, a simplex per family of pieces whose
/// open regions share an ambient simplex. dim(nerve) = multiplicity - 1.
inline NerveResult nerve(const Cover& C) {
  NerveResult out;
  std::set<Simplex> nerve_simplices;
  for (const Simplex& s : C.ambient.simplices()) {
    auto idx = C.pieces_containing(s);
    if (idx.empty()) continue;
    out.multiplicity = std::max(out.multiplicity, static_cast<int>(idx.size()));
    Simplex full(idx.begin(), idx.end());
    const size_t n = full.size();
    for (unsigned mask = 1; mask < (1u << n); ++mask) {
      Simplex sub;
      for (size_t i = 0; i < n; ++i)
        if (mask & (1u << i)) sub.push_back(full[i]);
      if (nerve_simplices.insert(sub).second) out.witness[sub] = s;
    }
  }
  out.nerve = SimplicialComplex::from_simplex_set(nerve_simplices);
  return out;
}

/// Barycentric subdivision of a cover: the same open sets re-expressed as
/// star unions in the subdivided ambient complex. A subdivision vertex
/// belongs to a piece iff its carrier simplex meets the piece's vertex set.
inline Cover subdivide_cover(const Cover& C, int extra_depth) {
  Cover out = C;
  for (int step = 0; step < extra_depth; ++step) {
    BarycentricSubdivision sd = barycentric_subdivide(out.ambient);
    std::vector<std::vector<VertexId>> pieces;
    std::vector<VertexId> basepoints;
    for (size_t i = 0; i < out.pieces.size(); ++i) {
      std::set<VertexId> inside(out.pieces[i].begin(), out.pieces[i].end());
      std::vector<VertexId> piece;
      for (VertexId w = 0; w < static_cast<VertexId>(sd.carrier.size()); ++w) {
        for (VertexId v : sd.carrier[w])
          if (inside.count(v)) {
            piece.push_back(w);
            break;
          }
      }
      pieces.push_back(std::move(piece));
      basepoints.push_back(sd.vertex_image.at(out.piece_basepoints[i]));
    }
    out.ambient = sd.complex;
    out.pieces = std::move(pieces);
    out.piece_basepoints = std::move(basepoints);
    out.depth += 1;
  }
  out.validate();
  return out;
}

/// Combinatorial simplicial approximation into the nerve. Each vertex goes to
/// the piece containing it most deeply (hop distance to the piece's
/// complement; ties broken by lowest piece index). The postcondition that
/// every fiber of the result lies inside a single piece is checked, not
/// assumed: a failing check reports SubdivisionTooCoarse.
inline SimplicialMap cover_to_map(const Cover& C) {
  const NerveResult N = nerve(C);
  auto adj = C.ambient.adjacency();
  const auto& verts = C.ambient.vertices();

  // score[i][v] = min hop distance from v to a vertex outside piece i
  // (large when the piece is everything).
  const int kInfinity = std::numeric_limits<int>::max() / 2;
  std::vector<std::map<VertexId, int>> score(C.pieces.size());
  for (size_t i = 0; i < C.pieces.size(); ++i) {
    std::set<VertexId> inside(C.pieces[i].begin(), C.pieces[i].end());
    std::queue<VertexId> queue;
    for (VertexId v : verts)
      if (!inside.count(v)) {
        score[i][v] = 0;
        queue.push(v);
      }
    while (!queue.empty()) {
      VertexId v = queue.front();
      queue.pop();
      for (VertexId w : adj.at(v))
        if (!score[i].count(w)) {
          score[i][w] = score[i][v] + 1;
          queue.push(w);
        }
    }
    for (VertexId v : verts)
      if (!score[i].count(v)) score[i][v] = kInfinity;
  }

  std::map<VertexId, VertexId> f;
  for (VertexId v : verts) {
    int best = 0;
    size_t best_piece = 0;
    bool covered = false;
    for (size_t i = 0; i < C.pieces.size(); ++i) {
      int s = score[i][v];
      if (s > best) {
        best = s;
        best_piece = i;
        covered = true;
      }
    }
    if (!covered)
      throw VertexUncoveredError("cover_to_map: vertex " + std::to_string(v) +
                                 " lies in no piece");
    f[v] = static_cast<VertexId>(best_piece);
  }

  SimplicialMap result = check_simplicial(C.ambient, N.nerve, f);

  // Postcondition: every fiber is contained in one piece (all its vertices
  // inside the piece's vertex set).
  for (VertexId p : N.nerve.vertices()) {
    std::set<VertexId> fv = result.fiber_vertices(p);
    if (fv.empty()) continue;
    bool contained = false;
    for (size_t i = 0; i < C.pieces.size() && !contained; ++i) {
      std::set<VertexId> inside(C.pieces[i].begin(), C.pieces[i].end());
      contained = std::all_of(fv.begin(), fv.end(),
                              [&](VertexId v) { return inside.count(v) > 0; });
    }
    if (!contained)
      throw SubdivisionTooCoarseError(
          "cover_to_map: fiber over nerve vertex " + std::to_string(p) +
          " spans several pieces; subdivide the cover further");
  }
  return result;
}

}  // namespace volent
