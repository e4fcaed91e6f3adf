#pragma once

#include <algorithm>
#include <functional>
#include <map>
#include <queue>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "volent/errors.hpp"

namespace volent {

using VertexId = int;

/// A simplex is a strictly increasing tuple of vertex identifiers.
using Simplex = std::vector<VertexId>;

inline std::string simplex_to_string(const Simplex& s) {
  std::ostringstream os;
  os << "[";
  for (size_t i = 0; i < s.size(); ++i) os << (i ? "," : "") << s[i];
  os << "]";
  return os.str();
}

/// Finite abstract simplicial complex. Simplices of all dimensions are stored
/// explicitly in canonical (sorted) form, so face queries are set lookups and
/// iteration order is deterministic.
class SimplicialComplex {
 public:
  SimplicialComplex() = default;

  /// Builds the face closure of a list of simplices. Rejects an empty list,
  /// tuples with repeated vertices, and duplicate tuples (after sorting).
  static SimplicialComplex from_simplices(const std::vector<Simplex>& raw) {
    if (raw.empty()) throw EmptyInputError("complex: empty simplex list");
    std::set<Simplex> seen;
    SimplicialComplex X;
    for (Simplex s : raw) {
      if (s.empty()) throw EmptyInputError("complex: empty simplex tuple");
      std::sort(s.begin(), s.end());
      if (std::adjacent_find(s.begin(), s.end()) != s.end())
        throw DuplicateSimplexError("complex: repeated vertex in " +
                                    simplex_to_string(s));
      if (!seen.insert(s).second)
        throw DuplicateSimplexError("complex: duplicate simplex " +
                                    simplex_to_string(s));
      X.insert_with_faces(s);
    }
    X.finish();
    return X;
  }

  /// Face closure of an already-deduplicated set (internal constructions).
  static SimplicialComplex from_simplex_set(const std::set<Simplex>& simplices) {
    if (simplices.empty()) throw EmptyInputError("complex: empty simplex set");
    SimplicialComplex X;
    for (const Simplex& s : simplices) X.insert_with_faces(s);
    X.finish();
    return X;
  }

  const std::vector<VertexId>& vertices() const { return vertices_; }
  const std::set<Simplex>& simplices() const { return simplices_; }
  int dim() const { return dim_; }

  bool contains(const Simplex& s) const { return simplices_.count(s) > 0; }
  bool has_vertex(VertexId v) const {
    return std::binary_search(vertices_.begin(), vertices_.end(), v);
  }

  size_t vertex_index(VertexId v) const {
    auto it = std::lower_bound(vertices_.begin(), vertices_.end(), v);
    if (it == vertices_.end() || *it != v)
      throw UnknownVertexError("complex: unknown vertex " + std::to_string(v));
    return static_cast<size_t>(it - vertices_.begin());
  }

  std::vector<Simplex> simplices_of_dim(int q) const {
    std::vector<Simplex> out;
    for (const Simplex& s : simplices_)
      if (static_cast<int>(s.size()) == q + 1) out.push_back(s);
    return out;
  }

  std::vector<Simplex> edges() const { return simplices_of_dim(1); }

  std::vector<Simplex> top_simplices() const { return simplices_of_dim(dim_); }

  size_t count_of_dim(int q) const {
    size_t n = 0;
    for (const Simplex& s : simplices_)
      if (static_cast<int>(s.size()) == q + 1) ++n;
    return n;
  }

  long long euler_characteristic() const {
    long long chi = 0;
    for (const Simplex& s : simplices_) chi += (s.size() % 2 == 1) ? 1 : -1;
    return chi;
  }

  /// All simplices of dimension at most q.
  SimplicialComplex skeleton(int q) const {
    if (q < 0 || q > dim_)
      throw QOutOfRangeError("skeleton: q=" + std::to_string(q) +
                             " outside [0," + std::to_string(dim_) + "]");
    std::set<Simplex> kept;
    for (const Simplex& s : simplices_)
      if (static_cast<int>(s.size()) <= q + 1) kept.insert(s);
    return from_simplex_set(kept);
  }

  /// Combinatorial open star: every simplex containing v.
  std::set<Simplex> open_star(VertexId v) const {
    if (!has_vertex(v))
      throw UnknownVertexError("open_star: unknown vertex " + std::to_string(v));
    std::set<Simplex> star;
    for (const Simplex& s : simplices_)
      if (std::binary_search(s.begin(), s.end(), v)) star.insert(s);
    return star;
  }

  /// Neighbor lists of the 1-skeleton, ascending per vertex.
  std::map<VertexId, std::vector<VertexId>> adjacency() const {
    std::map<VertexId, std::vector<VertexId>> adj;
    for (VertexId v : vertices_) adj[v];
    for (const Simplex& s : simplices_) {
      if (s.size() != 2) continue;
      adj[s[0]].push_back(s[1]);
      adj[s[1]].push_back(s[0]);
    }
    for (auto& [v, nbrs] : adj) std::sort(nbrs.begin(), nbrs.end());
    return adj;
  }

  bool is_connected() const {
    if (vertices_.empty()) return true;
    auto adj = adjacency();
    std::set<VertexId> seen{vertices_.front()};
    std::queue<VertexId> queue;
    queue.push(vertices_.front());
    while (!queue.empty()) {
      VertexId v = queue.front();
      queue.pop();
      for (VertexId w : adj[v])
        if (seen.insert(w).second) queue.push(w);
    }
    return seen.size() == vertices_.size();
  }

 private:
  void insert_with_faces(const Simplex& s) {
    // Enumerate nonempty subsets; simplex sizes are small so a bitmask walk
    // is fine.
    const size_t n = s.size();
    for (unsigned mask = 1; mask < (1u << n); ++mask) {
      Simplex face;
      for (size_t i = 0; i < n; ++i)
        if (mask & (1u << i)) face.push_back(s[i]);
      simplices_.insert(std::move(face));
    }
  }

  void finish() {
    std::set<VertexId> vs;
    dim_ = 0;
    for (const Simplex& s : simplices_) {
      dim_ = std::max(dim_, static_cast<int>(s.size()) - 1);
      for (VertexId v : s) vs.insert(v);
    }
    vertices_.assign(vs.begin(), vs.end());
  }

  std::vector<VertexId> vertices_;
  std::set<Simplex> simplices_;
  int dim_ = 0;
};

/// validate_complex in operator form; see SimplicialComplex::from_simplices.
inline SimplicialComplex validate_complex(const std::vector<Simplex>& raw) {
  return SimplicialComplex::from_simplices(raw);
}

struct BarycentricSubdivision {
  SimplicialComplex complex;
  /// carrier[w] = simplex of the original complex whose barycenter is the new
  /// vertex w. New vertices are numbered 0..N-1 in the set order of the
  /// original simplices.
  std::vector<Simplex> carrier;
  /// Image of each original vertex (its own barycenter).
  std::map<VertexId, VertexId> vertex_image;
};

/// First barycentric subdivision. New simplices are the chains of proper face
/// inclusions of the original complex.
inline BarycentricSubdivision barycentric_subdivide(const SimplicialComplex& X) {
  BarycentricSubdivision out;
  std::map<Simplex, VertexId> id_of;
  for (const Simplex& s : X.simplices()) {
    VertexId id = static_cast<VertexId>(out.carrier.size());
    id_of[s] = id;
    out.carrier.push_back(s);
    if (s.size() == 1) out.vertex_image[s[0]] = id;
  }

  // Saturated descending flags from the maximal simplices; the face closure
  // in from_simplex_set supplies every gapped subchain.
  std::set<Simplex> flags;
  std::vector<VertexId> chain;
  std::function<void(const Simplex&)> descend = [&](const Simplex& s) {
    chain.push_back(id_of.at(s));
    if (s.size() == 1) {
      Simplex flag(chain);
      std::sort(flag.begin(), flag.end());
      flags.insert(std::move(flag));
    } else {
      for (size_t skip = 0; skip < s.size(); ++skip) {
        Simplex facet;
        facet.reserve(s.size() - 1);
        for (size_t i = 0; i < s.size(); ++i)
          if (i != skip) facet.push_back(s[i]);
        descend(facet);
      }
    }
    chain.pop_back();
  };

  auto is_face = [](const Simplex& a, const Simplex& b) {
    return a.size() < b.size() &&
           std::includes(b.begin(), b.end(), a.begin(), a.end());
  };
  for (const Simplex& s : X.simplices()) {
    bool maximal = true;
    for (const Simplex& s2 : X.simplices()) {
      if (is_face(s, s2)) {
        maximal = false;
        break;
      }
    }
    if (maximal) descend(s);
  }

  out.complex = SimplicialComplex::from_simplex_set(flags);
  return out;
}

}  // namespace volent
