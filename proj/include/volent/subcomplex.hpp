#pragma once

#include <map>
#include <queue>
#include <set>
#include <vector>

#include "volent/errors.hpp"
#include "volent/simplicial_complex.hpp"

namespace volent {

/// Face-closed subset of a parent complex together with a basepoint in it.
struct BasedSubcomplex {
  std::set<Simplex> simplices;
  VertexId basepoint = 0;

  std::vector<VertexId> vertices() const {
    std::set<VertexId> vs;
    for (const Simplex& s : simplices)
      for (VertexId v : s) vs.insert(v);
    return {vs.begin(), vs.end()};
  }

  std::vector<Simplex> edges() const {
    std::vector<Simplex> out;
    for (const Simplex& s : simplices)
      if (s.size() == 2) out.push_back(s);
    return out;
  }

  bool is_connected() const {
    auto vs = vertices();
    if (vs.empty()) return true;
    std::map<VertexId, std::vector<VertexId>> adj;
    for (VertexId v : vs) adj[v];
    for (const Simplex& e : edges()) {
      adj[e[0]].push_back(e[1]);
      adj[e[1]].push_back(e[0]);
    }
    std::set<VertexId> seen{vs.front()};
    std::queue<VertexId> queue;
    queue.push(vs.front());
    while (!queue.empty()) {
      VertexId v = queue.front();
      queue.pop();
      for (VertexId w : adj[v])
        if (seen.insert(w).second) queue.push(w);
    }
    return seen.size() == vs.size();
  }
};

/// Validates that `simplices` is face-closed within `parent` and that the
/// basepoint belongs to the subset.
inline BasedSubcomplex make_based_subcomplex(const SimplicialComplex& parent,
                                             const std::set<Simplex>& simplices,
                                             VertexId basepoint) {
  for (const Simplex& s : simplices) {
    if (!parent.contains(s))
      throw Error("subcomplex: " + simplex_to_string(s) + " not in parent");
    const size_t n = s.size();
    for (unsigned mask = 1; mask + 1 < (1u << n); ++mask) {
      Simplex face;
      for (size_t i = 0; i < n; ++i)
        if (mask & (1u << i)) face.push_back(s[i]);
      if (!simplices.count(face))
        throw Error("subcomplex: not face-closed at " + simplex_to_string(face));
    }
  }
  if (!simplices.count(Simplex{basepoint}))
    throw Error("subcomplex: basepoint " + std::to_string(basepoint) +
                " not in subset");
  return BasedSubcomplex{simplices, basepoint};
}

/// Full subcomplex of `parent` spanned by a vertex set.
inline std::set<Simplex> full_subcomplex(const SimplicialComplex& parent,
                                         const std::set<VertexId>& verts) {
  std::set<Simplex> out;
  for (const Simplex& s : parent.simplices()) {
    bool inside = true;
    for (VertexId v : s)
      if (!verts.count(v)) {
        inside = false;
        break;
      }
    if (inside) out.insert(s);
  }
  return out;
}

/// Partition of a subcomplex by 1-skeleton connectivity. Each component is
/// based at its smallest vertex. Components are ordered by basepoint.
inline std::vector<BasedSubcomplex> connected_components(
    const std::set<Simplex>& sub) {
  std::set<VertexId> verts;
  std::map<VertexId, std::vector<VertexId>> adj;
  for (const Simplex& s : sub)
    for (VertexId v : s) {
      verts.insert(v);
      adj[v];
    }
  for (const Simplex& s : sub) {
    if (s.size() != 2) continue;
    adj[s[0]].push_back(s[1]);
    adj[s[1]].push_back(s[0]);
  }

  std::map<VertexId, VertexId> root;  // vertex -> component basepoint
  std::vector<VertexId> roots;
  for (VertexId v : verts) {
    if (root.count(v)) continue;
    roots.push_back(v);
    std::queue<VertexId> queue;
    queue.push(v);
    root[v] = v;
    while (!queue.empty()) {
      VertexId u = queue.front();
      queue.pop();
      for (VertexId w : adj[u])
        if (!root.count(w)) {
          root[w] = v;
          queue.push(w);
        }
    }
  }

  std::map<VertexId, std::set<Simplex>> pieces;
  for (const Simplex& s : sub) pieces[root[s[0]]].insert(s);

  std::vector<BasedSubcomplex> out;
  for (VertexId r : roots) out.push_back(BasedSubcomplex{pieces[r], r});
  return out;
}

}  // namespace volent
