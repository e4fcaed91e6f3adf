#pragma once

#include <map>
#include <queue>
#include <set>
#include <utility>
#include <vector>

#include "volent/errors.hpp"
#include "volent/presentation.hpp"
#include "volent/simplicial_complex.hpp"
#include "volent/subcomplex.hpp"

namespace volent {

/// Edge-path group data of a connected complex: spanning tree, one generator
/// per non-tree edge of the 1-skeleton, one relator per 2-simplex, and a table
/// assigning every oriented edge its generator word (tree edges are trivial).
struct Pi1Data {
  VertexId basepoint = 0;
  Presentation presentation;
  std::map<std::pair<VertexId, VertexId>, Word> edge_word;
  std::map<VertexId, VertexId> tree_parent;  // basepoint maps to itself
  /// Generators of the raw edge-path presentation (one per non-tree edge,
  /// always E - V + 1) before the Tietze cleanup removed provably trivial
  /// ones.
  size_t raw_generator_count = 0;

  const Word& word_of_edge(VertexId from, VertexId to) const {
    auto it = edge_word.find({from, to});
    if (it == edge_word.end())
      throw Error("pi1: no edge (" + std::to_string(from) + "," +
                  std::to_string(to) + ")");
    return it->second;
  }

  /// Word of an oriented edge path (concatenation of edge words, reduced).
  Word word_of_path(const std::vector<VertexId>& path) const {
    Word w;
    for (size_t i = 0; i + 1 < path.size(); ++i) {
      const Word& e = word_of_edge(path[i], path[i + 1]);
      w.insert(w.end(), e.begin(), e.end());
    }
    return free_reduce(w);
  }
};

namespace detail {

/// BFS spanning tree with ascending-neighbor tie-breaking; deterministic.
inline std::map<VertexId, VertexId> bfs_tree(
    const std::map<VertexId, std::vector<VertexId>>& adj, VertexId root) {
  std::map<VertexId, VertexId> parent;
  parent[root] = root;
  std::queue<VertexId> queue;
  queue.push(root);
  while (!queue.empty()) {
    VertexId v = queue.front();
    queue.pop();
    for (VertexId w : adj.at(v))
      if (!parent.count(w)) {
        parent[w] = v;
        queue.push(w);
      }
  }
  return parent;
}

inline std::vector<VertexId> tree_path_to_root(
    const std::map<VertexId, VertexId>& parent, VertexId v) {
  std::vector<VertexId> path{v};
  while (parent.at(v) != v) {
    v = parent.at(v);
    path.push_back(v);
  }
  return path;
}

}  // namespace detail

/// Edge-path presentation of pi_1(X, basepoint). The Tietze cleanup deletes
/// generators forced trivial by length-1 relators but performs no further
/// simplification, so the remaining relators stay in correspondence with
/// 2-cells.
inline Pi1Data pi1_presentation(const SimplicialComplex& X, VertexId basepoint) {
  if (!X.has_vertex(basepoint))
    throw UnknownVertexError("pi1: unknown basepoint " +
                             std::to_string(basepoint));
  if (!X.is_connected()) throw DisconnectedError("pi1: complex disconnected");

  Pi1Data out;
  out.basepoint = basepoint;
  auto adj = X.adjacency();
  out.tree_parent = detail::bfs_tree(adj, basepoint);

  // Generators: non-tree edges in set order.
  std::map<std::pair<VertexId, VertexId>, int> gen_of_edge;
  for (const Simplex& e : X.edges()) {
    VertexId u = e[0], v = e[1];
    bool tree = out.tree_parent.at(u) == v || out.tree_parent.at(v) == u;
    if (tree) {
      out.edge_word[{u, v}] = {};
      out.edge_word[{v, u}] = {};
    } else {
      int k = static_cast<int>(gen_of_edge.size()) + 1;
      gen_of_edge[{u, v}] = k;
      out.edge_word[{u, v}] = {k};
      out.edge_word[{v, u}] = {-k};
      out.presentation.generators.push_back("g" + std::to_string(k - 1));
    }
  }

  out.raw_generator_count = gen_of_edge.size();

  // Relators: boundary words of the 2-simplices.
  for (const Simplex& s : X.simplices()) {
    if (s.size() != 3) continue;
    Word w = concat(out.word_of_edge(s[0], s[1]),
                    concat(out.word_of_edge(s[1], s[2]),
                           out.word_of_edge(s[2], s[0])));
    w = cyclic_reduce(w);
    if (!w.empty()) out.presentation.relators.push_back(w);
  }

  // Tietze cleanup: a length-1 relator kills its generator everywhere.
  std::set<int> trivial;
  bool changed = true;
  while (changed) {
    changed = false;
    for (const Word& r : out.presentation.relators)
      if (r.size() == 1 && trivial.insert(std::abs(r[0])).second)
        changed = true;
    if (!changed) break;
    std::vector<Word> next;
    for (const Word& r : out.presentation.relators) {
      Word w;
      for (int letter : r)
        if (!trivial.count(std::abs(letter))) w.push_back(letter);
      w = cyclic_reduce(w);
      if (!w.empty()) next.push_back(w);
    }
    out.presentation.relators = std::move(next);
  }

  if (!trivial.empty()) {
    // Renumber the surviving generators compactly.
    std::map<int, int> renumber;
    std::vector<std::string> names;
    for (size_t k = 1; k <= out.presentation.generators.size(); ++k) {
      if (trivial.count(static_cast<int>(k))) continue;
      renumber[static_cast<int>(k)] = static_cast<int>(renumber.size()) + 1;
      names.push_back(out.presentation.generators[k - 1]);
    }
    auto rewrite = [&](const Word& w) {
      Word v;
      for (int letter : w) {
        int k = std::abs(letter);
        if (trivial.count(k)) continue;
        v.push_back(letter > 0 ? renumber[k] : -renumber[k]);
      }
      return free_reduce(v);
    };
    for (Word& r : out.presentation.relators) r = cyclic_reduce(rewrite(r));
    for (auto& [key, w] : out.edge_word) w = rewrite(w);
    out.presentation.generators = std::move(names);
  }

  out.presentation.validate();
  return out;
}

/// Generators of the image of pi_1(A, A.basepoint) in pi_1(X, basepoint):
/// one word per non-tree edge of a spanning tree of A's 1-skeleton, connected
/// to the ambient basepoint along the ambient spanning tree (whose edges carry
/// trivial words). Words are freely reduced; trivial ones are dropped.
inline std::vector<Word> subgroup_image_generators(const SimplicialComplex& X,
                                                   const BasedSubcomplex& A,
                                                   const Pi1Data& pi1) {
  if (!A.is_connected())
    throw DisconnectedSubcomplexError("subgroup: subcomplex disconnected");
  (void)X;

  std::map<VertexId, std::vector<VertexId>> adj;
  for (VertexId v : A.vertices()) adj[v];
  for (const Simplex& e : A.edges()) {
    adj[e[0]].push_back(e[1]);
    adj[e[1]].push_back(e[0]);
  }
  for (auto& [v, nbrs] : adj) std::sort(nbrs.begin(), nbrs.end());
  auto parent = detail::bfs_tree(adj, A.basepoint);

  std::vector<Word> gens;
  for (const Simplex& e : A.edges()) {
    VertexId u = e[0], v = e[1];
    if (parent.at(u) == v || parent.at(v) == u) continue;
    auto to_u = detail::tree_path_to_root(parent, u);   // u .. base
    std::reverse(to_u.begin(), to_u.end());             // base .. u
    auto from_v = detail::tree_path_to_root(parent, v); // v .. base
    Word w = concat(pi1.word_of_path(to_u),
                    concat(pi1.word_of_edge(u, v), pi1.word_of_path(from_v)));
    w = free_reduce(w);
    if (!w.empty()) gens.push_back(w);
  }
  return gens;
}

}  // namespace volent
