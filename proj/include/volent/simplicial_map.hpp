#pragma once

#include <map>
#include <set>
#include <vector>

#include "volent/errors.hpp"
#include "volent/simplicial_complex.hpp"
#include "volent/subcomplex.hpp"

namespace volent {

/// Vertex map whose induced simplex images are simplices of the target
/// (possibly degenerate, i.e. collapsed onto lower faces).
struct SimplicialMap {
  SimplicialComplex source;
  SimplicialComplex target;
  std::map<VertexId, VertexId> vertex_map;

  VertexId operator()(VertexId v) const {
    auto it = vertex_map.find(v);
    if (it == vertex_map.end())
      throw UnknownVertexError("map: vertex " + std::to_string(v) +
                               " has no image");
    return it->second;
  }

  Simplex image(const Simplex& s) const {
    std::set<VertexId> img;
    for (VertexId v : s) img.insert((*this)(v));
    return Simplex(img.begin(), img.end());
  }

  /// Source vertices mapping to p.
  std::set<VertexId> fiber_vertices(VertexId p) const {
    std::set<VertexId> out;
    for (const auto& [v, q] : vertex_map)
      if (q == p) out.insert(v);
    return out;
  }

  bool is_surjective_on_vertices() const {
    std::set<VertexId> hit;
    for (const auto& [v, q] : vertex_map) hit.insert(q);
    return hit.size() == target.vertices().size();
  }
};

/// Validates a vertex map as simplicial; names the offending simplex if not.
inline SimplicialMap check_simplicial(const SimplicialComplex& X,
                                      const SimplicialComplex& P,
                                      const std::map<VertexId, VertexId>& f) {
  for (VertexId v : X.vertices())
    if (!f.count(v))
      throw UnknownVertexError("map: vertex " + std::to_string(v) +
                               " missing from vertex map");
  SimplicialMap pi{X, P, f};
  for (VertexId v : X.vertices())
    if (!P.has_vertex(pi(v)))
      throw NotSimplicialError("map: image of vertex " + std::to_string(v) +
                               " is not a target vertex");
  for (const Simplex& s : X.simplices()) {
    Simplex img = pi.image(s);
    if (!P.contains(img))
      throw NotSimplicialError("map: image of " + simplex_to_string(s) +
                               " is not a simplex of the target");
  }
  return pi;
}

/// Full preimage subcomplex over a target vertex, based at its smallest
/// vertex. Since the map is simplicial this is exactly the fiber.
inline BasedSubcomplex fiber(const SimplicialMap& pi, VertexId p) {
  if (!pi.target.has_vertex(p))
    throw UnknownVertexError("fiber: unknown target vertex " +
                             std::to_string(p));
  std::set<VertexId> verts = pi.fiber_vertices(p);
  if (verts.empty())
    throw EmptyFiberError("fiber: empty over vertex " + std::to_string(p));
  std::set<Simplex> simplices = full_subcomplex(pi.source, verts);
  return BasedSubcomplex{simplices, *verts.begin()};
}

struct ConnectifyResult {
  SimplicialMap pibar;                        // X -> Pbar
  SimplicialComplex pbar;                     // quotient by fiber components
  std::map<VertexId, VertexId> projection;    // Pbar vertex -> P vertex
};

/// Quotient of X identifying each connected fiber component to a point. The
/// fibers of the returned map are connected and the original map factors as
/// (projection) o (pibar). Target vertices with empty fibers are dropped
/// first.
inline ConnectifyResult connectify(const SimplicialMap& pi) {
  ConnectifyResult out;
  std::map<VertexId, VertexId> component_of;  // X vertex -> Pbar vertex
  VertexId next = 0;
  for (VertexId p : pi.target.vertices()) {
    std::set<VertexId> verts = pi.fiber_vertices(p);
    if (verts.empty()) continue;
    std::set<Simplex> fib = full_subcomplex(pi.source, verts);
    for (const BasedSubcomplex& comp : connected_components(fib)) {
      for (VertexId v : comp.vertices()) component_of[v] = next;
      out.projection[next] = p;
      ++next;
    }
  }

  std::set<Simplex> quotient;
  for (const Simplex& s : pi.source.simplices()) {
    std::set<VertexId> img;
    for (VertexId v : s) img.insert(component_of.at(v));
    quotient.insert(Simplex(img.begin(), img.end()));
  }
  out.pbar = SimplicialComplex::from_simplex_set(quotient);
  out.pibar = SimplicialMap{pi.source, out.pbar, component_of};
  return out;
}

}  // namespace volent
