#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "test_helpers.hpp"
#include "volent/builders.hpp"
#include "volent/cover.hpp"
#include "volent/group_oracle.hpp"
#include "volent/pi1.hpp"
#include "volent/simplicial_map.hpp"

using namespace volent;
using volent_test::random_fibered_map;

TEST_CASE("torus projection is simplicial; all triangles map onto edges") {
  BuiltMap torus = torus_grid(3);
  for (const Simplex& t : torus.map.source.simplices_of_dim(2))
    REQUIRE(torus.map.image(t).size() == 2);
}

TEST_CASE("non-simplicial vertex maps are rejected with the simplex named") {
  SimplicialComplex tri = validate_complex({{0, 1, 2}});
  SimplicialComplex path = validate_complex({{10, 11}, {11, 12}, {12, 13}});
  // 0,1,2 -> 10,12,13: image {10,12} is not an edge of the path.
  std::map<VertexId, VertexId> f{{0, 10}, {1, 12}, {2, 13}};
  REQUIRE_THROWS_AS(check_simplicial(tri, path, f), NotSimplicialError);
}

TEST_CASE("identity map is simplicial") {
  SimplicialComplex cycle = cycle_complex(4);
  std::map<VertexId, VertexId> id;
  for (VertexId v : cycle.vertices()) id[v] = v;
  REQUIRE_NOTHROW(check_simplicial(cycle, cycle, id));
}

TEST_CASE("fibers") {
  BuiltMap torus = torus_grid(3);
  BasedSubcomplex F = fiber(torus.map, 0);
  auto verts = F.vertices();
  REQUIRE(verts == std::vector<VertexId>{0, 1, 2});
  REQUIRE(F.edges().size() == 3);  // fiber column is a 3-cycle
  REQUIRE(F.basepoint == 0);

  SimplicialComplex cycle = cycle_complex(3);
  std::map<VertexId, VertexId> id{{0, 0}, {1, 1}, {2, 2}};
  SimplicialMap identity = check_simplicial(cycle, cycle, id);
  REQUIRE(fiber(identity, 1).vertices() == std::vector<VertexId>{1});

  SimplicialComplex point = validate_complex({{7}});
  std::map<VertexId, VertexId> constant{{0, 7}, {1, 7}, {2, 7}};
  SimplicialMap to_point = check_simplicial(cycle, point, constant);
  REQUIRE(fiber(to_point, 7).simplices == cycle.simplices());

  REQUIRE_THROWS_AS(fiber(torus.map, 99), UnknownVertexError);
}

TEST_CASE("empty fiber is reported") {
  SimplicialComplex edge = validate_complex({{0, 1}});
  SimplicialComplex path = validate_complex({{10, 11}, {11, 12}});
  std::map<VertexId, VertexId> f{{0, 10}, {1, 11}};
  SimplicialMap pi = check_simplicial(edge, path, f);
  REQUIRE_THROWS_AS(fiber(pi, 12), EmptyFiberError);
}

TEST_CASE("connected components") {
  SimplicialComplex two = validate_complex({{0, 1}, {2, 3}});
  REQUIRE(connected_components(two.simplices()).size() == 2);

  SimplicialComplex cycle = cycle_complex(3);
  REQUIRE(connected_components(cycle.simplices()).size() == 1);

  BuiltMap folded = folded_hexagon();
  BasedSubcomplex over_b = fiber(folded.map, 11);
  auto comps = connected_components(over_b.simplices);
  REQUIRE(comps.size() == 2);
}

TEST_CASE("connected components form a partition") {
  std::mt19937 rng(31);
  for (int trial = 0; trial < 20; ++trial) {
    SimplicialMap pi = random_fibered_map(rng, 1 + (trial % 2), true);
    for (VertexId p : pi.target.vertices()) {
      std::set<VertexId> verts = pi.fiber_vertices(p);
      if (verts.empty()) continue;
      auto sub = full_subcomplex(pi.source, verts);
      auto comps = connected_components(sub);
      std::set<Simplex> all;
      size_t total = 0;
      for (const auto& comp : comps) {
        total += comp.simplices.size();
        for (const Simplex& s : comp.simplices) all.insert(s);
      }
      REQUIRE(all == sub);           // exhaustive
      REQUIRE(total == sub.size());  // disjoint
    }
  }
}

TEST_CASE("connectify the folded hexagon recovers the hexagon") {
  BuiltMap folded = folded_hexagon();
  ConnectifyResult result = connectify(folded.map);
  REQUIRE(result.pbar.vertices().size() == 6);
  REQUIRE(result.pbar.count_of_dim(1) == 6);
  REQUIRE(result.pbar.is_connected());
  for (VertexId q : result.pbar.vertices())
    REQUIRE(connected_components(fiber(result.pibar, q).simplices).size() == 1);
  // Factorization pi = projection o pibar.
  for (VertexId v : folded.map.source.vertices())
    REQUIRE(folded.map(v) == result.projection.at(result.pibar(v)));
}

TEST_CASE("connectify keeps already-connected maps intact") {
  BuiltMap torus = torus_grid(3);
  ConnectifyResult result = connectify(torus.map);
  REQUIRE(result.pbar.vertices().size() == torus.map.target.vertices().size());
  REQUIRE(result.pbar.count_of_dim(1) == torus.map.target.count_of_dim(1));
}

TEST_CASE("connectify a constant map gives a point") {
  SimplicialComplex cycle = cycle_complex(3);
  SimplicialComplex point = validate_complex({{7}});
  std::map<VertexId, VertexId> constant{{0, 7}, {1, 7}, {2, 7}};
  ConnectifyResult result = connectify(check_simplicial(cycle, point, constant));
  REQUIRE(result.pbar.vertices().size() == 1);
  REQUIRE(result.pbar.dim() == 0);
}

TEST_CASE("connectify is idempotent and factors the map, randomized") {
  std::mt19937 rng(37);
  for (int trial = 0; trial < 25; ++trial) {
    SimplicialMap pi = random_fibered_map(rng, 1 + (trial % 2), true);
    ConnectifyResult bar = connectify(pi);
    for (VertexId q : bar.pbar.vertices())
      REQUIRE(connected_components(fiber(bar.pibar, q).simplices).size() == 1);
    for (VertexId v : pi.source.vertices())
      REQUIRE(pi(v) == bar.projection.at(bar.pibar(v)));
    REQUIRE(bar.pbar.dim() <= pi.target.dim());

    ConnectifyResult again = connectify(bar.pibar);
    REQUIRE(again.pbar.vertices().size() == bar.pbar.vertices().size());
    REQUIRE(again.pbar.simplices().size() == bar.pbar.simplices().size());
  }
}

TEST_CASE("star cover of the torus projection") {
  BuiltMap torus = torus_grid(3);
  Cover C = star_cover(torus.map);
  REQUIRE(C.pieces.size() == 3);
  REQUIRE(C.multiplicity() == 2);
  NerveResult N = nerve(C);
  REQUIRE(N.multiplicity == 2);
  REQUIRE(N.nerve.dim() == 1);
  REQUIRE(N.nerve.vertices().size() == 3);
  REQUIRE(N.nerve.count_of_dim(1) == 3);  // nerve is the 3-cycle
}

TEST_CASE("star cover of the identity on a 3-cycle") {
  SimplicialComplex cycle = cycle_complex(3);
  std::map<VertexId, VertexId> id{{0, 0}, {1, 1}, {2, 2}};
  Cover C = star_cover(check_simplicial(cycle, cycle, id));
  REQUIRE(C.pieces.size() == 3);
  REQUIRE(C.multiplicity() == 2);
  NerveResult N = nerve(C);
  REQUIRE(N.nerve.count_of_dim(1) == 3);
}

TEST_CASE("star cover of a constant map is one piece") {
  SimplicialComplex cycle = cycle_complex(3);
  SimplicialComplex point = validate_complex({{7}});
  std::map<VertexId, VertexId> constant{{0, 7}, {1, 7}, {2, 7}};
  Cover C = star_cover(check_simplicial(cycle, point, constant));
  REQUIRE(C.pieces.size() == 1);
  REQUIRE(C.multiplicity() == 1);
  NerveResult N = nerve(C);
  REQUIRE(N.nerve.vertices().size() == 1);
  REQUIRE(N.nerve.dim() == 0);
}

TEST_CASE("nerve witnesses are genuine common simplices") {
  BuiltMap torus = torus_grid(3);
  Cover C = star_cover(torus.map);
  NerveResult N = nerve(C);
  for (const auto& [nerve_simplex, witness] : N.witness)
    for (VertexId piece : nerve_simplex)
      REQUIRE(C.piece_meets(static_cast<size_t>(piece), witness));
}

TEST_CASE("cover_to_map of a single-piece cover is constant") {
  SimplicialComplex cycle = cycle_complex(3);
  SimplicialComplex point = validate_complex({{7}});
  std::map<VertexId, VertexId> constant{{0, 7}, {1, 7}, {2, 7}};
  Cover C = star_cover(check_simplicial(cycle, point, constant));
  SimplicialMap f = cover_to_map(C);
  std::set<VertexId> images;
  for (VertexId v : f.source.vertices()) images.insert(f(v));
  REQUIRE(images.size() == 1);
}

TEST_CASE("cover_to_map on the subdivided 3-star cover of a 3-cycle") {
  SimplicialComplex cycle = cycle_complex(3);
  std::map<VertexId, VertexId> id{{0, 0}, {1, 1}, {2, 2}};
  Cover C = star_cover(check_simplicial(cycle, cycle, id));
  Cover C1 = subdivide_cover(C, 1);
  SimplicialMap f = cover_to_map(C1);
  // The postcondition is checked inside cover_to_map; verify independently.
  for (VertexId p : f.target.vertices()) {
    std::set<VertexId> fv = f.fiber_vertices(p);
    if (fv.empty()) continue;
    bool inside_one = false;
    for (const auto& piece : C1.pieces) {
      std::set<VertexId> piece_set(piece.begin(), piece.end());
      bool all = true;
      for (VertexId v : fv)
        if (!piece_set.count(v)) all = false;
      if (all) inside_one = true;
    }
    REQUIRE(inside_one);
  }
}

TEST_CASE("subdivided covers keep the same nerve") {
  BuiltMap torus = torus_grid(3);
  Cover C = star_cover(torus.map);
  NerveResult n0 = nerve(C);
  Cover C1 = subdivide_cover(C, 1);
  NerveResult n1 = nerve(C1);
  REQUIRE(n0.multiplicity == n1.multiplicity);
  REQUIRE(n0.nerve.simplices().size() == n1.nerve.simplices().size());
}

TEST_CASE("randomized maps: multiplicity bound, nerve dimension, round trip") {
  std::mt19937 rng(41);
  int checked = 0;
  for (int trial = 0; trial < 30; ++trial) {
    int k = 1 + (trial % 2);
    SimplicialMap pi = random_fibered_map(rng, k);
    Cover C = star_cover(pi);
    REQUIRE(C.multiplicity() <= k + 1);
    NerveResult N = nerve(C);
    REQUIRE(N.nerve.dim() == N.multiplicity - 1);

    // Round trip at subdivision depth <= 2: either a checked map or an
    // explicit SubdivisionTooCoarse, never a silent bad map.
    for (int depth = 0; depth <= 2; ++depth) {
      Cover Cd = depth == 0 ? C : subdivide_cover(C, depth);
      try {
        SimplicialMap f = cover_to_map(Cd);
        for (VertexId p : f.target.vertices()) {
          std::set<VertexId> fv = f.fiber_vertices(p);
          if (fv.empty()) continue;
          bool inside_one = false;
          for (const auto& piece : Cd.pieces) {
            std::set<VertexId> piece_set(piece.begin(), piece.end());
            if (std::all_of(fv.begin(), fv.end(), [&](VertexId v) {
                  return piece_set.count(v) > 0;
                }))
              inside_one = true;
          }
          REQUIRE(inside_one);
        }
        ++checked;
        break;
      } catch (const SubdivisionTooCoarseError&) {
        // fine: reported, not silent
      }
    }
  }
  REQUIRE(checked > 0);
}

TEST_CASE("fiber subgroups lie in the subgroup of the containing piece") {
  // Graph instances: pi_1 is free, so the free-reduction oracle verifies the
  // rewriting identities completely, word by word.
  std::mt19937 rng(43);
  int verified_words = 0;
  for (int trial = 0; trial < 12; ++trial) {
    SimplicialMap pi = random_fibered_map(rng, 1);
    if (pi.source.dim() != 1 || !pi.source.is_connected()) continue;
    Cover C = star_cover(pi);
    SimplicialMap f;
    try {
      f = cover_to_map(C);
    } catch (const SubdivisionTooCoarseError&) {
      continue;
    }
    Pi1Data pi1 = pi1_presentation(pi.source, pi.source.vertices().front());
    if (pi1.presentation.rank() == 0) continue;
    FreeOracle oracle(pi1.presentation.rank());

    for (VertexId p : f.target.vertices()) {
      std::set<VertexId> fv = f.fiber_vertices(p);
      if (fv.empty()) continue;
      const std::vector<VertexId>* piece = nullptr;
      for (const auto& candidate : C.pieces) {
        std::set<VertexId> piece_set(candidate.begin(), candidate.end());
        if (std::all_of(fv.begin(), fv.end(),
                        [&](VertexId v) { return piece_set.count(v) > 0; })) {
          piece = &candidate;
          break;
        }
      }
      REQUIRE(piece != nullptr);

      BasedSubcomplex F{full_subcomplex(pi.source, fv), *fv.begin()};
      if (!F.is_connected()) continue;

      // Spanning tree of the containing piece, rooted at the fiber basepoint.
      std::set<VertexId> piece_verts(piece->begin(), piece->end());
      std::map<VertexId, std::vector<VertexId>> adj;
      for (VertexId v : piece_verts) adj[v];
      for (const Simplex& e : pi.source.edges())
        if (piece_verts.count(e[0]) && piece_verts.count(e[1])) {
          adj[e[0]].push_back(e[1]);
          adj[e[1]].push_back(e[0]);
        }
      for (auto& [v, nbrs] : adj) std::sort(nbrs.begin(), nbrs.end());
      auto parent = detail::bfs_tree(adj, F.basepoint);

      // Spanning tree of the fiber itself.
      std::map<VertexId, std::vector<VertexId>> fadj;
      for (VertexId v : F.vertices()) fadj[v];
      for (const Simplex& e : F.edges()) {
        fadj[e[0]].push_back(e[1]);
        fadj[e[1]].push_back(e[0]);
      }
      for (auto& [v, nbrs] : fadj) std::sort(nbrs.begin(), nbrs.end());
      auto fparent = detail::bfs_tree(fadj, F.basepoint);

      // Each fiber generator loop, rewritten edge by edge through the
      // piece's based loops, must equal its direct word under the oracle.
      for (const Simplex& e : F.edges()) {
        VertexId u = e[0], v = e[1];
        if (fparent.at(u) == v || fparent.at(v) == u) continue;
        auto to_u = detail::tree_path_to_root(fparent, u);
        std::reverse(to_u.begin(), to_u.end());
        auto from_v = detail::tree_path_to_root(fparent, v);
        std::vector<VertexId> loop(to_u);
        loop.insert(loop.end(), from_v.begin(), from_v.end());

        Word direct = pi1.word_of_path(loop);
        Word via_piece;
        for (size_t i = 0; i + 1 < loop.size(); ++i) {
          auto to_a = detail::tree_path_to_root(parent, loop[i]);
          std::reverse(to_a.begin(), to_a.end());
          auto from_b = detail::tree_path_to_root(parent, loop[i + 1]);
          std::vector<VertexId> factor(to_a);
          factor.insert(factor.end(), from_b.begin(), from_b.end());
          via_piece = concat(via_piece, pi1.word_of_path(factor));
        }
        REQUIRE(oracle.equal(direct, via_piece));
        ++verified_words;
      }
    }
  }
  REQUIRE(verified_words > 0);
}
