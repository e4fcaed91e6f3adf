#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "volent/builders.hpp"
#include "volent/group_oracle.hpp"
#include "volent/pi1.hpp"
#include "volent/smith.hpp"

using namespace volent;

namespace {

// Independent H_1 oracle from the boundary matrices: free rank
// = dim ker d1 - rank d2, torsion = invariant factors of d2 above 1.
AbelianInvariants homology_h1(const SimplicialComplex& X) {
  auto edges = X.simplices_of_dim(1);
  auto triangles = X.simplices_of_dim(2);
  const auto& verts = X.vertices();

  std::map<Simplex, size_t> edge_index;
  for (size_t i = 0; i < edges.size(); ++i) edge_index[edges[i]] = i;

  IntegerMatrix d1(edges.size(), std::vector<Integer>(verts.size(), 0));
  for (size_t i = 0; i < edges.size(); ++i) {
    d1[i][X.vertex_index(edges[i][1])] += 1;
    d1[i][X.vertex_index(edges[i][0])] -= 1;
  }
  IntegerMatrix d2(triangles.size(), std::vector<Integer>(edges.size(), 0));
  for (size_t i = 0; i < triangles.size(); ++i) {
    const Simplex& t = triangles[i];
    d2[i][edge_index[{t[1], t[2]}]] += 1;
    d2[i][edge_index[{t[0], t[2]}]] -= 1;
    d2[i][edge_index[{t[0], t[1]}]] += 1;
  }

  size_t rank_d1 = smith_normal_form(d1).rank();
  SmithResult snf_d2 = smith_normal_form(d2);
  AbelianInvariants out;
  out.free_rank = edges.size() - rank_d1 - snf_d2.rank();
  for (const Integer& d : snf_d2.invariant_factors)
    if (d > 1) out.torsion.push_back(d);
  return out;
}

SimplicialComplex random_connected_2complex(std::mt19937& rng) {
  int nv = 5 + static_cast<int>(rng() % 4);
  std::set<Simplex> simplices;
  for (int v = 0; v + 1 < nv; ++v) simplices.insert({v, v + 1});  // spine
  int triangles = 2 + static_cast<int>(rng() % 6);
  for (int k = 0; k < triangles; ++k) {
    int a = static_cast<int>(rng() % nv), b = static_cast<int>(rng() % nv),
        c = static_cast<int>(rng() % nv);
    if (a == b || b == c || a == c) continue;
    Simplex s{a, b, c};
    std::sort(s.begin(), s.end());
    simplices.insert(s);
  }
  return SimplicialComplex::from_simplex_set(simplices);
}

}  // namespace

TEST_CASE("word utilities") {
  REQUIRE(free_reduce({1, -1}) == Word{});
  REQUIRE(free_reduce({1, 2, -2, 1}) == Word({1, 1}));
  REQUIRE(cyclic_reduce({1, 2, -1}) == Word({2}));
  REQUIRE(invert_word({1, 2}) == Word({-2, -1}));
}

TEST_CASE("figure eight gives the free group of rank two") {
  BuiltComplex fig8 = figure_eight(3);
  Pi1Data pi1 = pi1_presentation(fig8.complex, 0);
  REQUIRE(pi1.presentation.rank() == 2);
  REQUIRE(pi1.presentation.relators.empty());
}

TEST_CASE("generator count is E - V + 1 on connected complexes") {
  std::mt19937 rng(11);
  for (int trial = 0; trial < 20; ++trial) {
    SimplicialComplex X = random_connected_2complex(rng);
    REQUIRE(X.is_connected());
    Pi1Data pi1 = pi1_presentation(X, X.vertices().front());
    size_t expected = X.count_of_dim(1) - (X.vertices().size() - 1);
    REQUIRE(pi1.raw_generator_count == expected);
    // The Tietze cleanup only ever removes provably trivial generators.
    REQUIRE(pi1.presentation.rank() <= expected);
  }
}

TEST_CASE("full 2-simplex is simply connected after cleanup") {
  SimplicialComplex tri = validate_complex({{0, 1, 2}});
  Pi1Data pi1 = pi1_presentation(tri, 0);
  REQUIRE(pi1.presentation.rank() == 0);
  REQUIRE(pi1.presentation.relators.empty());
}

TEST_CASE("torus abelianization is Z^2") {
  SimplicialComplex torus = torus_grid(3).map.source;
  Pi1Data pi1 = pi1_presentation(torus, 0);
  REQUIRE(pi1.raw_generator_count ==
          torus.count_of_dim(1) - (torus.vertices().size() - 1));
  AbelianInvariants inv = abelianization(pi1.presentation);
  REQUIRE(inv.free_rank == 2);
  REQUIRE(inv.torsion.empty());
}

TEST_CASE("pi1 abelianization equals H1 from boundary matrices") {
  SimplicialComplex torus = torus_grid(3).map.source;
  REQUIRE(abelianization(pi1_presentation(torus, 0).presentation) ==
          homology_h1(torus));

  BuiltComplex sigma = glued_surface_complex(2, 3);
  AbelianInvariants h1 = homology_h1(sigma.complex);
  REQUIRE(abelianization(pi1_presentation(sigma.complex, 0).presentation) == h1);
  REQUIRE(h1.free_rank == 4);
  REQUIRE(h1.torsion.size() == 1);
  REQUIRE(h1.torsion[0] == 3);

  std::mt19937 rng(23);
  for (int trial = 0; trial < 15; ++trial) {
    SimplicialComplex X = random_connected_2complex(rng);
    REQUIRE(abelianization(pi1_presentation(X, X.vertices().front()).presentation) ==
            homology_h1(X));
  }
}

TEST_CASE("glued surface presentation abelianization") {
  AbelianInvariants inv = abelianization(glued_surface_presentation(2, 3));
  REQUIRE(inv.free_rank == 4);
  REQUIRE(inv.torsion.size() == 1);
  REQUIRE(inv.torsion[0] == 3);
}

TEST_CASE("grigorchuk HNN presentation abelianizes to Z") {
  AbelianInvariants inv = abelianization(grigorchuk_hnn_presentation());
  REQUIRE(inv.free_rank == 1);
  REQUIRE(inv.torsion.empty());
}

TEST_CASE("edge-word table covers every oriented edge") {
  SimplicialComplex torus = torus_grid(3).map.source;
  Pi1Data pi1 = pi1_presentation(torus, 0);
  for (const Simplex& e : torus.edges()) {
    REQUIRE(pi1.edge_word.count({e[0], e[1]}) == 1);
    REQUIRE(pi1.edge_word.count({e[1], e[0]}) == 1);
    REQUIRE(pi1.word_of_edge(e[0], e[1]) ==
            invert_word(pi1.word_of_edge(e[1], e[0])));
  }
}

TEST_CASE("pi1 requires a connected complex") {
  SimplicialComplex two = validate_complex({{0, 1}, {2, 3}});
  REQUIRE_THROWS_AS(pi1_presentation(two, 0), DisconnectedError);
}

TEST_CASE("subgroup generators: whole figure eight") {
  BuiltComplex fig8 = figure_eight(3);
  Pi1Data pi1 = pi1_presentation(fig8.complex, 0);
  BasedSubcomplex whole{std::set<Simplex>(fig8.complex.simplices()), 0};
  auto gens = subgroup_image_generators(fig8.complex, whole, pi1);
  REQUIRE(gens.size() == 2);
  for (const Word& g : gens) REQUIRE(g.size() == 1);
}

TEST_CASE("subgroup generators: one circle of the figure eight") {
  BuiltComplex fig8 = figure_eight(3);
  Pi1Data pi1 = pi1_presentation(fig8.complex, 0);
  std::set<VertexId> circle{0, 1, 2};
  BasedSubcomplex A{full_subcomplex(fig8.complex, circle), 0};
  auto gens = subgroup_image_generators(fig8.complex, A, pi1);
  REQUIRE(gens.size() == 1);
  Word reduced = free_reduce(gens[0]);
  REQUIRE(reduced.size() == 1);
}

TEST_CASE("subgroup generators: torus fiber is a primitive homology class") {
  BuiltMap torus = torus_grid(3);
  Pi1Data pi1 = pi1_presentation(torus.map.source, 0);
  std::set<VertexId> column{0, 1, 2};  // fiber over base vertex 0
  BasedSubcomplex A{full_subcomplex(torus.map.source, column), 0};
  auto gens = subgroup_image_generators(torus.map.source, A, pi1);
  REQUIRE(gens.size() == 1);

  AbelianizedPresentationOracle oracle(pi1.presentation);
  auto img = oracle.image(gens[0]);
  int nonzero = 0;
  for (const Integer& x : img) {
    if (x != 0) ++nonzero;
    REQUIRE(abs(x) <= 1);
  }
  REQUIRE(nonzero == 1);
}

TEST_CASE("disconnected subcomplex is rejected") {
  BuiltComplex fig8 = figure_eight(3);
  Pi1Data pi1 = pi1_presentation(fig8.complex, 0);
  std::set<VertexId> two_points{1, 3};
  BasedSubcomplex A{full_subcomplex(fig8.complex, two_points), 1};
  REQUIRE_THROWS_AS(subgroup_image_generators(fig8.complex, A, pi1),
                    DisconnectedSubcomplexError);
}
