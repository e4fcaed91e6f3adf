#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "volent/builders.hpp"
#include "volent/fit.hpp"
#include "volent/metric_complex.hpp"
#include "volent/path_metric.hpp"

using namespace volent;

namespace {

// Independent volume oracle: Cayley-Menger determinant from squared edge
// lengths alone. vol^2 = (-1)^{p+1} det(CM) / (2^p (p!)^2).
double cayley_menger_volume(const std::vector<std::vector<double>>& points) {
  const size_t n = points.size();
  const int p = static_cast<int>(n) - 1;
  std::vector<std::vector<double>> cm(n + 1, std::vector<double>(n + 1, 1.0));
  cm[0][0] = 0.0;
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j) {
      double d = 0;
      for (size_t k = 0; k < points[i].size(); ++k)
        d += (points[i][k] - points[j][k]) * (points[i][k] - points[j][k]);
      cm[i + 1][j + 1] = d;
    }
  double det = detail::determinant(cm);
  double denom = std::pow(2.0, p);
  double pf = 1;
  for (int i = 2; i <= p; ++i) pf *= i;
  double sq = ((p % 2 == 0) ? -1.0 : 1.0) * det / (denom * pf * pf);
  return std::sqrt(std::max(0.0, sq));
}

double heron_area(double a, double b, double c) {
  double s = (a + b + c) / 2;
  return std::sqrt(s * (s - a) * (s - b) * (s - c));
}

}  // namespace

TEST_CASE("collapse embedding edge dichotomy, exact and floating") {
  BuiltMap torus = torus_grid(3);
  for (const Rational& t : {Rational(1, 4), Rational(1, 2), Rational(1)}) {
    MetricComplex M = collapse_embedding(torus.map, t);
    const double td = to_double(t);
    const double lt = std::sqrt(1.0 + td * td);
    for (const Simplex& e : M.complex().edges()) {
      Rational exact = M.exact_edge_length_sq(e[0], e[1]);
      bool is_short = exact == t * t;
      bool is_long = exact == 1 + t * t;
      REQUIRE((is_short || is_long));
      double len = M.edge_length(e[0], e[1]);
      if (is_short)
        REQUIRE(std::fabs(len - td) < 1e-12);
      else
        REQUIRE(std::fabs(len - lt) < 1e-12);
    }
  }
}

TEST_CASE("collapse embedding at t = 1/4 on the torus") {
  BuiltMap torus = torus_grid(3);
  MetricComplex M = collapse_embedding(torus.map, Rational(1, 4));
  // Fiber edge inside column 0 and a cross edge.
  REQUIRE(std::fabs(M.edge_length(0, 1) - 0.25) < 1e-12);
  REQUIRE(std::fabs(M.edge_length(0, 3) - std::sqrt(1.0 + 1.0 / 16.0)) < 1e-12);
  REQUIRE(std::fabs(M.edge_length(0, 3) - 1.03078) < 1e-5);
}

TEST_CASE("identity map gives singleton fibers and only long edges") {
  SimplicialComplex cycle = cycle_complex(3);
  std::map<VertexId, VertexId> id{{0, 0}, {1, 1}, {2, 2}};
  SimplicialMap pi = check_simplicial(cycle, cycle, id);
  MetricComplex M = collapse_embedding(pi, Rational(1, 3));
  for (const Simplex& e : M.complex().edges())
    REQUIRE(M.exact_edge_length_sq(e[0], e[1]) == Rational(1) + Rational(1, 9));
}

TEST_CASE("t = 1 gives simplex diameters at most sqrt(2)") {
  BuiltMap torus = torus_grid(3);
  MetricComplex M = collapse_embedding(torus.map, Rational(1));
  for (const Simplex& s : M.complex().top_simplices())
    for (size_t i = 0; i < s.size(); ++i)
      for (size_t j = i + 1; j < s.size(); ++j)
        REQUIRE(M.edge_length(s[i], s[j]) <= std::sqrt(2.0) + 1e-12);
}

TEST_CASE("t out of range is rejected") {
  BuiltMap torus = torus_grid(3);
  REQUIRE_THROWS_AS(collapse_embedding(torus.map, Rational(0)), TOutOfRangeError);
  REQUIRE_THROWS_AS(collapse_embedding(torus.map, Rational(3, 2)), TOutOfRangeError);
}

TEST_CASE("unit equilateral triangle area") {
  SimplicialComplex tri = validate_complex({{0, 1, 2}});
  MetricComplex M(tri, {{0, 0}, {1, 0}, {0.5, std::sqrt(3.0) / 2}});
  REQUIRE(std::fabs(simplex_volume(M, {0, 1, 2}) - 0.43301270) < 1e-8);
}

TEST_CASE("regular unit tetrahedron volume") {
  SimplicialComplex tet = validate_complex({{0, 1, 2, 3}});
  MetricComplex M = unit_embedding(tet);  // vertices at e_k/sqrt(2)
  REQUIRE(std::fabs(simplex_volume(M, {0, 1, 2, 3}) - 0.11785113) < 1e-8);
  // Exact route: vol^2 = (p+1)/(p!^2 2^p) for the regular unit p-simplex.
  REQUIRE(exact_volume_sq(M, {0, 1, 2, 3}) == Rational(4) / (36 * 8));
}

TEST_CASE("degenerate simplex is rejected") {
  SimplicialComplex tri = validate_complex({{0, 1, 2}});
  MetricComplex M(tri, {{0, 0}, {1, 0}, {2, 0}});
  REQUIRE_THROWS_AS(simplex_volume(M, {0, 1, 2}), DegenerateSimplexError);
}

TEST_CASE("torus triangle area at t = 1/2 matches Heron and the exact form") {
  BuiltMap torus = torus_grid(3);
  MetricComplex M = collapse_embedding(torus.map, Rational(1, 2));
  Simplex tri{0, 3, 4};
  REQUIRE(M.complex().contains(tri));
  double gram = simplex_volume(M, tri);
  double heron = heron_area(M.edge_length(0, 3), M.edge_length(0, 4),
                            M.edge_length(3, 4));
  REQUIRE(std::fabs(gram - heron) < 1e-12);
  // Every torus triangle has area t sqrt(4 + 3 t^2) / 4.
  double expected = 0.5 * std::sqrt(4.0 + 3.0 * 0.25) / 4.0;
  REQUIRE(std::fabs(gram - expected) < 1e-12);
  REQUIRE(exact_volume_sq(M, tri) ==
          Rational(1, 4) * (4 + Rational(3, 4)) / 16);
}

TEST_CASE("gram volumes match Cayley-Menger on random simplices") {
  std::mt19937 rng(101);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  for (int p = 1; p <= 4; ++p) {
    for (int trial = 0; trial < 100; ++trial) {
      std::vector<std::vector<double>> points(p + 1, std::vector<double>(5));
      for (auto& x : points)
        for (double& c : x) c = unit(rng);
      Simplex s;
      for (int v = 0; v <= p; ++v) s.push_back(v);
      SimplicialComplex cx = validate_complex({s});
      double gram, cm;
      try {
        gram = simplex_volume(MetricComplex(cx, points), s);
      } catch (const DegenerateSimplexError&) {
        continue;  // nearly flat sample; the oracle comparison needs volume
      }
      cm = cayley_menger_volume(points);
      REQUIRE(std::fabs(gram - cm) <= 1e-9 * std::max(1.0, std::fabs(cm)));
    }
  }
}

TEST_CASE("torus total volume: exact per-triangle law and measured totals") {
  BuiltMap torus = torus_grid(3);
  for (const Rational& t : {Rational(1, 2), Rational(1, 4), Rational(1, 8)}) {
    MetricComplex M = collapse_embedding(torus.map, t);
    // Exact: every triangle has vol^2 = t^2 (4 + 3 t^2) / 16, so the scaling
    // law in t is sqrt(4+3t^2) * t / 4 per triangle, linear only in the
    // t -> 0 limit.
    Rational expected_sq = t * t * (4 + 3 * t * t) / 16;
    for (const Simplex& s : M.complex().top_simplices())
      REQUIRE(exact_volume_sq(M, s) == expected_sq);
    VolumeReport report = total_volume(M);
    double td = to_double(t);
    REQUIRE(std::fabs(report.total -
                      18.0 * td * std::sqrt(4.0 + 3.0 * td * td) / 4.0) < 1e-10);
    REQUIRE(report.per_simplex.size() == 18);
    double sum = 0;
    for (const auto& [s, v] : report.per_simplex) {
      REQUIRE(v >= 0);
      sum += v;
    }
    REQUIRE(std::fabs(sum - report.total) < 1e-12);
  }
}

TEST_CASE("torus volume log-log slope tends to 1 for small t") {
  BuiltMap torus = torus_grid(3);
  std::vector<double> xs, ys;
  for (int k = 6; k <= 10; ++k) {  // t = 2^-6 .. 2^-10
    Rational t(1, 1 << k);
    MetricComplex M = collapse_embedding(torus.map, t);
    xs.push_back(std::log(to_double(t)));
    ys.push_back(std::log(total_volume(M).total));
  }
  LineFit fit = fit_line(xs, ys);
  REQUIRE(std::fabs(fit.slope - 1.0) <= 0.001);
}

TEST_CASE("fiber distances scale exactly by t under the collapse family") {
  BuiltMap torus = torus_grid(3);
  std::set<VertexId> column{0, 1, 2};
  Rational t1(1, 2), t2(1, 8);
  MetricComplex M1 = collapse_embedding(torus.map, t1);
  MetricComplex M2 = collapse_embedding(torus.map, t2);
  BasedSubcomplex fiber{full_subcomplex(torus.map.source, column), 0};
  CollapseLength d1 = path_diameter_exact(M1, fiber);
  CollapseLength d2 = path_diameter_exact(M2, fiber);
  REQUIRE(d1.b == 0);
  REQUIRE(d2.b == 0);
  REQUIRE(d1.a * t2 == d2.a * t1);  // diam(g_t) = t * diam(g_1) on fibers
  REQUIRE(d1.a == t1);              // 3-cycle fiber: pairwise distance t
}

TEST_CASE("path diameter examples") {
  BuiltMap torus = torus_grid(3);
  MetricComplex M = collapse_embedding(torus.map, Rational(1, 4));
  std::set<VertexId> column{0, 1, 2};
  BasedSubcomplex fiber{full_subcomplex(torus.map.source, column), 0};
  REQUIRE(std::fabs(path_diameter(M, fiber, 0) - 0.25) < 1e-12);

  BasedSubcomplex point{{{0}}, 0};
  REQUIRE(path_diameter(M, point, 0) == 0.0);

  SimplicialComplex cycle = cycle_complex(3);
  MetricComplex unit = unit_embedding(cycle);
  BasedSubcomplex whole{std::set<Simplex>(cycle.simplices()), 0};
  REQUIRE(std::fabs(path_diameter(unit, whole, 0) - 1.0) < 1e-12);
}

TEST_CASE("path diameter is monotone nonincreasing in subdivision depth") {
  BuiltMap torus = torus_grid(3);
  MetricComplex M = collapse_embedding(torus.map, Rational(1, 2));
  std::set<VertexId> column{0, 1, 2};
  BasedSubcomplex fiber{full_subcomplex(torus.map.source, column), 0};
  double prev = path_diameter(M, fiber, 0);
  for (int depth = 1; depth <= 2; ++depth) {
    double cur = path_diameter(M, fiber, depth);
    REQUIRE(cur <= prev + 1e-12);
    prev = cur;
  }

  SimplicialComplex tri = validate_complex({{0, 1, 2}});
  MetricComplex unit = unit_embedding(tri);
  BasedSubcomplex whole{std::set<Simplex>(tri.simplices()), 0};
  double p0 = path_diameter(unit, whole, 0);
  double p1 = path_diameter(unit, whole, 1);
  double p2 = path_diameter(unit, whole, 2);
  REQUIRE(p1 <= p0 + 1e-12);
  REQUIRE(p2 <= p1 + 1e-12);
}

TEST_CASE("disconnected diameter reports an error") {
  SimplicialComplex two = validate_complex({{0, 1}, {2, 3}});
  MetricComplex M = unit_embedding(two);
  BasedSubcomplex both{std::set<Simplex>(two.simplices()), 0};
  REQUIRE_THROWS_AS(path_diameter(M, both, 0), DisconnectedError);
}
