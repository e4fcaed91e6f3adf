#pragma once

#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "volent/cover.hpp"
#include "volent/errors.hpp"
#include "volent/metric_complex.hpp"
#include "volent/parallel.hpp"
#include "volent/path_metric.hpp"
#include "volent/simplicial_map.hpp"

namespace volent {

struct PieceDiameter {
  VertexId label;  // target vertex (map witness) or piece index (cover witness)
  double diameter;
  std::optional<Rational> exact;  // set when the exact path produced a rational
};

/// Upper bound certificate for the Urysohn q-width: a witness map or cover
/// together with the per-fiber (or per-piece) diameter estimates whose
/// maximum is the bound.
struct WidthCertificate {
  int q = 0;
  double bound = 0;
  std::optional<Rational> exact_bound;
  std::vector<PieceDiameter> pieces;
  std::string witness_kind;  // "map" or "cover"
};

/// Width bound from a simplicial map onto a complex of dimension at most q:
/// the maximum fiber diameter estimate. Fibers must be connected (apply
/// connectify first).
inline WidthCertificate width_from_map(const MetricComplex& M,
                                       const SimplicialMap& pi, int q,
                                       int depth) {
  if (pi.target.dim() > q)
    throw ParameterOutOfRangeError("width: target dimension " +
                                   std::to_string(pi.target.dim()) + " > q=" +
                                   std::to_string(q));
  WidthCertificate cert;
  cert.q = q;
  cert.witness_kind = "map";
  bool all_exact = M.has_exact() && depth == 0;
  for (VertexId p : pi.target.vertices()) {
    BasedSubcomplex F = fiber(pi, p);
    if (!F.is_connected())
      throw FiberDisconnectedError("width: fiber over " + std::to_string(p) +
                                   " disconnected; connectify first");
    PieceDiameter entry{p, 0.0, std::nullopt};
    if (M.has_exact() && depth == 0) {
      CollapseLength d = path_diameter_exact(M, F);
      entry.diameter = d.value();
      if (d.b == 0) entry.exact = d.a;
      else all_exact = false;
    } else {
      entry.diameter = path_diameter(M, F, depth);
      all_exact = false;
    }
    cert.pieces.push_back(entry);
  }
  for (const auto& e : cert.pieces) cert.bound = std::max(cert.bound, e.diameter);
  if (all_exact) {
    Rational best(0);
    for (const auto& e : cert.pieces)
      if (*e.exact > best) best = *e.exact;
    cert.exact_bound = best;
  }
  return cert;
}

/// Width bound from a cover of multiplicity at most q+1: the maximum
/// per-piece diameter estimate. The cover and the metric are subdivided
/// together, so each piece's vertex set samples its open star-union region
/// (a deeper subdivision sees more of the open set).
inline WidthCertificate width_from_cover(const MetricComplex& M, const Cover& C,
                                         int q, int depth) {
  int mult = C.multiplicity();
  if (mult > q + 1)
    throw MultiplicityTooHighError("width: cover multiplicity " +
                                   std::to_string(mult) + " > q+1=" +
                                   std::to_string(q + 1));
  Cover Cd = depth > 0 ? subdivide_cover(C, depth) : C;
  SubdividedMetric S = subdivide_metric(M, depth);

  WidthCertificate cert;
  cert.q = q;
  cert.witness_kind = "cover";
  for (size_t i = 0; i < Cd.pieces.size(); ++i) {
    std::set<VertexId> verts(Cd.pieces[i].begin(), Cd.pieces[i].end());
    BasedSubcomplex piece{full_subcomplex(S.metric.complex(), verts),
                          *verts.begin()};
    PieceDiameter entry{static_cast<VertexId>(i), 0.0, std::nullopt};
    entry.diameter = path_diameter(S.metric, piece, 0);
    cert.pieces.push_back(entry);
  }
  for (const auto& e : cert.pieces) cert.bound = std::max(cert.bound, e.diameter);
  return cert;
}

struct BallVolumeReport {
  bool pass = false;
  double R = 0;
  double c_m = 0;
  double threshold = 0;  // c_m * R^m
  VertexId worst_center = 0;
  double worst_ball_volume = 0;
};

/// Ball-volume width criterion: scans every vertex of the depth-subdivided
/// complex, sums the volumes of the top subdivided simplices meeting the
/// graph ball of radius R around it, and passes iff every such sum is at most
/// C_m R^m. A passing report records the conclusion UW <= R; the constant C_m
/// is a caller-supplied parameter.
inline BallVolumeReport ball_volume_criterion(const MetricComplex& M, double R,
                                              double c_m, int depth) {
  if (R <= 0 || c_m <= 0)
    throw ParameterOutOfRangeError("ball criterion: R and C_m must be positive");
  SubdividedMetric S = subdivide_metric(M, depth);
  const SimplicialComplex& X = S.metric.complex();
  const int m = X.dim();

  BallVolumeReport report;
  report.R = R;
  report.c_m = c_m;
  report.threshold = c_m * std::pow(R, m);
  report.worst_ball_volume = -1;

  auto tops = X.top_simplices();
  std::vector<double> top_volume(tops.size());
  for (size_t i = 0; i < tops.size(); ++i)
    top_volume[i] = simplex_volume(S.metric, tops[i]);

  // Ball scans are independent per center; sums land in per-center slots and
  // the worst ball is picked serially, so the result does not depend on the
  // worker count.
  const auto& centers = X.vertices();
  std::vector<double> ball_volume(centers.size());
  parallel_for(centers.size(), [&](size_t c) {
    auto dist = detail::graph_distances(S.metric, centers[c]);
    double sum = 0;
    for (size_t i = 0; i < tops.size(); ++i) {
      bool meets = false;
      for (VertexId v : tops[i]) {
        auto it = dist.find(v);
        if (it != dist.end() && it->second <= R + 1e-12) {
          meets = true;
          break;
        }
      }
      if (meets) sum += top_volume[i];
    }
    ball_volume[c] = sum;
  });
  for (size_t c = 0; c < centers.size(); ++c)
    if (ball_volume[c] > report.worst_ball_volume) {
      report.worst_ball_volume = ball_volume[c];
      report.worst_center = centers[c];
    }
  report.pass = report.worst_ball_volume <= report.threshold;
  return report;
}

}  // namespace volent
