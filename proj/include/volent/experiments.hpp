#pragma once

#include <cmath>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "volent/ball_census.hpp"
#include "volent/builders.hpp"
#include "volent/dehn.hpp"
#include "volent/errors.hpp"
#include "volent/grigorchuk.hpp"
#include "volent/group_oracle.hpp"
#include "volent/io.hpp"
#include "volent/loop_census.hpp"
#include "volent/metric_complex.hpp"
#include "volent/parallel.hpp"
#include "volent/path_metric.hpp"
#include "volent/pi1.hpp"
#include "volent/width.hpp"

namespace volent {

/// Oracle construction by name. "abelianized" requires the presentation of
/// the space under study (sound for abelian fundamental groups); "free"
/// defaults its rank to the presentation rank when one is supplied.
inline std::shared_ptr<GroupOracle> make_oracle(const Json& spec,
                                                const Presentation* pi1_pres,
                                                const std::string& config_path) {
  const std::string name = spec.at("name").get<std::string>();
  if (name == "free") {
    size_t rank = spec.contains("rank") ? spec["rank"].get<size_t>()
                                        : (pi1_pres ? pi1_pres->rank() : 0);
    if (pi1_pres && !pi1_pres->relators.empty())
      throw OracleMismatchError("free oracle requested but presentation has relators");
    return std::make_shared<FreeOracle>(rank);
  }
  if (name == "abelian") {
    size_t rank = spec.contains("rank") ? spec["rank"].get<size_t>()
                                        : (pi1_pres ? pi1_pres->rank() : 0);
    return std::make_shared<AbelianOracle>(rank);
  }
  if (name == "abelianized") {
    if (!pi1_pres)
      throw ParameterOutOfRangeError("abelianized oracle needs a presentation");
    return std::make_shared<AbelianizedPresentationOracle>(*pi1_pres);
  }
  if (name == "grigorchuk") return std::make_shared<GrigorchukOracle>();
  if (name == "grigorchuk_tree")
    return std::make_shared<GrigorchukTreeOracle>(spec.value("level", 12));
  if (name == "dehn") {
    Presentation P;
    if (spec.contains("presentation"))
      P = load_presentation(
          resolve_path(config_path, spec["presentation"].get<std::string>()));
    else if (spec.contains("surface_genus"))
      P = surface_presentation(spec["surface_genus"].get<int>());
    else if (spec.contains("glued_surface"))
      P = glued_surface_presentation(spec["glued_surface"][0].get<int>(),
                                     spec["glued_surface"][1].get<int>());
    else if (pi1_pres)
      P = *pi1_pres;
    else
      throw ParameterOutOfRangeError("dehn oracle needs a presentation");
    Rational lambda = spec.contains("lambda")
                          ? parse_rational(spec["lambda"].get<std::string>())
                          : Rational(1, 6);
    return std::make_shared<DehnOracle>(P, lambda);
  }
  throw ParameterOutOfRangeError("unknown oracle '" + name + "'");
}

struct ExperimentConfig {
  std::string path;  // config file location, for relative references
  std::string map_file;
  std::string complex_file;
  Json oracle_spec;
  std::vector<Rational> t_grid;
  std::vector<double> t_max;  // parallel to t_grid
  size_t threshold_count = 25;
  size_t max_states = 5'000'000;
  size_t max_elements = 5'000'000;
  int subdivision_depth = 0;
  double c_m = 1.0;
  double bound_nu = 0.5;
  double bound_a = 1.0;
  double ratio_threshold = 0.25;
  double fit_tolerance = 0.05;
  int fiber_census_radius = 8;
  int subgroup_census_radius = 10;
  std::optional<VertexId> basepoint;
  Json subcomplex_spec;  // lower-bound experiment: U
  std::string metric_kind = "collapse";  // "collapse" | "unit" | "file"
  std::string out_dir = ".";
  unsigned long long seed = 0;

  static ExperimentConfig load(const std::string& path) {
    Json j = load_json(path);
    ExperimentConfig cfg;
    cfg.path = path;
    if (j.contains("map")) cfg.map_file = resolve_path(path, j["map"].get<std::string>());
    if (j.contains("complex"))
      cfg.complex_file = resolve_path(path, j["complex"].get<std::string>());
    cfg.oracle_spec = j.value("oracle", Json{{"name", "abelianized"}});
    if (j.contains("t_grid"))
      for (const auto& s : j["t_grid"])
        cfg.t_grid.push_back(parse_rational(s.get<std::string>()));
    for (size_t i = 1; i < cfg.t_grid.size(); ++i)
      if (!(cfg.t_grid[i] < cfg.t_grid[i - 1]))
        throw ParameterOutOfRangeError("config: t_grid must be strictly decreasing");
    if (j.contains("T_max")) {
      if (j["T_max"].is_array())
        cfg.t_max = j["T_max"].get<std::vector<double>>();
      else
        cfg.t_max.assign(std::max<size_t>(cfg.t_grid.size(), 1),
                         j["T_max"].get<double>());
      if (!cfg.t_grid.empty() && cfg.t_max.size() != cfg.t_grid.size())
        throw ParameterOutOfRangeError("config: T_max list length != t_grid length");
      for (double T : cfg.t_max)
        if (T <= 0) throw ParameterOutOfRangeError("config: T_max must be positive");
    }
    cfg.threshold_count = j.value("thresholds", 25);
    if (j.contains("budget")) {
      cfg.max_states = j["budget"].value("max_states", cfg.max_states);
      cfg.max_elements = j["budget"].value("max_elements", cfg.max_elements);
      if (cfg.max_states == 0 || cfg.max_elements == 0)
        throw ParameterOutOfRangeError("config: budgets must be positive");
    }
    cfg.subdivision_depth = j.value("subdivision_depth", 0);
    cfg.c_m = j.value("C_m", 1.0);
    cfg.bound_nu = j.value("nu", 0.5);
    cfg.bound_a = j.value("A", 1.0);
    cfg.ratio_threshold = j.value("ratio_threshold", 0.25);
    cfg.fit_tolerance = j.value("fit_tolerance", 0.05);
    cfg.fiber_census_radius = j.value("fiber_census_radius", 8);
    cfg.subgroup_census_radius = j.value("subgroup_census_radius", 10);
    if (j.contains("basepoint")) cfg.basepoint = j["basepoint"].get<VertexId>();
    if (j.contains("subcomplex")) cfg.subcomplex_spec = j["subcomplex"];
    cfg.metric_kind = j.value("metric", "collapse");
    cfg.out_dir = j.contains("out_dir")
                      ? resolve_path(path, j["out_dir"].get<std::string>())
                      : std::filesystem::path(path).parent_path().string();
    cfg.seed = j.value("seed", 0ull);
    return cfg;
  }
};

struct FiberDiagnostic {
  VertexId target_vertex;
  VertexId component_basepoint;
  size_t generator_count;
  double ent_estimate = 0;
  double nu_estimate = 0;
  bool q_dominated = true;  // fiber census <= A exp(T^nu) on the checked range
};

struct CollapseRow {
  Rational t;
  double vol = 0;
  double vol_root = 0;
  double ent_e = 0;
  double product = 0;
  double entropy_bound = 0;  // log(2 n_e A) + 2/t^nu
  bool census_exact = true;
  std::vector<double> thresholds;
  std::vector<unsigned long long> counts;
};

struct CollapseResult {
  std::vector<CollapseRow> rows;
  std::vector<FiberDiagnostic> fiber_diagnostics;
  bool fibers_certified = true;   // Q(T) dominates every fiber census
  bool census_bounded = true;     // every N_e(t,T) <= analytic census bound
  std::string verdict;            // "collapsing" | "no-collapse" | "inconclusive"
  double final_initial_ratio = 0;
  int dimension = 0;
  size_t edge_count = 0;
};

/// Theorem-level collapse pipeline: per grid point build the collapse metric,
/// measure volume and edge-loop entropy, and append the trend verdict. The
/// verdict is a finite-size trend check (monotone tail, ratio threshold),
/// never a claim about the limit.
inline CollapseResult collapse_experiment(const ExperimentConfig& cfg) {
  if (cfg.map_file.empty())
    throw ParameterOutOfRangeError("collapse: config needs 'map'");
  if (cfg.t_grid.empty())
    throw ParameterOutOfRangeError("collapse: config needs 't_grid'");
  SimplicialMap pi = load_map(cfg.map_file);
  const SimplicialComplex& X = pi.source;
  const VertexId basepoint =
      cfg.basepoint ? *cfg.basepoint : X.vertices().front();
  Pi1Data pi1 = pi1_presentation(X, basepoint);
  auto oracle = make_oracle(cfg.oracle_spec, &pi1.presentation, cfg.path);

  CollapseResult result;
  result.dimension = X.dim();
  result.edge_count = X.count_of_dim(1);
  const double n_e = static_cast<double>(result.edge_count);

  // Fiber condition diagnostics + Q-domination certification at g_1.
  MetricComplex m1 = collapse_embedding(pi, Rational(1));
  double max_fiber_T = 1;
  for (size_t i = 0; i < cfg.t_grid.size(); ++i)
    max_fiber_T = std::max(max_fiber_T,
                           (cfg.t_max[i] + 1.0) / to_double(cfg.t_grid[i]));
  for (VertexId p : pi.target.vertices()) {
    std::set<VertexId> verts = pi.fiber_vertices(p);
    if (verts.empty()) continue;
    for (const BasedSubcomplex& comp :
         connected_components(full_subcomplex(X, verts))) {
      FiberDiagnostic diag;
      diag.target_vertex = p;
      diag.component_basepoint = comp.basepoint;
      auto gens = subgroup_image_generators(X, comp, pi1);
      diag.generator_count = gens.size();
      if (!gens.empty()) {
        WordSubstitutionOracle sub(oracle, gens);
        BallCensus census =
            ball_census(sub, cfg.fiber_census_radius, {cfg.max_elements});
        if (census.complete && census.radius() >= 4) {
          GrowthEstimate est = growth_estimates(census);
          diag.ent_estimate = est.ent_estimate;
          diag.nu_estimate = est.nu_estimate;
        }
      }
      // eq-Q style domination check of the fiber loop census at g_1 against
      // A exp(T^nu) over the threshold range the bound will be used on.
      std::vector<double> fiber_thresholds;
      int steps = std::min(64, static_cast<int>(std::ceil(max_fiber_T)));
      for (int k = 1; k <= steps; ++k)
        fiber_thresholds.push_back(max_fiber_T * k / steps);
      LoopCensus fc = subcomplex_loop_census(m1, comp, pi1, *oracle,
                                             fiber_thresholds, {cfg.max_states});
      for (size_t k = 0; k < fc.thresholds.size(); ++k) {
        double q = cfg.bound_a *
                   std::exp(std::pow(fc.thresholds[k], cfg.bound_nu));
        if (static_cast<double>(fc.counts[k]) > q) diag.q_dominated = false;
      }
      if (!fc.exact) diag.q_dominated = false;
      if (!diag.q_dominated) result.fibers_certified = false;
      result.fiber_diagnostics.push_back(diag);
    }
  }

  // Grid sweep, parallel over grid points with deterministic slots.
  result.rows.resize(cfg.t_grid.size());
  parallel_for(cfg.t_grid.size(), [&](size_t i) {
    const Rational& t = cfg.t_grid[i];
    CollapseRow row;
    row.t = t;
    MetricComplex M = collapse_embedding(pi, t);
    VolumeReport vol = total_volume(M);
    row.vol = vol.total;
    row.vol_root = std::pow(vol.total, 1.0 / X.dim());
    std::vector<double> thresholds;
    for (size_t k = 0; k < cfg.threshold_count; ++k)
      thresholds.push_back(cfg.t_max[i] * static_cast<double>(k) /
                           static_cast<double>(cfg.threshold_count - 1));
    LoopCensus census =
        loop_census(M, pi1, *oracle, thresholds, {cfg.max_states});
    row.census_exact = census.exact;
    row.thresholds = census.thresholds;
    row.counts = census.counts;
    row.ent_e = estimate_edge_entropy(census).ent_e_estimate;
    row.product = row.ent_e * row.vol_root;
    row.entropy_bound =
        analytic_entropy_bound(to_double(t), cfg.bound_nu, cfg.bound_a, n_e);
    result.rows[i] = std::move(row);
  });

  // Census-bound check across the measured grid (in log space).
  for (const CollapseRow& row : result.rows)
    for (size_t k = 0; k < row.thresholds.size(); ++k) {
      if (row.thresholds[k] <= 0 || row.counts[k] == 0) continue;
      double log_bound =
          analytic_census_log_bound(row.thresholds[k], to_double(row.t),
                                    cfg.bound_nu, cfg.bound_a, n_e);
      if (std::log(static_cast<double>(row.counts[k])) > log_bound)
        result.census_bounded = false;
    }

  bool inconclusive = false;
  for (const CollapseRow& row : result.rows)
    if (!row.census_exact) inconclusive = true;

  const size_t n = result.rows.size();
  bool tail_decreasing = true;
  for (size_t i = n - std::min<size_t>(4, n); i + 1 < n; ++i)
    if (!(result.rows[i + 1].product < result.rows[i].product))
      tail_decreasing = false;
  result.final_initial_ratio =
      result.rows.front().product > 0
          ? result.rows.back().product / result.rows.front().product
          : 0;

  if (inconclusive)
    result.verdict = "inconclusive";
  else if (tail_decreasing && result.final_initial_ratio < cfg.ratio_threshold)
    result.verdict = "collapsing";
  else
    result.verdict = "no-collapse";
  return result;
}

inline void write_collapse_csv(const std::string& path,
                               const CollapseResult& result) {
  CsvWriter csv(path);
  csv.comment("collapse experiment");
  csv.comment("provenance: t=input, vol=measured, vol_root=measured, "
              "ent_e=measured, product=measured, bound=analytic-bound");
  csv.comment("verdict: " + result.verdict + " (trend check, not a limit)");
  csv.row({"t", "vol", "vol_root", "ent_e", "product", "bound"});
  for (const CollapseRow& row : result.rows)
    csv.row({rational_to_string(row.t), format_double(row.vol),
             format_double(row.vol_root), format_double(row.ent_e),
             format_double(row.product), format_double(row.entropy_bound)});
}

struct LowerBoundResult {
  double diameter = 0;
  double ent_gamma = 0;
  size_t gamma_generators = 0;
  double lower_bound = 0;
  double measured_ent_e = 0;
  bool sound = true;  // lower_bound <= measured + fit tolerance
};

/// Certified entropy lower bound ent(X,g) >= ent(Gamma_U)/(2 diam U) for a
/// designated subcomplex U, compared against the measured edge-loop entropy
/// as a soundness check of the whole stack.
inline LowerBoundResult lower_bound_experiment(const ExperimentConfig& cfg) {
  SimplicialComplex X;
  std::optional<MetricComplex> metric;
  std::optional<SimplicialMap> pi;
  if (!cfg.map_file.empty()) {
    pi = load_map(cfg.map_file);
    X = pi->source;
  } else if (!cfg.complex_file.empty()) {
    LoadedComplex loaded = load_complex(cfg.complex_file);
    X = loaded.complex;
    metric = loaded.metric;
  } else {
    throw ParameterOutOfRangeError("lowerbound: config needs 'map' or 'complex'");
  }

  if (!metric) {
    if (cfg.metric_kind == "unit" || !pi) {
      metric = unit_embedding(X);
    } else {
      Rational t = cfg.t_grid.empty() ? Rational(1) : cfg.t_grid.front();
      metric = collapse_embedding(*pi, t);
    }
  }

  const VertexId basepoint =
      cfg.basepoint ? *cfg.basepoint : X.vertices().front();
  Pi1Data pi1 = pi1_presentation(X, basepoint);
  auto oracle = make_oracle(cfg.oracle_spec, &pi1.presentation, cfg.path);

  // The designated subcomplex U.
  BasedSubcomplex U{std::set<Simplex>(X.simplices()), basepoint};
  if (cfg.subcomplex_spec.is_object()) {
    if (cfg.subcomplex_spec.contains("fiber")) {
      if (!pi) throw ParameterOutOfRangeError("lowerbound: fiber U needs a map");
      U = fiber(*pi, cfg.subcomplex_spec["fiber"].get<VertexId>());
    } else if (cfg.subcomplex_spec.contains("vertices")) {
      auto vs = cfg.subcomplex_spec["vertices"].get<std::vector<VertexId>>();
      std::set<VertexId> verts(vs.begin(), vs.end());
      U = BasedSubcomplex{full_subcomplex(X, verts), *verts.begin()};
    }
  }

  LowerBoundResult result;
  result.diameter = path_diameter(*metric, U, cfg.subdivision_depth);

  auto gens = subgroup_image_generators(X, U, pi1);
  result.gamma_generators = gens.size();
  if (!gens.empty()) {
    WordSubstitutionOracle sub(oracle, gens);
    BallCensus census =
        ball_census(sub, cfg.subgroup_census_radius, {cfg.max_elements});
    if (!census.complete)
      throw BudgetExceededError("lowerbound: subgroup census budget exhausted");
    result.ent_gamma = growth_estimates(census).ent_estimate;
  }
  result.lower_bound = result.diameter > 0
                           ? diam_entropy_lower_bound(result.diameter, result.ent_gamma)
                           : 0.0;

  const double t_max = cfg.t_max.empty() ? 12.0 : cfg.t_max.front();
  std::vector<double> thresholds;
  for (size_t k = 0; k < cfg.threshold_count; ++k)
    thresholds.push_back(t_max * static_cast<double>(k) /
                         static_cast<double>(cfg.threshold_count - 1));
  LoopCensus census = loop_census(*metric, pi1, *oracle, thresholds,
                                  {cfg.max_states});
  result.measured_ent_e = estimate_edge_entropy(census).ent_e_estimate;
  result.sound = result.lower_bound <= result.measured_ent_e + cfg.fit_tolerance;
  return result;
}

inline void write_lower_bound_report(const std::string& path,
                                     const LowerBoundResult& r) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write " + path);
  out << "lower-bound experiment\n";
  out << "diam_estimate(U) [measured]: " << format_double(r.diameter) << "\n";
  out << "ent(Gamma_U) estimate [measured]: " << format_double(r.ent_gamma)
      << " (" << r.gamma_generators << " generators)\n";
  out << "certified lower bound ent >= ent(Gamma_U)/(2 diam) [derived]: "
      << format_double(r.lower_bound) << "\n";
  out << "measured ent_e [measured]: " << format_double(r.measured_ent_e) << "\n";
  out << "soundness (bound <= measured + tol): " << (r.sound ? "pass" : "FAIL")
      << "\n";
}

}  // namespace volent
