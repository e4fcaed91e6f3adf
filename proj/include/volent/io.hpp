#pragma once

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "volent/cover.hpp"
#include "volent/errors.hpp"
#include "volent/metric_complex.hpp"
#include "volent/presentation.hpp"
#include "volent/rational.hpp"
#include "volent/simplicial_complex.hpp"
#include "volent/simplicial_map.hpp"

namespace volent {

using Json = nlohmann::json;

inline Json load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path);
  Json j;
  try {
    in >> j;
  } catch (const Json::exception& e) {
    throw IoError("parse error in " + path + ": " + e.what());
  }
  return j;
}

inline void save_json(const std::string& path, const Json& j) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write " + path);
  out << j.dump(2) << "\n";
}

/// Resolves `ref` relative to the directory of `from` unless absolute.
inline std::string resolve_path(const std::string& from, const std::string& ref) {
  std::filesystem::path p(ref);
  if (p.is_absolute()) return ref;
  return (std::filesystem::path(from).parent_path() / p).string();
}

inline std::string format_double(double x) {
  char buffer[64];
  std::snprintf(buffer, sizeof(buffer), "%.12g", x);
  return buffer;
}

struct LoadedComplex {
  SimplicialComplex complex;
  std::optional<MetricComplex> metric;
  std::map<VertexId, std::string> labels;
};

inline SimplicialMap load_map(const std::string& path);

/// Complex file: {"vertices": [...], "simplices": [[...], ...],
/// "labels": {...}?, "metric": {"coords": {...}} | {"collapse": {"map": f,
/// "t": "1/4"}}?}. The face closure is computed on load; listed vertices are
/// checked against the closure.
inline LoadedComplex load_complex(const std::string& path) {
  Json j = load_json(path);
  if (!j.contains("simplices")) throw IoError(path + ": missing 'simplices'");
  std::vector<Simplex> raw;
  for (const auto& s : j["simplices"]) raw.push_back(s.get<Simplex>());
  LoadedComplex out;
  out.complex = SimplicialComplex::from_simplices(raw);

  if (j.contains("vertices")) {
    std::vector<VertexId> listed = j["vertices"].get<std::vector<VertexId>>();
    std::sort(listed.begin(), listed.end());
    if (listed != out.complex.vertices())
      throw IoError(path + ": vertex list disagrees with simplices");
  }
  if (j.contains("labels"))
    for (const auto& [key, value] : j["labels"].items())
      out.labels[std::stoi(key)] = value.get<std::string>();

  if (j.contains("metric")) {
    const Json& m = j["metric"];
    if (m.contains("coords")) {
      std::vector<std::vector<double>> coords(out.complex.vertices().size());
      for (const auto& [key, value] : m["coords"].items()) {
        VertexId v = std::stoi(key);
        coords[out.complex.vertex_index(v)] = value.get<std::vector<double>>();
      }
      out.metric = MetricComplex(out.complex, std::move(coords));
    } else if (m.contains("collapse")) {
      const Json& c = m["collapse"];
      SimplicialMap pi = load_map(resolve_path(path, c.at("map").get<std::string>()));
      Rational t = parse_rational(c.at("t").get<std::string>());
      out.metric = collapse_embedding(pi, t);
    } else {
      throw IoError(path + ": metric needs 'coords' or 'collapse'");
    }
  }
  return out;
}

inline void save_complex(const std::string& path, const SimplicialComplex& X,
                         const std::map<VertexId, std::string>& labels = {}) {
  Json j;
  j["vertices"] = X.vertices();
  Json tops = Json::array();
  // Save maximal simplices only; closure is recomputed on load.
  for (const Simplex& s : X.simplices()) {
    bool maximal = true;
    for (const Simplex& s2 : X.simplices())
      if (s.size() < s2.size() &&
          std::includes(s2.begin(), s2.end(), s.begin(), s.end())) {
        maximal = false;
        break;
      }
    if (maximal) tops.push_back(s);
  }
  j["simplices"] = tops;
  if (!labels.empty()) {
    Json l = Json::object();
    for (const auto& [v, text] : labels) l[std::to_string(v)] = text;
    j["labels"] = l;
  }
  save_json(path, j);
}

/// Map file: {"map": {"source": f, "target": f, "vertex_map": {"v": p, ...}}}.
inline SimplicialMap load_map(const std::string& path) {
  Json j = load_json(path);
  if (!j.contains("map")) throw IoError(path + ": missing 'map'");
  const Json& m = j["map"];
  LoadedComplex source = load_complex(resolve_path(path, m.at("source").get<std::string>()));
  LoadedComplex target = load_complex(resolve_path(path, m.at("target").get<std::string>()));
  std::map<VertexId, VertexId> f;
  for (const auto& [key, value] : m.at("vertex_map").items())
    f[std::stoi(key)] = value.get<VertexId>();
  return check_simplicial(source.complex, target.complex, f);
}

inline void save_map(const std::string& path, const std::string& source_file,
                     const std::string& target_file,
                     const std::map<VertexId, VertexId>& vertex_map) {
  Json vm = Json::object();
  for (const auto& [v, p] : vertex_map) vm[std::to_string(v)] = p;
  Json j;
  j["map"] = {{"source", source_file}, {"target", target_file}, {"vertex_map", vm}};
  save_json(path, j);
}

/// Cover file: {"ambient": f, "depth": d, "pieces": [[...], ...],
/// "basepoints": [...]?}.
inline Cover load_cover(const std::string& path) {
  Json j = load_json(path);
  Cover C;
  C.ambient = load_complex(resolve_path(path, j.at("ambient").get<std::string>())).complex;
  C.depth = j.value("depth", 0);
  for (const auto& piece : j.at("pieces")) {
    auto verts = piece.get<std::vector<VertexId>>();
    std::sort(verts.begin(), verts.end());
    C.pieces.push_back(verts);
  }
  if (j.contains("basepoints"))
    C.piece_basepoints = j["basepoints"].get<std::vector<VertexId>>();
  else
    for (const auto& piece : C.pieces) C.piece_basepoints.push_back(piece.front());
  C.validate();
  return C;
}

inline void save_cover(const std::string& path, const Cover& C,
                       const std::string& ambient_file) {
  Json j;
  j["ambient"] = ambient_file;
  j["depth"] = C.depth;
  j["pieces"] = C.pieces;
  j["basepoints"] = C.piece_basepoints;
  save_json(path, j);
}

/// Presentation file: {"generators": ["a", ...], "relators": [[1,2,-1,-2], ...]}.
inline Presentation load_presentation(const std::string& path) {
  Json j = load_json(path);
  Presentation P;
  P.generators = j.at("generators").get<std::vector<std::string>>();
  for (const auto& r : j.at("relators")) P.relators.push_back(r.get<Word>());
  P.validate();
  return P;
}

inline void save_presentation(const std::string& path, const Presentation& P) {
  Json j;
  j["generators"] = P.generators;
  j["relators"] = P.relators;
  save_json(path, j);
}

/// CSV writer with '#'-prefixed metadata lines (column provenance etc.).
class CsvWriter {
 public:
  explicit CsvWriter(const std::string& path) : out_(path) {
    if (!out_) throw IoError("cannot write " + path);
  }
  void comment(const std::string& text) { out_ << "# " << text << "\n"; }
  void row(const std::vector<std::string>& cells) {
    for (size_t i = 0; i < cells.size(); ++i)
      out_ << (i ? "," : "") << cells[i];
    out_ << "\n";
  }

 private:
  std::ofstream out_;
};

}  // namespace volent
