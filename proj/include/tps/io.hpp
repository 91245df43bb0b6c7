#pragma once

#include <filesystem>
#include <fstream>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "tps/errors.hpp"
#include "tps/komega.hpp"
#include "tps/monotone_fn.hpp"
#include "tps/preorder.hpp"
#include "tps/rational.hpp"
#include "tps/separation.hpp"
#include "tps/topology.hpp"

namespace tps {

using nlohmann::json;

// ----- SpaceFile -----
// { "points": [...], "opens": [[...], ...] | "basis": [[...], ...],
//   "order": [["a","b"], ...] }
// Exactly one of "opens"/"basis"; "order" lists generator edges and may be
// empty or absent (reflexive order).

inline json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open '" + path + "'");
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw ParseError("invalid JSON in '" + path + "': " + e.what());
  }
}

inline std::vector<std::vector<std::string>> string_lists(const json& j, const char* what) {
  if (!j.is_array()) throw ParseError(std::string(what) + " must be an array of arrays");
  std::vector<std::vector<std::string>> out;
  for (const auto& item : j) {
    if (!item.is_array()) throw ParseError(std::string(what) + " must be an array of arrays");
    std::vector<std::string> inner;
    for (const auto& s : item) {
      if (!s.is_string()) throw ParseError(std::string(what) + " entries must be strings");
      inner.push_back(s.get<std::string>());
    }
    out.push_back(std::move(inner));
  }
  return out;
}

inline PreorderedSpace parse_space(const json& j) {
  if (!j.is_object()) throw ParseError("space file must be a JSON object");
  if (!j.contains("points")) throw ParseError("space file lacks \"points\"");
  std::vector<std::string> points;
  for (const auto& p : j.at("points")) {
    if (!p.is_string()) throw ParseError("points must be strings");
    points.push_back(p.get<std::string>());
  }
  const bool has_opens = j.contains("opens"), has_basis = j.contains("basis");
  if (has_opens == has_basis)
    throw ParseError("space file needs exactly one of \"opens\" or \"basis\"");

  if (points.size() > static_cast<size_t>(ambient_point_cap()))
    throw InvalidSpace("ambient space exceeds " + std::to_string(ambient_point_cap()) +
                       " points");

  FiniteTopology topo = [&] {
    if (has_basis) return make_topology(points, string_lists(j.at("basis"), "basis"));
    // Explicit families must already satisfy the topology invariants.
    std::map<std::string, int> idx;
    for (size_t i = 0; i < points.size(); ++i)
      if (!idx.emplace(points[i], static_cast<int>(i)).second)
        throw InvalidSpace("duplicate point '" + points[i] + "'");
    std::vector<PointSet> opens;
    for (const auto& names : string_lists(j.at("opens"), "opens")) {
      PointSet s;
      for (const auto& nm : names) {
        auto it = idx.find(nm);
        if (it == idx.end()) throw InvalidSpace("open set references unknown point '" + nm + "'");
        s.add(it->second);
      }
      opens.push_back(s);
    }
    return FiniteTopology(points, std::move(opens));
  }();

  std::vector<std::pair<std::string, std::string>> edges;
  if (j.contains("order")) {
    for (const auto& e : string_lists(j.at("order"), "order")) {
      if (e.size() != 2) throw ParseError("order edges must be 2-element lists");
      edges.emplace_back(e[0], e[1]);
    }
  }
  Preorder order = make_preorder(topo, edges);
  return PreorderedSpace(std::move(topo), std::move(order));
}

inline PreorderedSpace load_space(const std::string& path) {
  return parse_space(load_json_file(path));
}

inline json set_to_json(const FiniteTopology& t, const PointSet& s) {
  json out = json::array();
  for (int i : s.members()) out.push_back(t.name(i));
  return out;
}

inline json serialize_space(const PreorderedSpace& ps) {
  json j;
  j["points"] = ps.topology.point_names();
  json opens = json::array();
  for (const auto& o : ps.topology.opens()) opens.push_back(set_to_json(ps.topology, o));
  j["opens"] = std::move(opens);
  json order = json::array();
  for (int x = 0; x < ps.n(); ++x)
    for (int y : ps.order.up(x).members())
      if (x != y) order.push_back(json::array({ps.topology.name(x), ps.topology.name(y)}));
  j["order"] = std::move(order);
  return j;
}

// ----- Function files: { "<point>": [num, den], ... } -----

inline Rational rational_from_json(const json& j) {
  if (!j.is_array() || j.size() != 2) throw ParseError("rationals are [num, den] pairs");
  mpz_class num(j.at(0).is_number_integer() ? std::to_string(j.at(0).get<long long>())
                                            : j.at(0).get<std::string>());
  mpz_class den(j.at(1).is_number_integer() ? std::to_string(j.at(1).get<long long>())
                                            : j.at(1).get<std::string>());
  if (den == 0) throw ParseError("rational with zero denominator");
  Rational r(num, den);
  r.canonicalize();
  return r;
}

inline json rational_to_json(const Rational& r) {
  auto to_number_or_string = [](const mpz_class& z) -> json {
    if (z.fits_slong_p()) return json(z.get_si());
    return json(z.get_str());
  };
  return json::array({to_number_or_string(r.get_num()), to_number_or_string(r.get_den())});
}

inline MonotoneFn parse_function(const FiniteTopology& t, const json& j) {
  if (!j.is_object()) throw ParseError("function file must map points to [num, den]");
  std::vector<Rational> vals(static_cast<size_t>(t.n()));
  std::vector<bool> seen(t.n(), false);
  for (auto it = j.begin(); it != j.end(); ++it) {
    int x = t.index_of(it.key());
    vals[x] = rational_from_json(it.value());
    seen[x] = true;
  }
  for (int x = 0; x < t.n(); ++x)
    if (!seen[x]) throw InvalidInput("function missing a value for '" + t.name(x) + "'");
  return MonotoneFn(std::move(vals));
}

inline PartialFn parse_partial_function(const FiniteTopology& t, const json& j) {
  if (!j.is_object()) throw ParseError("function file must map points to [num, den]");
  PointSet domain;
  std::map<int, Rational> values;
  for (auto it = j.begin(); it != j.end(); ++it) {
    int x = t.index_of(it.key());
    domain.add(x);
    values[x] = rational_from_json(it.value());
  }
  return PartialFn::on(domain, std::move(values));
}

inline json serialize_function(const FiniteTopology& t, const MonotoneFn& f) {
  json j = json::object();
  for (int x = 0; x < t.n(); ++x) j[t.name(x)] = rational_to_json(f.at(x));
  return j;
}

inline json serialize_separator(const FiniteTopology& t, const SeparatorPair& uv) {
  return json{{"U", set_to_json(t, uv.U)}, {"V", set_to_json(t, uv.V)}};
}

// ----- Exhaustion directory -----
// manifest.json: { "pieces": ["piece_001.json", ...],
//                  "inclusions": [{"map": {"a": "a", ...}} | {}, ...] }
// Pieces are SpaceFiles; inclusion maps default to the identity on point ids.

inline Exhaustion load_exhaustion(const std::string& dir) {
  namespace fs = std::filesystem;
  fs::path root(dir);
  json manifest = load_json_file((root / "manifest.json").string());
  if (!manifest.contains("pieces") || !manifest.at("pieces").is_array())
    throw ParseError("manifest lacks a \"pieces\" array");

  Exhaustion exh;
  for (const auto& name : manifest.at("pieces")) {
    if (!name.is_string()) throw ParseError("piece names must be strings");
    exh.pieces.push_back(load_space((root / name.get<std::string>()).string()));
  }
  size_t want = exh.pieces.empty() ? 0 : exh.pieces.size() - 1;
  json incs = manifest.value("inclusions", json::array());
  if (!incs.is_array()) throw ParseError("\"inclusions\" must be an array");
  // An absent/empty list means identity inclusions throughout.
  if (!incs.empty() && incs.size() != want)
    throw ParseError("manifest needs pieces-1 inclusion entries");

  for (size_t j = 0; j + 1 < exh.pieces.size(); ++j) {
    const auto& small = exh.pieces[j];
    const auto& big = exh.pieces[j + 1];
    std::vector<int> inc(small.n(), -1);
    json entry = j < incs.size() ? incs.at(j) : json::object();
    json map = entry.is_object() ? entry.value("map", json::object()) : json::object();
    for (int i = 0; i < small.n(); ++i) {
      const std::string& nm = small.topology.name(i);
      std::string target = map.contains(nm) ? map.at(nm).get<std::string>() : nm;
      if (!big.topology.has_point(target))
        throw InvalidSpace("inclusion target '" + target + "' missing from piece " +
                           std::to_string(j + 2));
      inc[i] = big.topology.index_of(target);
    }
    exh.inclusions.push_back(std::move(inc));
  }
  return exh;
}

// A trace file is a JSON array of per-step records.
inline json serialize_trace(const Exhaustion& exh, const SeparationTrace& trace) {
  json steps = json::array();
  for (size_t j = 0; j < trace.steps.size(); ++j) {
    const auto& t = exh.pieces[j].topology;
    const auto& s = trace.steps[j];
    steps.push_back(json{{"piece", j + 1},
                         {"A_tilde", set_to_json(t, s.tilde_A)},
                         {"B_tilde", set_to_json(t, s.tilde_B)},
                         {"U", set_to_json(t, s.U)},
                         {"V", set_to_json(t, s.V)}});
  }
  return steps;
}

inline void write_json_file(const std::string& path, const json& j) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write '" + path + "'");
  out << j.dump(2) << "\n";
}

}  // namespace tps
