// tps — finite topological preordered spaces: classification, monotone
// separation, isotone Urysohn functions, extensions, quotients, streaming
// separation over exhaustions, and utility representations.
//
// Exit codes: 0 ok, 1 not-found, 2 parse, 3 invalid space/input, 4 not
// separable / not applicable, 5 extension condition violated, 6 internal
// verification failure.

#include <exception>
#include <functional>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "tps/classify.hpp"
#include "tps/dot.hpp"
#include "tps/io.hpp"
#include "tps/komega.hpp"
#include "tps/monotone_fn.hpp"
#include "tps/quotient.hpp"
#include "tps/search.hpp"
#include "tps/separation.hpp"
#include "tps/utility_repr.hpp"

namespace {

using namespace tps;

int run_guarded(const std::function<int()>& body) {
  try {
    return body();
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return 2;
  } catch (const ConditionViolated& e) {
    std::cerr << "condition violated: " << e.what() << " (xi=" << e.xi
              << ", xi'=" << e.xi_prime << ", point=" << e.witness_point << ")\n";
    return 5;
  } catch (const NotSeparable& e) {
    std::cerr << "not separable: " << e.what() << "\n";
    return 4;
  } catch (const InvalidSpace& e) {
    std::cerr << "invalid space: " << e.what() << "\n";
    return 3;
  } catch (const InvalidInput& e) {
    std::cerr << "invalid input: " << e.what() << "\n";
    return 3;
  } catch (const TooLarge& e) {
    std::cerr << "too large: " << e.what() << "\n";
    return 3;
  } catch (const InternalError& e) {
    std::cerr << "internal verification failure: " << e.what() << "\n";
    return 6;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}

PointSet named_set(const PreorderedSpace& ps, const std::vector<std::string>& names) {
  return ps.topology.parse_set(names);
}

void emit(const json& j, const std::string& out_path) {
  if (out_path.empty())
    std::cout << j.dump(2) << "\n";
  else
    write_json_file(out_path, j);
}

std::string names_csv(const FiniteTopology& t, const PointSet& s) {
  std::string out = "{";
  bool first = true;
  for (int i : s.members()) {
    if (!first) out += ",";
    out += t.name(i);
    first = false;
  }
  return out + "}";
}

int cmd_check(const std::string& space_path, bool as_json) {
  PreorderedSpace ps = load_space(space_path);
  Classification c = classify(ps);
  ClassificationWitnesses w = classification_witnesses(ps, c);
  if (as_json) {
    json j{{"semiclosed", c.semiclosed},
           {"closed", c.closed},
           {"convex", c.convex},
           {"regular", c.regular},
           {"normal", c.normal},
           {"perfectly_normal", c.perfectly_normal}};
    json witnesses = json::object();
    if (w.semiclosed_point)
      witnesses["semiclosed"] = ps.topology.name(*w.semiclosed_point);
    if (w.closed_pair)
      witnesses["closed"] = json::array({ps.topology.name(w.closed_pair->first),
                                         ps.topology.name(w.closed_pair->second)});
    if (w.convex_point) witnesses["convex"] = ps.topology.name(*w.convex_point);
    if (w.normal_pair)
      witnesses["normal"] = json{{"A", set_to_json(ps.topology, w.normal_pair->first)},
                                 {"B", set_to_json(ps.topology, w.normal_pair->second)}};
    if (w.regular_pair)
      witnesses["regular"] = json{{"point", ps.topology.name(w.regular_pair->first)},
                                  {"set", set_to_json(ps.topology, w.regular_pair->second)}};
    if (w.perfect_set)
      witnesses["perfectly_normal"] =
          json{{"set", set_to_json(ps.topology, w.perfect_set->first)},
               {"increasing", w.perfect_set->second}};
    j["witnesses"] = std::move(witnesses);
    std::cout << j.dump(2) << "\n";
  } else {
    auto line = [&](const char* name, bool v, const std::string& witness) {
      std::cout << name << ": " << (v ? "true" : "false");
      if (!v && !witness.empty()) std::cout << "   (witness: " << witness << ")";
      std::cout << "\n";
    };
    line("semiclosed", c.semiclosed,
         w.semiclosed_point ? "x=" + ps.topology.name(*w.semiclosed_point) : "");
    line("closed", c.closed,
         w.closed_pair ? "pair (" + ps.topology.name(w.closed_pair->first) + "," +
                             ps.topology.name(w.closed_pair->second) + ")"
                       : "");
    line("convex", c.convex, w.convex_point ? "x=" + ps.topology.name(*w.convex_point) : "");
    line("regular", c.regular,
         w.regular_pair ? "x=" + ps.topology.name(w.regular_pair->first) + " vs " +
                              names_csv(ps.topology, w.regular_pair->second)
                        : "");
    line("normal", c.normal,
         w.normal_pair ? "A=" + names_csv(ps.topology, w.normal_pair->first) +
                             " B=" + names_csv(ps.topology, w.normal_pair->second)
                       : "");
    line("perfectly_normal", c.perfectly_normal,
         w.perfect_set ? "set " + names_csv(ps.topology, w.perfect_set->first) : "");
  }
  return 0;
}

int cmd_separate(const std::string& space_path, const std::vector<std::string>& A_names,
                 const std::vector<std::string>& B_names, const std::string& method,
                 const std::string& out_path) {
  PreorderedSpace ps = load_space(space_path);
  PointSet A = named_set(ps, A_names), B = named_set(ps, B_names);
  SeparatorPair uv;
  if (method == "canonical")
    uv = separate(ps, A, B);
  else if (method == "covers")
    uv = separate_by_covers(ps, A, B);
  else if (method == "regularity")
    uv = separate_via_regularity(ps, A, B);
  else
    throw InvalidInput("unknown method '" + method + "'");
  if (!uv.valid_for(ps, A, B))
    throw InternalError("separator failed re-verification");
  emit(serialize_separator(ps.topology, uv), out_path);
  std::cout << "separated: U=" << names_csv(ps.topology, uv.U)
            << " V=" << names_csv(ps.topology, uv.V) << " (verified)\n";
  return 0;
}

int cmd_urysohn(const std::string& space_path, const std::vector<std::string>& A_names,
                const std::vector<std::string>& B_names, int depth,
                const std::string& out_path) {
  PreorderedSpace ps = load_space(space_path);
  PointSet A = named_set(ps, A_names), B = named_set(ps, B_names);
  MonotoneFn f = urysohn(ps, A, B, depth);
  bool ok = is_continuous(ps, f) && is_isotone(ps, f);
  for (int x : A.members()) ok = ok && f.at(x) == 0;
  for (int x : B.members()) ok = ok && f.at(x) == 1;
  if (!ok) throw InternalError("urysohn output failed re-verification");
  emit(serialize_function(ps.topology, f), out_path);
  std::cout << "urysohn function verified: continuous isotone, f[A]={0}, f[B]={1}\n";
  return 0;
}

int cmd_extend(const std::string& space_path, const std::vector<std::string>& S_names,
               const std::string& fn_path, const std::string& out_path) {
  PreorderedSpace ps = load_space(space_path);
  PointSet S = named_set(ps, S_names);
  PartialFn f = parse_partial_function(ps.topology, load_json_file(fn_path));
  if (f.domain != S)
    throw InvalidInput("function file domain does not match --S");
  MonotoneFn F = extend_isotone(ps, f);
  bool ok = is_continuous(ps, F) && is_isotone(ps, F);
  for (auto& [x, v] : f.values) ok = ok && F.at(x) == v;
  if (!ok) throw InternalError("extension failed re-verification");
  emit(serialize_function(ps.topology, F), out_path);
  std::cout << "extension verified: continuous isotone, F|S = f\n";
  return 0;
}

int cmd_perfect(const std::string& space_path, const std::vector<std::string>& A_names,
                const std::vector<std::string>& B_names, const std::string& out_path) {
  PreorderedSpace ps = load_space(space_path);
  PointSet A = named_set(ps, A_names), B = named_set(ps, B_names);
  MonotoneFn f = perfectly_separate(ps, A, B);
  bool ok = is_continuous(ps, f) && is_isotone(ps, f) &&
            f.level_set(Rational(0)) == A && f.level_set(Rational(1)) == B;
  if (!ok) throw InternalError("perfect separation failed re-verification");
  emit(serialize_function(ps.topology, f), out_path);
  std::cout << "exact-level-set function verified: f^-1(0)=A, f^-1(1)=B\n";
  return 0;
}

int cmd_utilities(const std::string& space_path, const std::string& out_path) {
  PreorderedSpace ps = load_space(space_path);
  Classification c = classify(ps);
  if (!c.regular) {
    std::cerr << "not applicable: space is not regularly preordered\n"
              << "flags: semiclosed=" << c.semiclosed << " closed=" << c.closed
              << " regular=" << c.regular << " normal=" << c.normal << "\n";
    return 4;
  }
  std::vector<MonotoneFn> fam = utility_representation(ps);
  if (!verify_representation(ps, fam, RepresentationMode::kRepresent) ||
      !verify_representation(ps, fam, RepresentationMode::kUtilityFamily))
    throw InternalError("utility representation failed re-verification");
  json fns = json::array();
  for (const auto& f : fam) fns.push_back(serialize_function(ps.topology, f));
  emit(json{{"functions", std::move(fns)}}, out_path);
  std::cout << "utility representation verified: " << fam.size()
            << " continuous utilities represent the preorder\n";
  return 0;
}

int cmd_quotient(const std::string& space_path, const std::string& out_path) {
  PreorderedSpace ps = load_space(space_path);
  QuotientPresentation q = quotient_space(ps);
  RemarkReport remark = check_remark_equivalences(ps);
  QuotientClosedReport closed = check_quotient_closed(ps);

  json out = serialize_space(q.space);
  json proj = json::object();
  for (int x = 0; x < ps.n(); ++x)
    proj[ps.topology.name(x)] = q.space.topology.name(q.projection[x]);
  out["projection"] = std::move(proj);
  emit(out, out_path);

  std::cout << "quotient points: " << q.space.n() << "\n"
            << "quotient order antisymmetric: " << (closed.quotient_antisymmetric ? "true" : "false")
            << "\nquotient closed ordered: " << (closed.quotient_closed_preorder ? "true" : "false")
            << "\nremark equivalences: semiclosed " << (remark.semiclosed_agree() ? "agree" : "DISAGREE")
            << ", regular " << (remark.regular_agree() ? "agree" : "DISAGREE") << ", normal "
            << (remark.normal_agree() ? "agree" : "DISAGREE") << "\nmonotone set bijections: "
            << ((remark.monotone_open_bijection && remark.monotone_closed_bijection) ? "hold"
                                                                                     : "FAIL")
            << "\n";
  if (!remark.all_hold() || !closed.quotient_antisymmetric)
    throw InternalError("quotient reports failed re-verification");
  return 0;
}

std::vector<PointSet> per_piece_sets(const Exhaustion& exh, const json& j, const char* what) {
  if (!j.is_array() || j.size() != exh.pieces.size())
    throw InvalidInput(std::string(what) + " must list one point set per piece");
  std::vector<PointSet> out;
  for (size_t i = 0; i < exh.pieces.size(); ++i) {
    std::vector<std::string> names;
    for (const auto& nm : j.at(i)) names.push_back(nm.get<std::string>());
    out.push_back(exh.pieces[i].topology.parse_set(names));
  }
  return out;
}

int cmd_stream(const std::string& dir, const std::string& A_path, const std::string& B_path,
               int steps, const std::string& out_path) {
  Exhaustion exh = load_exhaustion(dir);
  ExhaustionReport rep = validate_exhaustion(exh);
  if (!rep.valid) {
    std::cerr << "invalid exhaustion at step " << rep.failing_step << ": " << rep.message
              << "\n";
    return 3;
  }
  if (steps > 0) {
    if (steps > exh.steps()) throw InvalidInput("--steps exceeds the number of pieces");
    exh.pieces.erase(exh.pieces.begin() + steps, exh.pieces.end());
    exh.inclusions.erase(exh.inclusions.begin() + (steps - 1), exh.inclusions.end());
  }
  auto A = per_piece_sets(exh, load_json_file(A_path), "--A-per-piece");
  auto B = per_piece_sets(exh, load_json_file(B_path), "--B-per-piece");

  SeparationTrace trace = stream_separate(exh, A, B);

  // Invariant summary (everything re-checked before exit 0).
  bool ok = true;
  const int J = exh.steps();
  for (int j = 0; j < J; ++j) {
    const auto& st = trace.steps[j];
    const auto& ps = exh.pieces[j];
    ok = ok && !st.U.intersects(st.V) && st.tilde_A.subset_of(st.U) &&
         st.tilde_B.subset_of(st.V) && ps.topology.is_open(st.U) &&
         ps.topology.is_open(st.V) && ps.order.is_decreasing(st.U) &&
         ps.order.is_increasing(st.V);
    if (j + 1 < J) {
      ok = ok && exh.push_forward(j, j + 1, st.U).subset_of(trace.steps[j + 1].U);
      ok = ok && exh.push_forward(j, j + 1, st.V).subset_of(trace.steps[j + 1].V);
    }
  }
  std::vector<PointSet> U_restr, V_restr;
  for (int j = 0; j < J; ++j) {
    U_restr.push_back(exh.pull_back(J - 1, j, trace.steps[J - 1].U));
    V_restr.push_back(exh.pull_back(J - 1, j, trace.steps[J - 1].V));
  }
  ok = ok && limit_open_check(exh, U_restr) && limit_open_check(exh, V_restr);
  if (!ok) throw InternalError("separation trace failed re-verification");

  emit(serialize_trace(exh, trace), out_path);
  std::cout << "streaming separation verified over " << J
            << " pieces: nested separators, final disjointness, limit openness\n";
  return 0;
}

int cmd_find(int n, const std::vector<std::string>& require,
             const std::vector<std::string>& forbid, bool randomized, uint64_t seed,
             int iters, const std::string& out_path) {
  SpaceQuery q;
  for (const auto& s : require) q.require.push_back(parse_flag(s));
  for (const auto& s : forbid) q.forbid.push_back(parse_flag(s));

  std::optional<PreorderedSpace> found;
  if (randomized) {
    if (n > 8) throw InvalidInput("randomized search supports up to 8 points");
    found = find_space_random(n, q, seed, iters);
  } else {
    if (n > 6) throw InvalidInput("exhaustive search supports up to 6 points");
    found = find_space_exhaustive(n, q);
  }
  if (!found) {
    std::cout << "NOT_FOUND\n";
    return 1;
  }
  // Emitted witnesses are re-verified with the definitional classifier.
  Classification c = classify(*found);
  auto holds = [&](Flag f) {
    switch (f) {
      case Flag::kSemiclosed: return c.semiclosed;
      case Flag::kClosed: return c.closed;
      case Flag::kConvex: return c.convex;
      case Flag::kRegular: return c.regular;
      case Flag::kNormal: return c.normal;
      case Flag::kPerfectlyNormal: return c.perfectly_normal;
    }
    return false;
  };
  for (Flag f : q.require)
    if (!holds(f)) throw InternalError("witness failed re-verification");
  for (Flag f : q.forbid)
    if (holds(f)) throw InternalError("witness failed re-verification");
  emit(serialize_space(*found), out_path);
  std::cout << "FOUND space with " << found->n() << " points\n";
  return 0;
}

int cmd_dot(const std::string& space_path) {
  PreorderedSpace ps = load_space(space_path);
  std::cout << emit_dot(ps);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"finite topological preordered spaces toolkit"};
  app.require_subcommand(1);

  std::string space_path, out_path, fn_path, method = "canonical";
  std::vector<std::string> A_names, B_names, S_names, require, forbid;
  bool as_json = false, randomized = false;
  int depth = -1, steps = 0, find_n = 5, iters = 100000;
  uint64_t seed = 0;
  std::string exh_dir, A_file, B_file;

  auto* check = app.add_subcommand("check", "classify a space along the separation hierarchy");
  check->add_option("space", space_path)->required();
  check->add_flag("--json", as_json, "JSON report");

  auto* sep = app.add_subcommand("separate", "disjoint open monotone separators for (A,B)");
  sep->add_option("space", space_path)->required();
  sep->add_option("--A", A_names, "points of the closed decreasing set");
  sep->add_option("--B", B_names, "points of the closed increasing set");
  sep->add_option("--method", method, "canonical | covers | regularity");
  sep->add_option("--out", out_path, "output file (default stdout)");

  auto* ury = app.add_subcommand("urysohn", "isotone separating function for (A,B)");
  ury->add_option("space", space_path)->required();
  ury->add_option("--A", A_names);
  ury->add_option("--B", B_names);
  ury->add_option("--depth", depth, "dyadic insertion rounds (default |points|)");
  ury->add_option("--out", out_path);

  auto* ext = app.add_subcommand("extend", "extend a continuous isotone function from S");
  ext->add_option("space", space_path)->required();
  ext->add_option("--S", S_names, "subspace points");
  ext->add_option("--f", fn_path, "function file on S")->required();
  ext->add_option("--out", out_path);

  auto* perf = app.add_subcommand("perfect", "exact-level-set separation of (A,B)");
  perf->add_option("space", space_path)->required();
  perf->add_option("--A", A_names);
  perf->add_option("--B", B_names);
  perf->add_option("--out", out_path);

  auto* util = app.add_subcommand("utilities", "countable utility representation");
  util->add_option("space", space_path)->required();
  util->add_option("--out", out_path);

  auto* quot = app.add_subcommand("quotient", "indifference quotient with reports");
  quot->add_option("space", space_path)->required();
  quot->add_option("--out", out_path);

  auto* stream = app.add_subcommand("stream", "streaming separation over an exhaustion");
  stream->add_option("dir", exh_dir)->required();
  stream->add_option("--A-per-piece", A_file)->required();
  stream->add_option("--B-per-piece", B_file)->required();
  stream->add_option("--steps", steps, "use only the first J pieces");
  stream->add_option("--out", out_path);

  auto* find = app.add_subcommand("find", "search for a space with given flags");
  find->add_option("n", find_n, "maximum point count")->required();
  find->add_option("--require", require)->delimiter(',');
  find->add_option("--forbid", forbid)->delimiter(',');
  find->add_flag("--random", randomized, "randomized search instead of exhaustive");
  find->add_option("--seed", seed);
  find->add_option("--iters", iters, "randomized iteration budget");
  find->add_option("--out", out_path);

  auto* dot = app.add_subcommand("dot", "emit a DOT digraph of order and neighborhoods");
  dot->add_option("space", space_path)->required();

  CLI11_PARSE(app, argc, argv);

  return run_guarded([&]() -> int {
    if (check->parsed()) return cmd_check(space_path, as_json);
    if (sep->parsed()) return cmd_separate(space_path, A_names, B_names, method, out_path);
    if (ury->parsed()) return cmd_urysohn(space_path, A_names, B_names, depth, out_path);
    if (ext->parsed()) return cmd_extend(space_path, S_names, fn_path, out_path);
    if (perf->parsed()) return cmd_perfect(space_path, A_names, B_names, out_path);
    if (util->parsed()) return cmd_utilities(space_path, out_path);
    if (quot->parsed()) return cmd_quotient(space_path, out_path);
    if (stream->parsed()) return cmd_stream(exh_dir, A_file, B_file, steps, out_path);
    if (find->parsed())
      return cmd_find(find_n, require, forbid, randomized, seed, iters, out_path);
    if (dot->parsed()) return cmd_dot(space_path);
    return 2;
  });
}
