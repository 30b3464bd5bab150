#include "cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <optional>
#include <string>
#include <vector>

#include "hreg/bigcount.hpp"
#include "hreg/constructions.hpp"
#include "hreg/errors.hpp"
#include "hreg/hyperreg.hpp"
#include "hreg/io.hpp"
#include "hreg/regcheck.hpp"
#include "hreg/suites.hpp"

namespace hreg {

namespace {

using nlohmann::json;

constexpr int kPass = 0;
constexpr int kFail = 1;
constexpr int kUsage = 2;

json to_json(const VertexSet& s) { return json(std::vector<std::uint32_t>(s.begin(), s.end())); }

json to_json(const std::vector<Edge>& edges) {
  json arr = json::array();
  for (const Edge& e : edges) arr.push_back({e.left, e.right});
  return arr;
}

json to_json(const Effort& e) { return {{"candidates", e.candidates}, {"restarts", e.restarts}}; }

json to_json(const Verdict& v) {
  json j{{"status", std::string(to_string(v.status))},
         {"method", std::string(to_string(v.method))},
         {"effort", to_json(v.effort)}};
  j["witness"] = v.witness ? json{{"a", to_json(v.witness->aSub)}, {"b", to_json(v.witness->bSub)}}
                           : json(nullptr);
  return j;
}

json to_json(const TriadVerdict& v) {
  json j{{"status", std::string(to_string(v.status))},
         {"method", std::string(to_string(v.method))},
         {"effort", to_json(v.effort)}};
  if (v.witness) {
    j["witness"] = {{"ab", to_json(v.witness->ab)},
                    {"ac", to_json(v.witness->ac)},
                    {"bc", to_json(v.witness->bc)},
                    {"triangles", v.witness->triangles},
                    {"h_edges", v.witness->hEdges}};
  } else {
    j["witness"] = nullptr;
  }
  return j;
}

json to_json(const PartitionReport& r) {
  json pairs = json::array();
  for (const auto& p : r.pairs) {
    pairs.push_back({{"left", p.leftBlock},
                     {"right", p.rightBlock},
                     {"density", to_string(p.density)},
                     {"verdict", to_json(p.verdict)}});
  }
  return {{"aggregate", std::string(to_string(r.aggregate))},
          {"caveats", r.caveats},
          {"pairs", std::move(pairs)}};
}

json to_json(const EditReport& r) {
  json j{{"outcome", std::string(to_string(r.outcome))},
         {"deletions", to_json(r.deletions)},
         {"before", to_json(r.before)}};
  j["after"] = r.after ? to_json(*r.after) : json(nullptr);
  return j;
}

json to_json(const QuasirandomReport& q) {
  return {{"octahedron_sum", to_string(q.octahedronSum)},
          {"bound", to_string(q.bound)},
          {"quasirandom", q.verdict},
          {"d_ab", to_string(q.d0)},
          {"d_ac", to_string(q.d1)},
          {"d_bc", to_string(q.d2)},
          {"substituted", q.substituted}};
}

struct Globals {
  std::uint64_t seed = 0;
  std::string mode = "auto";
  std::uint32_t trials = 0;
  bool json = false;

  CheckParams params() const {
    CheckParams p;
    p.mode = parse_mode(mode);
    p.seed = seed;
    if (trials > 0) p.randomTrials = trials;
    return p;
  }
};

class Output {
 public:
  Output(std::ostream& out, bool asJson) : out_(out), json_(asJson) {}

  void emit(const json& doc, const std::string& text) {
    if (json_) out_ << doc.dump(2) << '\n';
    else out_ << text;
  }

 private:
  std::ostream& out_;
  bool json_;
};

int status_exit(VerdictStatus s, std::string& text) {
  if (s == VerdictStatus::IrregularWithWitness) return kFail;
  if (s == VerdictStatus::UnknownNoWitnessFound) {
    text += "caveat: no witness found, regularity not certified\n";
  }
  return kPass;
}

std::string witness_text(const Verdict& v) {
  if (!v.witness) return {};
  std::string s = "witness A':";
  for (auto x : v.witness->aSub) s += " " + std::to_string(x);
  s += "\nwitness B':";
  for (auto x : v.witness->bSub) s += " " + std::to_string(x);
  return s + "\n";
}

}  // namespace

int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Regularity checkers, constructions and property suites for 3-graphs", "hreg"};
  app.fallthrough();
  app.require_subcommand(1);
  app.set_help_flag("--help", "Print help");
  // -h is taken by the --h hypergraph option below.
  Globals g;
  app.add_option("--seed", g.seed, "Master seed");
  app.add_option("--mode", g.mode, "exhaustive, randomized or auto")
      ->check(CLI::IsMember({"exhaustive", "randomized", "auto"}));
  app.add_option("--trials", g.trials, "Randomized restarts per check, or suite trials");
  app.add_flag("--json", g.json, "Emit a JSON document");

  std::string graphPath, hPath, triadPath, tpPath, leftPath, rightPath, outPath;
  std::string epsText, deltaText, alphaText, eps2Text;
  std::uint32_t axis = 3, ell = 1, order = 0, scale = 0, index = 1;
  bool edits = false, timing = false;
  std::string suite, fn = "t";
  std::vector<std::string> parts;

  auto* pair = app.add_subcommand("check-pair", "Check one bipartite graph");
  pair->add_option("--graph", graphPath, ".bg file")->required();
  auto* pairEps = pair->add_option("--eps", epsText, "epsilon-regularity at this level");
  auto* pairDelta = pair->add_option("--delta", deltaText, "<delta>-regularity at this level");
  pairEps->excludes(pairDelta);

  auto* part = app.add_subcommand("check-partition", "Check a vertex partition of a bipartite graph");
  part->add_option("--graph", graphPath, ".bg file")->required();
  part->add_option("--left", leftPath, ".vp file for the left side")->required();
  part->add_option("--right", rightPath, ".vp file for the right side")->required();
  part->add_option("--delta", deltaText, "<delta> level")->required();
  part->add_flag("--edits", edits, "Allow the edge-deletion repair");

  auto* three = app.add_subcommand("check-3partition", "Check a 2-partition of a 3-graph");
  three->add_option("--h", hPath, ".h3 file")->required();
  three->add_option("--tp", tpPath, ".tp file")->required();
  three->add_option("--delta", deltaText, "<delta> level")->required();

  auto* fr = app.add_subcommand("check-fr", "Subtriad (FR) regularity of a triad or a 2-partition");
  fr->add_option("--h", hPath, ".h3 file")->required();
  auto* frTriad = fr->add_option("--triad", triadPath, ".tr file");
  auto* frTp = fr->add_option("--tp", tpPath, ".tp file");
  frTriad->excludes(frTp);
  fr->add_option("--eps", epsText, "epsilon")->required();
  fr->add_option("--ell", ell, "density parameter l (with --tp)");
  fr->add_option("--order", order, "expected order t of Z (with --tp)");
  fr->add_option("--eps2", eps2Text, "graph regularity epsilon_2 (with --tp)");

  auto* qr = app.add_subcommand("quasirandom", "Octahedron test of a triad");
  qr->add_option("--h", hPath, ".h3 file")->required();
  qr->add_option("--triad", triadPath, ".tr file")->required();
  qr->add_option("--alpha", alphaText, "alpha")->required();

  auto* aux = app.add_subcommand("aux-graph", "Auxiliary bipartite graph of a 3-graph");
  aux->add_option("--h", hPath, ".h3 file")->required();
  aux->add_option("--axis", axis, "1, 2 or 3")->check(CLI::Range(1, 3));
  aux->add_option("--out", outPath, "Write the .bg file here instead of stdout");

  auto* paste = app.add_subcommand("paste", "Paste six 3-graphs along the tight 6-cycle");
  paste->add_option("--parts", parts, "Six .h3 files H_0 .. H_5")->required()->expected(6);
  paste->add_option("--out", outPath, "Write the .h3 file here instead of stdout");

  auto* sched = app.add_subcommand("schedule", "Evaluate e, t, w, f* (f the identity), twr or wow");
  sched->add_option("--fn", fn, "Function name")
      ->check(CLI::IsMember({"e", "t", "w", "fstar", "twr", "wow"}));
  sched->add_option("--i", index, "Argument");

  auto* verify = app.add_subcommand("verify", "Run a property suite");
  verify->add_option("--suite", suite, "Suite id, or 'all'")->required();
  verify->add_option("--scale", scale, "Size knob, 0 for the suite default");
  verify->add_flag("--timing", timing, "Include wall time in the report");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kPass;
  } catch (const CLI::ParseError& e) {
    err << e.what() << '\n';
    return kUsage;
  }

  Output o(out, g.json);
  try {
    const CheckParams params = g.params();

    if (*pair) {
      const BipartiteGraph graph = load_graph(graphPath);
      if (epsText.empty() == deltaText.empty()) {
        err << "check-pair needs exactly one of --eps and --delta\n";
        return kUsage;
      }
      const bool isEps = !epsText.empty();
      const Rational level = parse_rational(isEps ? epsText : deltaText);
      const Verdict v = isEps ? check_eps_regular(graph, level, params)
                              : check_delta_regular(graph, level, params);
      json doc = to_json(v);
      doc["density"] = to_string(density(graph));
      doc["notion"] = isEps ? "epsilon" : "delta";
      doc["level"] = to_string(level);
      std::string text = "verdict: " + std::string(to_string(v.status)) + " (" +
                         std::string(to_string(v.method)) + ")\n" + witness_text(v);
      const int code = status_exit(v.status, text);
      o.emit(doc, text);
      return code;
    }

    if (*part) {
      const BipartiteGraph graph = load_graph(graphPath);
      const VertexPartition left = load_partition(leftPath), right = load_partition(rightPath);
      const Level gamma = Level::of(parse_rational(deltaText));
      if (edits) {
        const EditReport r = check_delta_partition_with_edits(graph, left, right, gamma, params);
        std::string text = "outcome: " + std::string(to_string(r.outcome)) + ", " +
                           std::to_string(r.deletions.size()) + " deletion(s)\n";
        o.emit(to_json(r), text);
        return r.outcome == EditOutcome::NotCertified ? kFail : kPass;
      }
      const PartitionReport r = check_perfect_delta_partition(graph, left, right, gamma, params);
      std::string text = "aggregate: " + std::string(to_string(r.aggregate)) + " over " +
                         std::to_string(r.pairs.size()) + " pair(s)\n";
      const int code = status_exit(r.aggregate, text);
      o.emit(to_json(r), text);
      return code;
    }

    if (*three) {
      const ThreeGraph h = load_threegraph(hPath);
      const TwoPartition tp = load_twopartition(tpPath);
      const auto r = check_delta_regular_3partition(h, tp, parse_rational(deltaText), params);
      json axes = json::array();
      for (const auto& a : r.axes) axes.push_back(to_json(a));
      json good = json::array();
      for (const auto& gv : r.goodness.graphs) {
        good.push_back({{"graph", gv.graphIndex}, {"verdict", to_json(gv.verdict)}});
      }
      json doc{{"passes", r.passes},
               {"caveats", r.caveats},
               {"goodness", {{"aggregate", std::string(to_string(r.goodness.aggregate))},
                             {"graphs", std::move(good)}}},
               {"axes", std::move(axes)}};
      std::string text = std::string("3-partition ") + (r.passes ? "passes" : "fails") + "\n";
      if (r.caveats > 0) text += "caveat: " + std::to_string(r.caveats) + " check(s) left unknown\n";
      o.emit(doc, text);
      return r.passes ? kPass : kFail;
    }

    if (*fr) {
      const ThreeGraph h = load_threegraph(hPath);
      const Rational eps = parse_rational(epsText);
      if (!triadPath.empty()) {
        const Triad t = load_triad(triadPath);
        const TriadVerdict v = check_fr_triad(h, t, TriadEmbedding::identity(t), eps, params);
        std::string text = "verdict: " + std::string(to_string(v.status)) + " (" +
                           std::string(to_string(v.method)) + ")\n";
        const int code = status_exit(v.status, text);
        o.emit(to_json(v), text);
        return code;
      }
      if (tpPath.empty()) {
        err << "check-fr needs --triad or --tp\n";
        return kUsage;
      }
      const TwoPartition tp = load_twopartition(tpPath);
      const Rational eps2 = eps2Text.empty() ? eps : parse_rational(eps2Text);
      const std::uint32_t t = order == 0 ? static_cast<std::uint32_t>(tp.z().order()) : order;
      const auto r = check_fr_partition(h, tp, ell, t, eps2, eps, params);
      json triads = json::array();
      for (const auto& tj : r.triads) {
        triads.push_back({{"clusters", tj.clusters},
                          {"graphs", tj.graphs},
                          {"triangles", tj.triangles},
                          {"status", std::string(to_string(tj.status))}});
      }
      json doc{{"passes", r.passes},
               {"equipartition", r.equipartition.passes},
               {"irregular_mass", r.irregularMass.str()},
               {"bound", to_string(r.bound)},
               {"caveats", r.caveats},
               {"triads", std::move(triads)}};
      std::string text = std::string("FR partition ") + (r.passes ? "passes" : "fails") +
                         ", irregular mass " + r.irregularMass.str() + " vs bound " +
                         to_string(r.bound) + "\n";
      o.emit(doc, text);
      return r.passes ? kPass : kFail;
    }

    if (*qr) {
      const ThreeGraph h = load_threegraph(hPath);
      const Triad t = load_triad(triadPath);
      const auto r = check_quasirandom_triad(h, t, TriadEmbedding::identity(t),
                                             parse_rational(alphaText));
      std::string text = "octahedron sum " + to_string(r.octahedronSum) + ", bound " +
                         to_string(r.bound) + ": " +
                         (r.verdict ? "quasirandom" : "not quasirandom") + "\n";
      if (r.substituted) text += "note: side densities differ, (d_ab d_ac d_bc)^4 used for d^12\n";
      o.emit(to_json(r), text);
      return r.verdict ? kPass : kFail;
    }

    if (*aux) {
      const ThreeGraph h = load_threegraph(hPath);
      const AuxGraph a = auxiliary_graph(h, axis);
      const std::string text = format_graph(a.graph);
      if (!outPath.empty()) save_graph(outPath, a.graph);
      json doc{{"axis", a.axis},
               {"left", a.graph.left().size},
               {"right", a.graph.right().size},
               {"edges", a.graph.edge_count()},
               {"density", to_string(density(a.graph))}};
      if (outPath.empty()) doc["bg"] = text;
      o.emit(doc, outPath.empty() ? text : "wrote " + outPath + "\n");
      return kPass;
    }

    if (*paste) {
      std::vector<ThreeGraph> hs;
      for (const auto& p : parts) hs.push_back(load_threegraph(p));
      const ThreeGraph h = six_cycle_paste(hs);
      const std::string text = format_threegraph(h);
      if (!outPath.empty()) save_threegraph(outPath, h);
      json doc{{"edges", h.edge_count()}, {"density", to_string(h.density())}};
      if (outPath.empty()) doc["h3"] = text;
      o.emit(doc, outPath.empty() ? text : "wrote " + outPath + "\n");
      return kPass;
    }

    if (*sched) {
      BigCount v;
      if (fn == "e") v = func_e(index);
      else if (fn == "t") v = func_t(index);
      else if (fn == "w") v = func_w(index);
      else if (fn == "fstar") v = func_fstar([](std::uint64_t x) { return x; }, index);
      else if (fn == "twr") v = func_twr(index);
      else v = func_wow(index);
      const auto p2 = v.is_power_of_two();
      json doc{{"function", fn},
               {"argument", index},
               {"value", v.to_string()},
               {"saturated", v.saturated()},
               {"power_of_two", p2 ? json(*p2) : json(nullptr)}};
      o.emit(doc, fn + "(" + std::to_string(index) + ") = " + v.to_string() + "\n");
      return kPass;
    }

    if (*verify) {
      std::vector<std::string> ids;
      if (suite == "all") ids = suite_ids();
      else ids.push_back(suite);
      bool allPass = true;
      for (const auto& id : ids) {
        const Report r = run_suite(SuiteSpec{id, scale, g.seed, g.trials});
        allPass = allPass && r.pass;
        out << report_json(r, timing);
      }
      return allPass ? kPass : kFail;
    }
  } catch (const Error& e) {
    err << e.what() << '\n';
    return kUsage;
  }
  return kUsage;
}

}  // namespace hreg
