// udg: build, check, minimize and inspect unit-distance graphs.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <set>
#include <sstream>

#include "CLI11.hpp"
#include "udg/checker.hpp"
#include "udg/expr.hpp"
#include "udg/io.hpp"
#include "udg/minimize.hpp"
#include "udg/sat.hpp"
#include "udg/solver.hpp"
#include "udg/symmetry.hpp"

namespace {

using namespace udg;

constexpr int kTrue = 0;
constexpr int kFalse = 1;
constexpr int kUsage = 2;
constexpr int kBackend = 3;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Common {
  std::string expr;
  std::string graph;
  int k = 4;
  std::string companion = "none";
  std::string backend = "embedded";
  unsigned jobs = 1;
  std::uint64_t budget = 1'000'000;
  std::string out;
};

void add_input(CLI::App* app, Common& c) {
  app->add_option("-e,--expr", c.expr, "Graph expression, e.g. \"H^2 (+) H^1\"");
  app->add_option("--graph", c.graph, "Graph file (udg 1 format)");
}

void add_solver(CLI::App* app, Common& c) {
  app->add_option("--k", c.k, "Number of colors")->check(CLI::PositiveNumber);
  app->add_option("--backend", c.backend, "embedded | external[:path] (default path from UDG_SOLVER)");
  app->add_option("--jobs", c.jobs, "Worker threads")->check(CLI::PositiveNumber);
}

UnitGraph load_input(const Common& c) {
  if (!c.expr.empty() && !c.graph.empty()) throw UsageError("give either --expr or --graph, not both");
  if (!c.expr.empty()) return construct(c.expr, c.jobs);
  if (!c.graph.empty()) {
    std::vector<std::string> warnings;
    UnitGraph g = read_graph(c.graph, &warnings);
    for (const auto& w : warnings) std::cerr << "warning: " << c.graph << ": " << w << '\n';
    return g;
  }
  throw UsageError("an input graph is required (--expr or --graph)");
}

std::string format_model(const std::vector<bool>& model, int n, int k) {
  std::string out;
  for (int v = 0; v < n; ++v) {
    int color = -1;
    for (int c = 0; c < k; ++c) {
      if (model[static_cast<std::size_t>(v * k + c + 1)]) {
        color = c;
        break;
      }
    }
    out += (v ? " " : "") + std::to_string(color);
  }
  return out;
}

std::ostream& out_stream(const std::string& path, std::ofstream& file) {
  if (path.empty() || path == "-") return std::cout;
  file.open(path);
  if (!file) throw UsageError("cannot write " + path);
  return file;
}

// Flat "key = value" file turned into extra long options for `sub`, for
// keys not already given on the command line.
std::vector<std::string> config_args(const std::string& path, CLI::App* sub, const std::vector<std::string>& argv) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open config " + path);
  std::map<std::string, const CLI::Option*> known;
  for (const CLI::Option* opt : sub->get_options()) {
    for (const auto& name : opt->get_lnames()) known[name] = opt;
  }
  std::vector<std::string> extra;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw UsageError(path + ":" + std::to_string(line_no) + ": expected key = value");
    auto trim_ws = [](std::string s) {
      const auto a = s.find_first_not_of(" \t\r");
      const auto b = s.find_last_not_of(" \t\r");
      return a == std::string::npos ? std::string() : s.substr(a, b - a + 1);
    };
    std::string key = trim_ws(line.substr(0, eq));
    std::string value = trim_ws(line.substr(eq + 1));
    if (value.size() >= 2 && value.front() == '"' && value.back() == '"') value = value.substr(1, value.size() - 2);
    std::replace(key.begin(), key.end(), '_', '-');
    auto it = known.find(key);
    if (it == known.end() || key == "config") throw UsageError(path + ":" + std::to_string(line_no) + ": unknown key '" + key + "'");
    const std::string flag = "--" + key;
    bool given = false;
    for (const auto& a : argv) given = given || a == flag || a.rfind(flag + "=", 0) == 0;
    if (given) continue;
    if (it->second->get_expected_max() == 0) {
      if (value == "true" || value == "1") extra.push_back(flag);
    } else {
      extra.push_back(flag);
      extra.push_back(value);
    }
  }
  return extra;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Unit-distance graph construction, coloring checks and minimization"};
  app.require_subcommand(1);
  std::string config_path;
  Common c;

  // build
  auto* build = app.add_subcommand("build", "Evaluate an expression and report |V|, |E| and symmetry order");
  add_input(build, c);
  build->add_option("--out", c.out, "Write the graph file here");
  build->add_option("--jobs", c.jobs, "Worker threads")->check(CLI::PositiveNumber);
  bool build_audit = false;
  build->add_flag("--audit", build_audit, "Re-test every vertex pair exactly");

  // check
  auto* check = app.add_subcommand("check", "Run a coloring predicate");
  add_input(check, c);
  add_solver(check, c);
  check->add_option("--companion", c.companion, "none | graph:<path>[:<rotor>] | expr:<e>[:<rotor>] | mono:<u>,<v> | nonmono:<list>");
  bool chromatic = false, colorable = false, five = false;
  int kmax = 8;
  std::string mono, nonmono, spindle, method = "clique";
  check->add_flag("--chromatic", chromatic, "Print the chromatic number");
  check->add_option("--kmax", kmax, "Upper bound for --chromatic")->check(CLI::PositiveNumber);
  check->add_flag("--colorable", colorable, "Is the graph k-colorable? Prints a coloring if so");
  check->add_option("--mono", mono, "u,v: are the two vertices a mono-pair?");
  check->add_option("--nonmono", nonmono, "Vertex list: can the set not be monochromatic?");
  check->add_option("--method", method, "Non-mono method: clique | chain")->check(CLI::IsMember({"clique", "chain"}));
  check->add_flag("--five-break", five, "Five-vertex symmetry breaking for √3 triples (chain method)");
  check->add_option("--spindle", spindle, "p,q,r: pairs (p,q), (p,r) with q, r adjacent");

  // minimize
  auto* minimize = app.add_subcommand("minimize", "Alternate expansion and reduction");
  add_input(minimize, c);
  add_solver(minimize, c);
  minimize->add_option("--companion", c.companion, "Companion graph spec (see check)");
  minimize->add_option("--budget", c.budget, "Reduction checks per step")->check(CLI::PositiveNumber);
  minimize->add_option("--out", c.out, "Output directory");
  std::string universe_expr, universe_graph, disk;
  Strategy strategy;
  std::string expansion = "fill_then_add";
  minimize->add_option("--universe", universe_expr, "Expression for the candidate vertex universe B");
  minimize->add_option("--universe-graph", universe_graph, "Graph file for B");
  minimize->add_option("--disk", disk, "Use the base-graph disk of this radius (rational) as B");
  minimize->add_option("--iterations", strategy.max_iterations, "Iteration cap");
  minimize->add_option("--max-degree", strategy.max_hyperedge_degree, "Largest hyperedge degree searched");
  minimize->add_option("--orbits-per-step", strategy.orbits_per_step, "Reserve orbits per expansion candidate");
  minimize->add_option("--max-expansions", strategy.max_expansions, "Expansion candidates per iteration");
  minimize->add_option("--expansion", expansion, "fill_partial | add_orbits | fill_then_add")
      ->check(CLI::IsMember({"fill_partial", "add_orbits", "fill_then_add"}));
  bool no_batch = false, no_symmetry = false, timing = false;
  minimize->add_flag("--no-batch", no_batch, "Test deletion sets one by one");
  minimize->add_flag("--no-symmetry", no_symmetry, "Do not dedupe by symmetry");
  minimize->add_flag("--timing", timing, "Add timestamps to the run log");

  // orbits
  auto* orbits = app.add_subcommand("orbits", "Orbit-filling table, or disk-orbit enumeration");
  add_input(orbits, c);
  std::vector<std::string> m_graphs;
  std::string orbit_disk;
  orbits->add_option("--m", m_graphs, "Graph files of the minimal graphs (first is M)");
  orbits->add_option("--disk", orbit_disk, "List base orbits within this radius instead");

  // export
  auto* exp = app.add_subcommand("export", "DIMACS or machine-readable graph");
  add_input(exp, c);
  exp->add_option("--k", c.k, "Number of colors")->check(CLI::PositiveNumber);
  exp->add_option("--out", c.out, "Output file (default stdout)");
  bool dimacs = false, json = false, graph_file = false, brk = false;
  exp->add_flag("--dimacs", dimacs, "k-coloring CNF");
  exp->add_flag("--break", brk, "Add the default clique-breaking clauses");
  exp->add_flag("--json", json, "Vertices and edges as JSON");
  exp->add_flag("--graph-file", graph_file, "udg 1 graph file");

  // render
  auto* render = app.add_subcommand("render", "SVG drawing");
  add_input(render, c);
  render->add_option("--out", c.out, "Output SVG (default stdout)");
  std::string highlight;
  render->add_option("--highlight", highlight, "Vertices to enlarge (indices or points)");

  for (auto* sub : {build, check, minimize, orbits, exp, render}) {
    sub->add_option("--config", config_path, "Flat key = value file supplying defaults");
  }

  std::vector<std::string> args(argv + 1, argv + argc);
  try {
    // Inject config values before parsing.
    for (std::size_t i = 0; i + 1 < args.size(); ++i) {
      if (args[i] != "--config") continue;
      CLI::App* sub = nullptr;
      for (auto* s : app.get_subcommands({})) {
        if (!args.empty() && s->get_name() == args[0]) sub = s;
      }
      if (!sub) throw UsageError("--config must follow a subcommand");
      auto extra = config_args(args[i + 1], sub, args);
      args.insert(args.end(), extra.begin(), extra.end());
      break;
    }
    std::reverse(args.begin(), args.end());
    app.parse(args);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kUsage;
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  }

  try {
    if (*build) {
      const UnitGraph g = load_input(c);
      if (build_audit && !g.audit_strictness()) {
        std::cerr << "error: strictness audit failed\n";
        return kFalse;
      }
      std::cout << "vertices: " << g.size() << "\nedges: " << g.edges().size()
                << "\nsymmetry order: " << geometric_auts(g).order() << '\n';
      if (!c.out.empty()) write_graph(c.out, g);
      return kTrue;
    }

    if (*check) {
      const UnitGraph g = load_input(c);
      const auto backend = make_backend(c.backend, static_cast<int>(c.jobs));
      const SolverBackend* be = backend.get();
      auto verdict = [](bool v) {
        std::cout << (v ? "true" : "false") << '\n';
        return v ? kTrue : kFalse;
      };
      if (chromatic) {
        std::cout << chromatic_number(g, kmax, be) << '\n';
        return kTrue;
      }
      if (colorable) {
        const ColoringGraph cg = ColoringGraph::of(g);
        CnfFormula f = encode_k_coloring(cg, c.k);
        const auto clique = default_break_clique(cg, &g.vertices(), c.k);
        f = add_clique_break(std::move(f), cg, clique);
        const SolveResult r = solve(f, be);
        if (r.verdict == Verdict::sat) {
          std::cout << "true\ncoloring: " << format_model(r.model, static_cast<int>(g.size()), c.k) << '\n';
          return kTrue;
        }
        std::cout << "false\nUNSAT: no proper " << c.k << "-coloring exists\n";
        return kFalse;
      }
      if (!mono.empty()) {
        const auto uv = parse_vertex_list(mono, g);
        if (uv.size() != 2) throw UsageError("--mono needs two vertices");
        return verdict(is_mono_pair(g, uv[0], uv[1], c.k, be));
      }
      if (!nonmono.empty()) {
        const auto set = parse_vertex_list(nonmono, g);
        const auto m = method == "chain" ? NonMonoMethod::equal_chain : NonMonoMethod::clique_companion;
        return verdict(is_non_mono_set(g, set, c.k, m, be, five));
      }
      if (!spindle.empty()) {
        const auto pqr = parse_vertex_list(spindle, g);
        if (pqr.size() != 3) throw UsageError("--spindle needs three vertices p,q,r");
        return verdict(verify_spindle(g, {pqr[0], pqr[1]}, {pqr[0], pqr[2]}, c.k, be));
      }
      const KeyProperty kp{c.k, parse_companion(c.companion, g)};
      return verdict(key_property(g, kp, be));
    }

    if (*minimize) {
      const UnitGraph a = load_input(c);
      const auto backend = make_backend(c.backend, static_cast<int>(c.jobs));
      std::vector<ExactPoint> universe = a.vertices();
      if (!universe_expr.empty()) {
        const auto u = construct(universe_expr, c.jobs).vertices();
        universe.insert(universe.end(), u.begin(), u.end());
      }
      if (!universe_graph.empty()) {
        const auto u = read_graph(universe_graph).vertices();
        universe.insert(universe.end(), u.begin(), u.end());
      }
      if (!disk.empty()) {
        const auto u = disk_universe(Rational(disk));
        universe.insert(universe.end(), u.begin(), u.end());
      }
      strategy.check_budget = c.budget;
      strategy.jobs = c.jobs;
      strategy.use_batch_8421 = !no_batch;
      strategy.use_symmetry = !no_symmetry;
      strategy.log_timing = timing;
      strategy.expansion = expansion == "fill_partial" ? Strategy::Expansion::fill_partial
                           : expansion == "add_orbits" ? Strategy::Expansion::add_orbits
                                                       : Strategy::Expansion::fill_then_add;
      const KeyProperty kp{c.k, parse_companion(c.companion, a)};
      std::ofstream log_file;
      if (!c.out.empty()) {
        std::filesystem::create_directories(c.out);
        log_file.open(std::filesystem::path(c.out) / "run.log");
      }
      RunLog log(c.out.empty() ? &std::cerr : &log_file, timing);
      MinimizationState state = initial_state(a, group_into_orbits(universe), kp);
      state = iterate(std::move(state), strategy, log, backend.get());
      std::cout << "M: " << state.m.size() << " vertices, " << state.m.edges().size() << " edges\n"
                << "{M}: " << state.set_m.size() << " graphs\nA: " << state.a.size() << " vertices\n";
      if (!c.out.empty()) {
        const std::filesystem::path dir(c.out);
        write_graph((dir / "M.udg").string(), state.m);
        write_graph((dir / "A.udg").string(), state.a);
        for (std::size_t i = 0; i < state.set_m.size(); ++i) {
          write_graph((dir / ("M_" + std::to_string(i) + ".udg")).string(), state.set_m[i]);
        }
        try {
          std::ofstream table(dir / "orbits.tsv");
          table << format_orbit_table(orbit_table(state.a, state.m, state.set_m), state.m.size(), state.a.size());
        } catch (const std::invalid_argument&) {
          std::filesystem::remove(dir / "orbits.tsv");  // vertices outside the base family
        }
      }
      return kTrue;
    }

    if (*orbits) {
      if (!orbit_disk.empty()) {
        const auto os = enumerate_disk_orbits(Rational(orbit_disk));
        std::cout << "orbits: " << os.size() << '\n';
        for (const auto& o : os) {
          std::cout << o.representative.to_string() << '\t' << o.full_size << '\t' << o.min_radius_sq.to_string() << '\n';
        }
        return kTrue;
      }
      const UnitGraph a = load_input(c);
      std::vector<UnitGraph> set_m;
      for (const auto& p : m_graphs) set_m.push_back(read_graph(p));
      if (set_m.empty()) set_m.push_back(a);
      std::cout << format_orbit_table(orbit_table(a, set_m.front(), set_m), set_m.front().size(), a.size());
      return kTrue;
    }

    if (*exp) {
      const UnitGraph g = load_input(c);
      std::ofstream file;
      std::ostream& os = out_stream(c.out, file);
      if (dimacs) {
        const ColoringGraph cg = ColoringGraph::of(g);
        CnfFormula f = encode_k_coloring(cg, c.k);
        if (brk) f = add_clique_break(std::move(f), cg, default_break_clique(cg, &g.vertices(), c.k));
        os << to_dimacs(f);
      } else if (json) {
        os << graph_json(g) << '\n';
      } else if (graph_file) {
        os << format_graph(g);
      } else {
        throw UsageError("export needs --dimacs, --json or --graph-file");
      }
      return kTrue;
    }

    if (*render) {
      const UnitGraph g = load_input(c);
      std::vector<int> hl;
      if (!highlight.empty()) hl = parse_vertex_list(highlight, g);
      std::ofstream file;
      out_stream(c.out, file) << render_svg(g, hl);
      return kTrue;
    }
  } catch (const BackendError& e) {
    std::cerr << "backend error: " << e.what() << '\n';
    return kBackend;
  } catch (const VacuousError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::out_of_range& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kFalse;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  }
  return kUsage;
}
