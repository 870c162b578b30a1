// Copyright 2026 The nashset Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


// nashset command-line entry point.

#include "nashset/dpp_verifier.hpp"
#include "nashset/duality.hpp"
#include "nashset/equilibrium.hpp"
#include "nashset/examples.hpp"
#include "nashset/game_io.hpp"
#include "nashset/planner.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

namespace fs = std::filesystem;
using namespace nashset;

namespace {

struct RunConfig {
  std::string spec_path;
  std::string example;
  std::string prefix;
  std::string variant = "full";
  std::string engine = "brute";
  std::string eps = "0";
  std::string lambda;
  std::string psi_class = "path";
  std::string out;
  int tau = 1;
  std::vector<std::string> hit;
  double sigma = 0;
  int threads = 0;
  std::uint64_t cap = 10'000'000;
  std::uint64_t selection_cap = 100'000;
  bool witnesses = false;
  bool probe = false;
  // solve-pde
  std::string preset;
  std::string config;
  std::string out_dir;
  bool refine = false;
  double c_delta = 0;
  bool all_layers = false;
  // random-spec
  std::uint64_t seed = 0;
  bool zeros = false;
  bool markov = false;
  int periods = 3;
};

Json payoff_json(const Payoff& p) {
  Json out = Json::array();
  for (Eigen::Index i = 0; i < p.size(); ++i) out.push_back(format_rational(p(i)));
  return out;
}

Json payoff_json(const Eigen::VectorXd& p) {
  Json out = Json::array();
  for (Eigen::Index i = 0; i < p.size(); ++i) out.push_back(p(i));
  return out;
}

template <typename Points>
Json points_json(const Points& pts) {
  Json out = Json::array();
  for (const auto& p : pts) out.push_back(payoff_json(p));
  return out;
}

EngineOptions engine_options(const RunConfig& c) {
  EngineOptions o;
  o.policy_cap = c.cap;
  o.selection_cap = c.selection_cap;
  o.threads = c.threads;
  return o;
}

Rational parse_rational_arg(const std::string& s, const char* what) {
  try {
    return parse_rational(s);
  } catch (const std::invalid_argument& e) {
    throw ValidationError(std::string(what) + ": " + e.what());
  }
}

GameSpec load_input(const RunConfig& c) {
  if (!c.spec_path.empty() && !c.example.empty()) throw ValidationError("give either --spec or --example");
  if (!c.spec_path.empty()) return load_game(c.spec_path);
  if (!c.example.empty()) return load_example(c.example);
  throw ValidationError("an input game is required (--spec or --example)");
}

PrefixId resolve_prefix(const GameSpec& spec, const PathTree& tree, const std::string& text) {
  if (text.empty()) return 0;
  std::vector<std::string> labels;
  std::stringstream ss(text);
  for (std::string part; std::getline(ss, part, '>');) labels.push_back(part);
  const PrefixId p = find_prefix(spec, tree, labels);
  if (p < 0) throw ValidationError("no prefix '" + text + "' in this game");
  return p;
}

void emit(const RunConfig& c, const Json& doc) {
  if (c.out.empty()) return;
  std::ofstream f(c.out);
  if (!f) throw ValidationError("cannot write " + c.out);
  f << doc.dump(2) << '\n';
}

Json policy_json(const GameSpec& spec, const PathTree& tree, PrefixId from, const Policy& policy) {
  Json out = Json::object();
  for (PrefixId p = 0; p < static_cast<PrefixId>(tree.prefix_count()); ++p)
    if (tree.extends(p, from) && !spec.is_terminal(tree, p))
      out[prefix_label(spec, tree, p)] = joint_action_label(spec, policy.at(p));
  return out;
}

int cmd_setvalue(const RunConfig& c) {
  const GameSpec spec = load_input(c);
  const PathTree tree = build_path_tree(spec);
  const PrefixId prefix = resolve_prefix(spec, tree, c.prefix);
  const ValueVariant variant = parse_value_variant(c.variant);
  const Rational eps = parse_rational_arg(c.eps, "--eps");
  const EngineOptions opts = engine_options(c);
  ValueSet<Rational> values;
  Json witnesses = Json::array();
  if (c.engine == "dpp") {
    if (eps != 0) throw ValidationError("the dpp engine computes exact equilibria only (eps = 0)");
    if (c.witnesses) throw ValidationError("witnesses come from the brute engine");
    if (variant == ValueVariant::state || variant == ValueVariant::symmetric)
      throw ValidationError("the dpp engine covers the full, pareto and strong_pareto variants");
    values = set_value_dpp(spec, tree, prefix, opts);
    if (variant == ValueVariant::pareto) values = pareto_filter(values);
    if (variant == ValueVariant::strong_pareto) values = strong_pareto_filter(spec, tree, prefix, values, opts);
  } else if (c.engine == "brute") {
    values = set_value(spec, tree, prefix, variant, eps, opts);
    if (c.witnesses) {
      const Enumeration e = enumerate_equilibria(spec, tree, prefix, eps, variant_class(variant), opts);
      for (const auto& w : e.witnesses)
        if (values.contains(w.value))
          witnesses.push_back({{"value", payoff_json(w.value)}, {"policy", policy_json(spec, tree, prefix, w.policy)}});
    }
  } else {
    throw ValidationError("unknown engine '" + c.engine + "'");
  }
  Json doc;
  doc["prefix"] = prefix_label(spec, tree, prefix);
  doc["time"] = tree.time(prefix);
  doc["variant"] = to_string(variant);
  doc["eps"] = format_rational(eps);
  doc["values"] = points_json(values);
  if (c.witnesses) doc["witnesses"] = witnesses;
  std::cout << "V_" << to_string(variant) << "(" << tree.time(prefix) << ", " << prefix_label(spec, tree, prefix)
            << ") = " << format_value_set(values) << '\n';
  emit(c, doc);
  return 0;
}

Json report_json(const DppReport& r) {
  Json doc;
  doc["relation"] = to_string(r.relation);
  doc["lhs"] = points_json(r.lhs);
  doc["rhs"] = points_json(r.rhs);
  doc["lhs_minus_rhs"] = points_json(r.lhs_only);
  doc["rhs_minus_lhs"] = points_json(r.rhs_only);
  doc["selections"] = r.selections;
  doc["empty_continuation"] = r.empty_continuation;
  return doc;
}

void print_report(const DppReport& r) {
  std::cout << "lhs = " << format_value_set(r.lhs) << '\n' << "rhs = " << format_value_set(r.rhs) << '\n';
  ValueSet<Rational> a, b;
  for (const auto& y : r.lhs_only) a.insert(y);
  for (const auto& y : r.rhs_only) b.insert(y);
  std::cout << "lhs \\ rhs = " << format_value_set(a) << '\n'
            << "rhs \\ lhs = " << format_value_set(b) << '\n'
            << "selections = " << r.selections << '\n'
            << "relation = " << to_string(r.relation) << '\n';
}

int cmd_verify_dpp(const RunConfig& c) {
  const EngineOptions opts = engine_options(c);
  Json doc;
  if (c.example == "openloop") {
    if (c.sigma < 0) throw ValidationError("--sigma must be nonnegative");
    const OpenLoopDemo d = open_loop_lq_demo(c.sigma);
    std::cout << "sigma = " << c.sigma << '\n'
              << "closed-loop value = " << format_payoff(PayoffT<double>(d.v_closed)) << "  formula "
              << format_payoff(PayoffT<double>(d.formula_closed)) << '\n'
              << "composed value = " << format_payoff(PayoffT<double>(d.v_composed)) << "  formula "
              << format_payoff(PayoffT<double>(d.formula_composed)) << '\n'
              << "first-order residuals = " << d.closed_residual << ", " << d.composed_residual << '\n'
              << "relation = " << ((d.v_closed - d.v_composed).cwiseAbs().minCoeff() > 0 ? "incomparable" : "equal")
              << '\n';
    doc["example"] = "openloop";
    doc["sigma"] = c.sigma;
    doc["v_closed"] = payoff_json(Eigen::VectorXd(d.v_closed));
    doc["v_composed"] = payoff_json(Eigen::VectorXd(d.v_composed));
    doc["formula_closed"] = payoff_json(Eigen::VectorXd(d.formula_closed));
    doc["formula_composed"] = payoff_json(Eigen::VectorXd(d.formula_composed));
    doc["closed_controls"] = payoff_json(d.closed_controls);
    doc["composed_controls"] = payoff_json(Eigen::VectorXd(d.composed_controls));
    doc["residuals"] = {d.closed_residual, d.composed_residual};
    emit(c, doc);
    return 0;
  }
  if (c.example == "pareto") {
    const Rational eps = parse_rational_arg(c.eps == "0" ? "1/100" : c.eps, "--eps");
    const ParetoExample ex = pareto_dpp_counterexample(eps, opts);
    std::cout << "eps = " << format_rational(eps) << '\n';
    Json branches = Json::array();
    for (std::size_t s = 0; s < ex.branch_labels.size(); ++s) {
      std::cout << "V(1, " << ex.branch_labels[s] << ") = " << format_value_set(ex.branch_values[s])
                << "  pareto " << format_value_set(ex.branch_pareto[s]) << '\n';
      branches.push_back({{"state", ex.branch_labels[s]},
                          {"values", points_json(ex.branch_values[s])},
                          {"pareto", points_json(ex.branch_pareto[s])},
                          {"J", points_json(ex.branch_costs[s])}});
    }
    std::cout << "V(0, s0) = " << format_value_set(ex.root_values) << '\n';
    print_report(ex.report);
    doc["example"] = "pareto";
    doc["eps"] = format_rational(eps);
    doc["branches"] = branches;
    doc["root_values"] = points_json(ex.root_values);
    doc["report"] = report_json(ex.report);
    emit(c, doc);
    return 0;
  }

  GameSpec spec;
  StoppingTime tau;
  ValueVariant variant = parse_value_variant(c.variant);
  PsiClass psi = parse_psi_class(c.psi_class);
  PathTree tree({1});
  if (c.example == "path" || c.example == "psistate" || c.example == "state") {
    spec = load_example(c.example == "psistate" ? "path" : c.example);
    tree = build_path_tree(spec);
    if (c.example == "path") {
      tau = StoppingTime::deterministic(tree, 2);
    } else if (c.example == "psistate") {
      tau = StoppingTime::deterministic(tree, 2);
      psi = PsiClass::state;
    } else {
      tau = StoppingTime::deterministic(tree, 1);
      variant = ValueVariant::state;
    }
  } else {
    if (!c.example.empty()) {
      spec = load_example(c.example);
    } else {
      spec = load_input(c);
    }
    tree = build_path_tree(spec);
    tau = c.hit.empty() ? StoppingTime::deterministic(tree, c.tau) : StoppingTime::hitting(spec, tree, c.hit);
  }
  const PrefixId prefix = resolve_prefix(spec, tree, c.prefix);
  const DppReport r = verify_dpp(spec, tree, prefix, tau, variant, psi, opts);
  std::cout << "variant = " << to_string(variant) << ", psi class = " << to_string(psi) << '\n';
  print_report(r);
  doc["prefix"] = prefix_label(spec, tree, prefix);
  doc["variant"] = to_string(variant);
  doc["psi_class"] = to_string(psi);
  doc["report"] = report_json(r);
  emit(c, doc);
  return 0;
}

Scalarization parse_lambda(const std::string& text, int players) {
  if (text.empty()) return Scalarization::uniform(players);
  std::vector<Rational> w;
  std::stringstream ss(text);
  for (std::string part; std::getline(ss, part, ',');) w.push_back(parse_rational_arg(part, "--lambda"));
  if (static_cast<int>(w.size()) != players) throw ValidationError("--lambda needs one weight per player");
  return Scalarization::normalized(w);
}

int cmd_planner(const RunConfig& c) {
  const GameSpec spec = c.example == "pareto" ? pareto_example_spec(parse_rational_arg(c.eps == "0" ? "1/100" : c.eps, "--eps"))
                                              : load_input(c);
  const PathTree tree = build_path_tree(spec);
  const Scalarization lam = parse_lambda(c.lambda, spec.players());
  const PrefixId prefix = resolve_prefix(spec, tree, c.prefix);
  const EngineOptions opts = engine_options(c);
  Json doc;
  Json lambda = Json::array();
  for (const auto& w : lam.lambda()) lambda.push_back(format_rational(w));
  doc["lambda"] = lambda;
  const ValueSet<Rational> vs = set_value_bruteforce(spec, tree, prefix, 0, PolicyClass::path_dependent, opts);
  const auto opt = planner_optimum(vs, lam);
  doc["prefix"] = prefix_label(spec, tree, prefix);
  doc["values"] = points_json(vs);
  if (!opt) {
    std::cout << "no equilibrium\n";
    doc["outcome"] = "no_equilibrium";
  } else {
    std::cout << "V0 = " << format_rational(opt->value) << '\n';
    ValueSet<Rational> arg;
    for (const auto& y : opt->argmin) arg.insert(y);
    std::cout << "argmin = " << format_value_set(arg) << '\n';
    doc["outcome"] = "optimum";
    doc["value"] = format_rational(opt->value);
    doc["argmin"] = points_json(opt->argmin);
  }
  if (c.probe) {
    if (prefix != 0) throw ValidationError("the time-inconsistency probe starts at the root");
    const ProbeReport r = time_inconsistency_probe(spec, tree, lam, opts);
    std::cout << "dictatorship value = " << format_rational(r.dictatorship_value) << '\n';
    Json rows = Json::array();
    if (r.root) {
      std::cout << "selected = " << format_payoff(r.selected) << '\n';
      std::cout << "t  prefix  planner  continuation  consistent\n";
      for (const auto& e : r.entries) {
        const std::string label = prefix_label(spec, tree, e.prefix);
        std::cout << e.time << "  " << label << "  "
                  << (e.optimum ? format_rational(e.optimum->value) : std::string("none")) << "  "
                  << format_payoff(e.continuation) << " -> " << format_rational(e.continuation_value) << "  "
                  << (e.consistent ? "yes" : "no") << '\n';
        rows.push_back({{"time", e.time},
                        {"prefix", label},
                        {"planner_value", e.optimum ? Json(format_rational(e.optimum->value)) : Json(nullptr)},
                        {"continuation", payoff_json(e.continuation)},
                        {"continuation_value", format_rational(e.continuation_value)},
                        {"consistent", e.consistent}});
      }
      if (r.first_inconsistency)
        std::cout << "first inconsistency at " << prefix_label(spec, tree, r.entries[*r.first_inconsistency].prefix)
                  << '\n';
      else
        std::cout << "time consistent\n";
    }
    Json probe;
    probe["dictatorship_value"] = format_rational(r.dictatorship_value);
    if (r.root) {
      probe["selected"] = payoff_json(r.selected);
      probe["selection"] = policy_json(spec, tree, 0, r.selection);
    }
    probe["rows"] = rows;
    probe["first_inconsistency"] = r.first_inconsistency
                                       ? Json(prefix_label(spec, tree, r.entries[*r.first_inconsistency].prefix))
                                       : Json(nullptr);
    doc["probe"] = probe;
  }
  emit(c, doc);
  return 0;
}

void write_points(const fs::path& path, const NodalSet& ns, int players) {
  std::ofstream f(path);
  if (!f) throw ValidationError("cannot write " + path.string());
  f << "#";
  for (int i = 0; i < players; ++i) f << " y" << i + 1;
  f << " cluster\n";
  f.precision(12);
  for (std::size_t k = 0; k < ns.clusters.size(); ++k)
    for (const auto& p : ns.clusters[k].points) {
      for (int i = 0; i < players; ++i) f << p(i) << ' ';
      f << k << '\n';
    }
}

int cmd_solve_pde(const RunConfig& c) {
  if (c.preset.empty() == c.config.empty()) throw ValidationError("give exactly one of --preset or --config");
  PdePreset p;
  if (!c.preset.empty()) {
    p = pde_preset(c.preset);
  } else {
    std::ifstream f(c.config);
    if (!f) throw ValidationError("cannot read " + c.config);
    Json cfg;
    try {
      cfg = Json::parse(f);
    } catch (const Json::exception& e) {
      throw ValidationError(std::string("bad config JSON: ") + e.what());
    }
    p = pde_from_json(cfg);
  }
  if (c.refine) p.grid = refine(p.grid);
  if (c.threads > 0) p.grid.threads = c.threads;
  const double c_delta = c.c_delta > 0 ? c.c_delta : p.c_delta;
  const auto start = std::chrono::steady_clock::now();
  const PdeField field = solve_w(p.spec, p.grid);
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  const double delta = default_threshold(field, c_delta);
  const NodalSet ns = nodal_set_at(field, 0, p.x0, delta);
  std::cout << "model = " << p.spec.name << ", players = " << p.spec.players << '\n'
            << "grid: nx = " << p.grid.nx << ", ny = " << p.grid.ny << ", layers = " << field.layers.size()
            << ", ht = " << field.ht << " (" << field.substeps << " substeps per layer), scheme = "
            << to_string(p.grid.scheme) << '\n'
            << "min W = " << field.min_value << ", terminal error = " << field.terminal_error << ", seconds = " << secs
            << '\n'
            << "nodal set at (0, " << p.x0 << "), delta = " << delta << ": " << ns.points.size() << " nodes, "
            << ns.clusters.size() << " clusters\n";
  Json clusters = Json::array();
  for (const auto& cl : ns.clusters) {
    std::cout << "  centroid " << format_payoff(PayoffT<double>(cl.centroid)) << ", diameter " << cl.diameter
              << ", min W " << cl.min_w << ", nodes " << cl.points.size() << '\n';
    clusters.push_back({{"centroid", payoff_json(cl.centroid)},
                        {"diameter", cl.diameter},
                        {"min_w", cl.min_w},
                        {"nodes", cl.points.size()}});
  }
  Json doc;
  doc["model"] = p.spec.name;
  doc["players"] = p.spec.players;
  doc["grid"] = {{"x", {p.grid.x_lo, p.grid.x_hi, p.grid.nx}}, {"ny", p.grid.ny}, {"intervals", p.grid.intervals},
                 {"substeps", field.substeps}, {"ht", field.ht}, {"z_max", p.grid.z_max},
                 {"stencil", p.grid.stencil}, {"scheme", to_string(p.grid.scheme)}};
  doc["min_w"] = field.min_value;
  doc["terminal_error"] = field.terminal_error;
  doc["x0"] = p.x0;
  doc["delta"] = delta;
  doc["clusters"] = clusters;
  if (p.spec.players == 1) {
    const double v = scalar_hjb_value(p.spec, p.x0);
    const double tol = 5 * (p.grid.hx() + p.grid.hy(0));
    std::cout << "oracle v(0, " << p.x0 << ") = " << v;
    if (!ns.clusters.empty())
      std::cout << ", |centroid - v| = " << std::abs(ns.clusters[0].centroid(0) - v) << " (tolerance " << tol << ")";
    std::cout << '\n';
    doc["oracle"] = v;
  }
  if (!c.out_dir.empty()) {
    fs::create_directories(c.out_dir);
    std::vector<int> layers;
    if (c.all_layers)
      for (int l = 0; l < static_cast<int>(field.layers.size()); ++l) layers.push_back(l);
    else
      layers = {0, static_cast<int>(field.layers.size()) - 1};
    write_field(fs::path(c.out_dir) / "field.bin", field, layers);
    write_points(fs::path(c.out_dir) / "nodal.txt", ns, p.spec.players);
    std::ofstream(fs::path(c.out_dir) / "report.json") << doc.dump(2) << '\n';
  }
  emit(c, doc);
  return 0;
}

int cmd_examples() {
  std::cout << "games:";
  for (const auto& n : example_names()) std::cout << ' ' << n;
  std::cout << "\nverify-dpp batteries: path psistate state pareto openloop\npde presets:";
  for (const auto& n : pde_preset_names()) std::cout << ' ' << n;
  std::cout << "\ndata directory: " << data_dir().string() << '\n';
  return 0;
}

int cmd_random_spec(const RunConfig& c) {
  RandomSpecOptions o;
  if (c.periods < 1 || c.periods > 4) throw ValidationError("--periods must lie in 1..4");
  o.state_counts.assign(static_cast<std::size_t>(c.periods) + 1, 2);
  o.state_counts[0] = 1;
  o.allow_zero = c.zeros;
  o.markov = c.markov;
  const GameSpec spec = random_spec(o, c.seed);
  const std::string text = game_to_json(spec).dump(2);
  if (c.out.empty())
    std::cout << text << '\n';
  else
    std::ofstream(c.out) << text << '\n';
  return 0;
}

int fail(int code, const char* kind, const std::string& message) {
  Json err;
  err["error"] = kind;
  err["message"] = message;
  std::cerr << err.dump() << '\n';
  return code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Set values of multi-player stochastic games"};
  app.require_subcommand(1);
  RunConfig c;

  auto add_common = [&](CLI::App* s) {
    s->add_option("--spec", c.spec_path, "game spec JSON file");
    s->add_option("--example", c.example, "named example");
    s->add_option("--prefix", c.prefix, "evaluation prefix, e.g. s0>s10 (default: root)");
    s->add_option("--out", c.out, "write a JSON result file");
    s->add_option("--threads", c.threads, "worker threads (default: NASHSET_THREADS or all cores)");
    s->add_option("--cap", c.cap, "joint policy cap");
    s->add_option("--selection-cap", c.selection_cap, "continuation selection cap");
  };

  auto* setvalue = app.add_subcommand("setvalue", "set value of a game");
  add_common(setvalue);
  setvalue->add_option("--variant", c.variant, "full, state, symmetric, pareto or strong_pareto");
  setvalue->add_option("--engine", c.engine, "brute or dpp");
  setvalue->add_option("--eps", c.eps, "equilibrium tolerance (rational)");
  setvalue->add_flag("--witnesses", c.witnesses, "include one equilibrium per value");

  auto* verify = app.add_subcommand("verify-dpp", "compare a set value with its dynamic programming form");
  add_common(verify);
  verify->add_option("--variant", c.variant, "full, state, symmetric, pareto or strong_pareto");
  verify->add_option("--psi-class", c.psi_class, "path or state");
  verify->add_option("--tau", c.tau, "deterministic stopping time");
  verify->add_option("--hit", c.hit, "stop on first visit to these state labels");
  verify->add_option("--eps", c.eps, "perturbation for the pareto example (rational)");
  verify->add_option("--sigma", c.sigma, "noise level for the openloop example");

  auto* planner = app.add_subcommand("planner", "central planner selection");
  add_common(planner);
  planner->add_option("--lambda", c.lambda, "comma-separated weights (default: uniform)");
  planner->add_option("--eps", c.eps, "perturbation for the pareto example (rational)");
  planner->add_flag("--probe", c.probe, "report time consistency of the selection");

  auto* pde = app.add_subcommand("solve-pde", "solve the auxiliary control problem and extract nodal sets");
  pde->add_option("--preset", c.preset, "static, single-player or zero-sum");
  pde->add_option("--config", c.config, "solver config JSON file");
  pde->add_flag("--refine", c.refine, "double the resolution");
  pde->add_option("--c-delta", c.c_delta, "nodal threshold constant");
  pde->add_option("--out-dir", c.out_dir, "write field.bin, nodal.txt and report.json here");
  pde->add_flag("--all-layers", c.all_layers, "export every time layer");
  pde->add_option("--out", c.out, "write a JSON report");
  pde->add_option("--threads", c.threads, "worker threads");

  auto* examples = app.add_subcommand("examples", "shipped examples");
  examples->require_subcommand(1);
  examples->add_subcommand("list", "list example names");

  auto* random = app.add_subcommand("random-spec", "write a random game spec");
  random->add_option("--seed", c.seed, "generator seed");
  random->add_option("--periods", c.periods, "number of periods (1..4)");
  random->add_flag("--zeros", c.zeros, "allow zero transition probabilities");
  random->add_flag("--markov", c.markov, "state-dependent data");
  random->add_option("--out", c.out, "output file (default: stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    return fail(2, "usage", e.what());
  }

  try {
    if (*setvalue) return cmd_setvalue(c);
    if (*verify) return cmd_verify_dpp(c);
    if (*planner) return cmd_planner(c);
    if (*pde) return cmd_solve_pde(c);
    if (*examples) return cmd_examples();
    if (*random) return cmd_random_spec(c);
  } catch (const ValidationError& e) {
    return fail(2, "validation", e.what());
  } catch (const CapExceeded& e) {
    return fail(3, "cap", e.what());
  } catch (const NumericInstability& e) {
    return fail(4, "numeric", e.what());
  } catch (const Json::exception& e) {
    return fail(2, "validation", e.what());
  } catch (const std::invalid_argument& e) {
    return fail(2, "validation", e.what());
  }
  return 0;
}
