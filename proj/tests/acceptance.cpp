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


// One PASS/FAIL line per acceptance criterion. Exit status 1 if any fails.

#include "nashset/dpp_verifier.hpp"
#include "nashset/duality.hpp"
#include "nashset/equilibrium.hpp"
#include "nashset/examples.hpp"
#include "nashset/planner.hpp"

#include <chrono>
#include <cmath>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>

using namespace nashset;

namespace {

Payoff P(std::initializer_list<const char*> xs) {
  Payoff out(static_cast<Eigen::Index>(xs.size()));
  Eigen::Index i = 0;
  for (const char* x : xs) out(i++) = parse_rational(x);
  return out;
}

ValueSet<Rational> S(std::initializer_list<Payoff> xs) {
  ValueSet<Rational> out;
  for (const auto& x : xs) out.insert(x);
  return out;
}

Rational sup_distance(const Payoff& a, const Payoff& b) {
  Rational d = 0;
  for (Eigen::Index i = 0; i < a.size(); ++i) d = std::max<Rational>(d, abs(a(i) - b(i)));
  return d;
}

struct Outcome {
  bool pass = true;
  std::ostringstream note;
  void check(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      note << " [failed: " << what << "]";
    }
  }
};

int failures = 0;

void run(int id, const std::string& title, const std::function<void(Outcome&)>& body) {
  Outcome o;
  const auto start = std::chrono::steady_clock::now();
  try {
    body(o);
  } catch (const std::exception& e) {
    o.pass = false;
    o.note << " [exception: " << e.what() << "]";
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (!o.pass) ++failures;
  std::cout << (o.pass ? "PASS" : "FAIL") << " criterion " << id << ": " << title << " (" << secs << " s)"
            << o.note.str() << std::endl;
}

double elapsed(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

void criterion1(Outcome& o) {
  const auto start = std::chrono::steady_clock::now();
  const GameSpec spec = load_example("table1");
  const PathTree tree = build_path_tree(spec);
  const auto v = set_value(spec, tree, 0, ValueVariant::full);
  o.note << " V = " << format_value_set(v);
  o.check(v == S({P({"0", "1"}), P({"1", "0"})}), "value set");
  o.check(elapsed(start) < 1.0, "runtime < 1 s");
}

void criterion2(Outcome& o) {
  const GameSpec left = load_example("table2-left");
  const GameSpec right = load_example("table2-right");
  const PathTree tree = build_path_tree(left);
  const auto vl = set_value(left, tree, 0, ValueVariant::full);
  const auto vr = set_value(right, tree, 0, ValueVariant::full);
  o.note << " left " << format_value_set(vl) << ", right " << format_value_set(vr);
  o.check(vl == S({P({"3", "3"})}), "left value");
  o.check(vr == S({P({"2", "2"})}), "right value");
  bool dominated = true;
  for (JointAction a = 0; a < static_cast<JointAction>(left.action_space().count()); ++a) {
    const Payoff jl = cost_J(left, tree, 0, constant_policy(tree, a));
    const Payoff jr = cost_J(right, tree, 0, constant_policy(tree, a));
    for (int i = 0; i < 2; ++i) dominated = dominated && jl(i) < jr(i);
  }
  o.check(dominated, "left costs entrywise below right");
  bool greater = vl.size() == 1 && vr.size() == 1;
  if (greater)
    for (int i = 0; i < 2; ++i) greater = greater && (*vl.begin())(i) > (*vr.begin())(i);
  o.check(greater, "left equilibrium value above right");
}

void criterion3(Outcome& o) {
  const auto start = std::chrono::steady_clock::now();
  const GameSpec spec = load_example("path");
  const PathTree tree = build_path_tree(spec);
  const auto full = S({P({"0", "1/4"}), P({"1/4", "0"}), P({"1/8", "1/8"})});
  const auto state = S({P({"0", "1/4"}), P({"1/4", "0"})});
  o.check(set_value_bruteforce(spec, tree, 0, 0, PolicyClass::path_dependent) == full, "brute full");
  o.check(set_value_dpp(spec, tree, 0) == full, "dpp full");
  o.check(set_value_bruteforce(spec, tree, 0, 0, PolicyClass::state_dependent) == state, "brute state");
  o.check(elapsed(start) < 10.0, "runtime < 10 s");
}

void criterion4(Outcome& o) {
  const GameSpec spec = load_example("path");
  const PathTree tree = build_path_tree(spec);
  const auto r = verify_dpp(spec, tree, 0, StoppingTime::deterministic(tree, 2), ValueVariant::full,
                            PsiClass::state);
  o.note << " rhs = " << format_value_set(r.rhs) << ", relation " << to_string(r.relation);
  o.check(r.rhs == S({P({"0", "1/4"}), P({"1/4", "0"})}), "rhs");
  o.check(r.relation == DppRelation::rhs_subset, "strict containment");
}

void criterion5(Outcome& o) {
  const GameSpec spec = load_example("state");
  const PathTree tree = build_path_tree(spec);
  const auto r = verify_dpp(spec, tree, 0, StoppingTime::deterministic(tree, 1), ValueVariant::state,
                            PsiClass::path);
  const Payoff y = P({"1/8", "1/8"});
  o.note << " lhs = " << format_value_set(r.lhs) << ", rhs = " << format_value_set(r.rhs);
  o.check(r.rhs.contains(y) && !r.lhs.contains(y), "(1/8,1/8) in rhs minus lhs");
}

void criterion6(Outcome& o) {
  const Rational eps = parse_rational("1/100");
  const ParetoExample ex = pareto_dpp_counterexample(eps);
  const std::vector<Payoff> psi{P({"2", "2"}), P({"1", "5"}), P({"5", "1"}), P({"4", "4"})};
  const std::vector<Payoff> psi_tilde{P({"3", "3"}), P({"6", "6"}), P({"6", "6"}), P({"7", "7"})};
  bool tables = ex.branch_values.size() == 4;
  for (std::size_t s = 0; tables && s < 4; ++s)
    tables = ex.branch_values[s] == S({psi[s], psi_tilde[s]}) && ex.branch_pareto[s] == S({psi[s]});
  o.check(tables, "time-one sets");
  o.check(ex.report.relation == DppRelation::incomparable, "mutually non-inclusive");
  o.note << " lhs = " << format_value_set(ex.report.lhs) << ", rhs = " << format_value_set(ex.report.rhs);
  bool rhs_near = !ex.report.rhs.empty();
  for (const auto& y : ex.report.rhs) rhs_near = rhs_near && sup_distance(y, P({"4", "4"})) <= 12 * eps;
  o.check(rhs_near, "rhs within 12 eps of (4,4)");
  bool lhs_near = !ex.report.lhs.empty();
  Rational worst = 0;
  for (const auto& y : ex.report.lhs) {
    const Rational d = sup_distance(y, P({"3", "3"}));
    worst = std::max(worst, d);
    lhs_near = lhs_near && d <= 12 * eps;
  }
  o.check(lhs_near, "lhs within 12 eps of (3,3), worst distance " + format_rational(worst));
}

void criterion7(Outcome& o) {
  const OpenLoopDemo d0 = open_loop_lq_demo(0.0);
  const OpenLoopDemo d1 = open_loop_lq_demo(1.0);
  for (const OpenLoopDemo* d : {&d0, &d1}) {
    o.check((d->v_closed - d->formula_closed).cwiseAbs().maxCoeff() <= 1e-10, "closed-loop formula");
    o.check((d->v_composed - d->formula_composed).cwiseAbs().maxCoeff() <= 1e-10, "composed formula");
  }
  o.check(std::abs(d0.v_closed(0) + 1.5) <= 1e-10 && std::abs(d0.v_closed(1) + 1.5) <= 1e-10, "sigma 0 closed");
  o.check(std::abs(d0.v_composed(0) + 4) <= 1e-10 && std::abs(d0.v_composed(1) + 4) <= 1e-10, "sigma 0 composed");
  o.note << " sigma=0: " << format_payoff(PayoffT<double>(d0.v_closed)) << " vs "
         << format_payoff(PayoffT<double>(d0.v_composed)) << "; sigma=1: "
         << format_payoff(PayoffT<double>(d1.v_closed)) << " vs " << format_payoff(PayoffT<double>(d1.v_composed));
}

RandomSpecOptions shape(std::uint64_t seed) {
  RandomSpecOptions o;
  const int periods = 1 + static_cast<int>(seed % 3);
  o.state_counts.assign(static_cast<std::size_t>(periods) + 1, 2);
  o.state_counts[0] = 1;
  if (seed % 5 == 1) o.state_counts[1] = 1;
  o.markov = seed % 4 == 3;
  return o;
}

void criterion8(Outcome& o) {
  const auto start = std::chrono::steady_clock::now();
  int mismatches = 0;
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    const GameSpec spec = random_spec(shape(seed), seed);
    const PathTree tree = build_path_tree(spec);
    if (set_value_dpp(spec, tree, 0) != set_value_bruteforce(spec, tree, 0, 0, PolicyClass::path_dependent))
      ++mismatches;
  }
  int zero_specs = 0;
  int violations = 0;
  for (std::uint64_t seed = 1000; zero_specs < 50 && seed < 5000; ++seed) {
    RandomSpecOptions opts = shape(seed);
    if (opts.state_counts.size() < 3) opts.state_counts = {1, 2, 2};
    opts.allow_zero = true;
    const GameSpec spec = random_spec(opts, seed);
    const PathTree tree = build_path_tree(spec);
    if (has_positive_kernel(spec, tree)) continue;
    ++zero_specs;
    const int t0 = 1 + static_cast<int>(seed % (opts.state_counts.size() - 2));
    const auto r = verify_dpp(spec, tree, 0, StoppingTime::deterministic(tree, t0), ValueVariant::full,
                              PsiClass::path);
    if (!r.rhs_only.empty()) ++violations;
  }
  o.note << " 200 positive specs, " << mismatches << " mismatches; " << zero_specs << " zero-kernel specs, "
         << violations << " inclusion violations";
  o.check(mismatches == 0, "dpp equals brute force");
  o.check(zero_specs == 50, "50 zero-kernel specs");
  o.check(violations == 0, "rhs inside lhs");
  o.check(elapsed(start) < 300.0, "runtime < 5 min");
}

void criterion9(Outcome& o) {
  const GameSpec spec = load_example("path");
  const PathTree tree = build_path_tree(spec);
  const auto lam = Scalarization::normalized({Rational(1), Rational(1)});
  const auto opt = planner_optimum(set_value(spec, tree, 0, ValueVariant::full), lam);
  o.check(opt.has_value() && opt->value == parse_rational("1/8"), "V0 = 1/8");
  if (opt) {
    ValueSet<Rational> arg;
    for (const auto& y : opt->argmin) arg.insert(y);
    o.note << " V0 = " << format_rational(opt->value) << ", argmin = " << format_value_set(arg);
    o.check(arg == S({P({"1/8", "1/8"})}), "argmin is exactly {(1/8,1/8)}");
  }
  std::mt19937_64 rng(9);
  std::uniform_int_distribution<int> coord(-12, 12), weight(1, 9), count(1, 12), dim(2, 3);
  bool member = true;
  for (int k = 0; k < 100; ++k) {
    const int n = dim(rng);
    ValueSet<Rational> vs;
    const int m = count(rng);
    for (int j = 0; j < m; ++j) {
      Payoff y(n);
      for (int i = 0; i < n; ++i) y(i) = Rational(coord(rng), 4);
      vs.insert(y);
    }
    std::vector<Rational> w;
    for (int i = 0; i < n; ++i) w.push_back(weight(rng));
    const auto r = planner_optimum(vs, Scalarization::normalized(w));
    const auto front = pareto_filter(vs);
    if (!r) {
      member = false;
      continue;
    }
    for (const auto& y : r->argmin) member = member && front.contains(y);
  }
  o.check(member, "argmin inside the Pareto filter on 100 random sets");
}

void criterion10(Outcome& o) {
  const auto start = std::chrono::steady_clock::now();
  const PdePreset p = pde_preset("single-player");
  const double v = scalar_hjb_value(p.spec, p.x0);
  double previous_diameter = 0;
  for (int level = 0; level < 2; ++level) {
    const PdeGrid grid = level == 0 ? p.grid : refine(p.grid);
    const PdeField field = solve_w(p.spec, grid);
    o.check(field.min_value >= -1e-10, "W >= -1e-10");
    o.check(field.terminal_error == 0, "exact terminal layer");
    const NodalSet ns = nodal_set_at(field, 0, p.x0, default_threshold(field, p.c_delta));
    if (ns.clusters.empty()) {
      o.check(false, "nonempty nodal set");
      continue;
    }
    const NodalCluster& c = ns.clusters.front();
    double lo = c.points.begin()->operator()(0), hi = lo;
    for (const auto& y : c.points) {
      lo = std::min(lo, y(0));
      hi = std::max(hi, y(0));
    }
    const double tol = 5 * (grid.hx() + grid.hy(0));
    o.note << " " << grid.nx << "-grid: centroid " << c.centroid(0) << ", oracle " << v << ", tolerance " << tol
           << ", diameter " << c.diameter << ";";
    o.check(v >= lo - grid.hy(0) && v <= hi + grid.hy(0), "cluster contains the oracle value");
    o.check(std::abs(c.centroid(0) - v) <= tol, "centroid within 5 (hx + hy)");
    if (level == 1) o.check(c.diameter < previous_diameter, "diameter decreases under refinement");
    previous_diameter = c.diameter;
  }
  o.check(elapsed(start) < 600.0, "runtime < 10 min");
}

}  // namespace

int main() {
  std::cout.precision(6);
  run(1, "static game with two pure equilibria", criterion1);
  run(2, "comparison failure between the two static games", criterion2);
  run(3, "path and state set values by both engines", criterion3);
  run(4, "state-selection DPP is a strict subset", criterion4);
  run(5, "state-class DPP gains (1/8,1/8)", criterion5);
  run(6, "Pareto DPP counterexample at eps = 1/100", criterion6);
  run(7, "open-loop LQ values", criterion7);
  run(8, "randomized DPP property suite", criterion8);
  run(9, "central planner selection", criterion9);
  run(10, "nodal set against the scalar HJB oracle", criterion10);
  std::cout << (failures == 0 ? "all criteria pass" : std::to_string(failures) + " criteria fail") << std::endl;
  return failures == 0 ? 0 : 1;
}
