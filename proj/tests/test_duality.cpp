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


#include "nashset/duality.hpp"
#include "nashset/errors.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <random>

namespace nashset {
namespace {

using Json = nlohmann::ordered_json;

// E[tanh(x - T + sqrt(T) Z)] by the trapezoid rule on [-10, 10].
double tanh_drift_oracle(double x, double T) {
  const int n = 20001;
  const double h = 20.0 / (n - 1);
  double s = 0;
  for (int k = 0; k < n; ++k) {
    const double z = -10 + k * h;
    const double w = (k == 0 || k == n - 1) ? 0.5 : 1.0;
    s += w * std::tanh(x - T + std::sqrt(T) * z) * std::exp(-0.5 * z * z);
  }
  return s * h / std::sqrt(2 * M_PI);
}

TEST(CoupledCost, GapNonnegativeAndLowerLipschitz) {
  const PdePreset p = pde_from_json(Json::parse(R"({"model": {"players": 2, "actions": [[-1, 0, 1], [-1, 1]],
    "drift_weights": [0.5, -0.25], "action_cost": [1, 2],
    "terminal": [{"type": "tanh"}, {"type": "const", "value": 0.5}]}})"));
  const CoupledCost cost(p.spec);
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-3, 3);
  for (int trial = 0; trial < 200; ++trial) {
    const std::vector<double> a{p.spec.actions[0][trial % 3], p.spec.actions[1][trial % 2]};
    const int i = trial % 2;
    const double z1 = u(rng), z2 = u(rng), x = u(rng);
    EXPECT_GE(cost.gap(i, 0, x, a, z1), -1e-15);
    EXPECT_LE(std::abs(cost.lower(i, 0, x, a, z1) - cost.lower(i, 0, x, a, z2)),
              p.spec.drift_bound * std::abs(z1 - z2) + 1e-12);
  }
}

TEST(Hamiltonian, ZeroData) {
  const PdePreset p = pde_preset("static");
  Gradients g;
  g.wy = Eigen::VectorXd::Zero(2);
  g.wyx = Eigen::VectorXd::Zero(2);
  g.wyy = Eigen::MatrixXd::Zero(2, 2);
  EXPECT_EQ(hamiltonian(p.spec, 0, 0.3, g, 2, 0.5).value, 0.0);
}

TEST(Hamiltonian, SinglePlayerAtZeroSlope) {
  const PdePreset p = pde_from_json(Json::parse(R"({"model": {"players": 1, "actions": [[-1, 0, 1]],
    "action_cost": [1], "terminal": [{"type": "tanh"}]}})"));
  Gradients g;
  g.wxx = 0.7;
  g.wy = Eigen::VectorXd::Constant(1, -2.0);
  g.wyx = Eigen::VectorXd::Constant(1, 1.0);
  g.wyy = Eigen::MatrixXd::Constant(1, 1, 3.0);
  // z = 0: lower = min_a a^2 = 0 and the gap vanishes at a = 0
  const HamiltonianResult h = hamiltonian(p.spec, 0, 0, g, 0, 1);
  EXPECT_DOUBLE_EQ(h.value, 0.35);
  EXPECT_EQ(h.action[0], 0.0);
}

double scan(const DiffusionGameSpec& spec, double x, const Gradients& g, const std::vector<double>& zs) {
  const CoupledCost cost(spec);
  double best = 1e300;
  for (double a0 : spec.actions[0])
    for (double a1 : spec.actions[1])
      for (double z0 : zs)
        for (double z1 : zs) {
          const std::vector<double> a{a0, a1};
          const double z[2] = {z0, z1};
          double h = 0.5 * g.wxx;
          for (int i = 0; i < 2; ++i) {
            for (int j = 0; j < 2; ++j) h += 0.5 * z[i] * g.wyy(i, j) * z[j];
            h += z[i] * g.wyx(i);
            h += std::pow(cost.gap(i, 0, x, a, z[i]), 1.5) - cost.lower(i, 0, x, a, z[i]) * g.wy(i);
          }
          best = std::min(best, h);
        }
  return best;
}

TEST(Hamiltonian, MatchesExhaustiveScan) {
  const PdePreset p = pde_preset("zero-sum");
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(-2, 2);
  std::vector<double> fine, coarse;
  for (int k = -4; k <= 4; ++k) fine.push_back(0.25 * k);
  for (int k = -2; k <= 2; ++k) coarse.push_back(0.5 * k);
  for (int trial = 0; trial < 25; ++trial) {
    Gradients g;
    g.wxx = u(rng);
    g.wy = Eigen::Vector2d(u(rng), u(rng));
    g.wyx = Eigen::Vector2d(u(rng), u(rng));
    Eigen::Matrix2d m;
    m << u(rng), u(rng), u(rng), u(rng);
    g.wyy = m * m.transpose();
    const double x = u(rng);
    const double h = hamiltonian(p.spec, 0, x, g, 1, 0.25).value;
    EXPECT_NEAR(h, scan(p.spec, x, g, fine), 1e-12);
    EXPECT_LE(h, hamiltonian(p.spec, 0, x, g, 1, 0.5).value + 1e-12);
    EXPECT_NEAR(hamiltonian(p.spec, 0, x, g, 1, 0.5).value, scan(p.spec, x, g, coarse), 1e-12);
  }
}

TEST(SolveW, StaticGameKeepsTerminalShape) {
  PdePreset p = pde_preset("static");
  p.grid.ny = 21;
  p.grid.intervals = 10;
  const PdeField f = solve_w(p.spec, p.grid);
  EXPECT_EQ(f.terminal_error, 0.0);
  EXPECT_GE(f.min_value, -1e-10);
  double err = 0;
  for (int l = 0; l <= p.grid.intervals; ++l)
    for (int ix = 0; ix < p.grid.nx; ++ix)
      for (std::size_t y = 0; y < f.y_size(); ++y) {
        const auto j = f.unflatten(y);
        const double d0 = f.y(0, j[0]) - 0.5, d1 = f.y(1, j[1]) + 0.25;
        err = std::max(err, std::abs(f.at(l, ix, y) - d0 * d0 - d1 * d1));
      }
  EXPECT_LT(err, 1e-12);
}

TEST(SolveW, TerminalNodalSetIsBall) {
  const PdePreset p = pde_preset("single-player");
  const PdeField f = solve_w(p.spec, p.grid);
  for (int ix : {0, 13, 20, 40}) {
    const double delta = 0.01;
    const NodalSet ns = nodal_set(f, p.grid.intervals, ix, delta);
    std::size_t expected = 0;
    for (int j = 0; j < p.grid.ny; ++j)
      if (std::abs(f.y(0, j) - std::tanh(f.x(ix))) <= std::sqrt(delta)) ++expected;
    EXPECT_EQ(ns.points.size(), expected) << ix;
  }
}

TEST(ScalarOracle, MatchesClosedForm) {
  const PdePreset p = pde_preset("single-player");
  for (double x0 : {-1.0, 0.0, 0.5}) EXPECT_NEAR(scalar_hjb_value(p.spec, x0), tanh_drift_oracle(x0, 1.0), 5e-3);
}

TEST(SolveW, SinglePlayerClusterFindsOracle) {
  const PdePreset p = pde_preset("single-player");
  const double v = scalar_hjb_value(p.spec, p.x0);
  std::vector<double> diameters;
  for (const PdeGrid& grid : {p.grid, refine(p.grid)}) {
    const PdeField f = solve_w(p.spec, grid);
    EXPECT_GE(f.min_value, -1e-10);
    EXPECT_EQ(f.terminal_error, 0.0);
    const NodalSet ns = nodal_set_at(f, 0, p.x0, default_threshold(f, p.c_delta));
    ASSERT_EQ(ns.clusters.size(), 1u);
    EXPECT_LE(std::abs(ns.clusters[0].centroid(0) - v), 5 * (grid.hx() + grid.hy(0)));
    diameters.push_back(ns.clusters[0].diameter);
  }
  EXPECT_LT(diameters[1], diameters[0]);
}

TEST(SolveW, NodalSetMonotoneInThreshold) {
  const PdePreset p = pde_preset("single-player");
  const PdeField f = solve_w(p.spec, p.grid);
  for (int ix : {5, 20, 31}) {
    const NodalSet small = nodal_set(f, 0, ix, 0.05);
    const NodalSet large = nodal_set(f, 0, ix, 0.2);
    for (const auto& y : small.points) EXPECT_TRUE(large.points.contains(y));
  }
}

TEST(SolveW, ShiftedTerminalShiftsField) {
  PdePreset p = pde_preset("single-player");
  const PdeField base = solve_w(p.spec, p.grid);
  const double c = 4 * p.grid.hy(0);
  Json cfg = Json::parse(R"({"model": {"players": 1, "actions": [[-1, 0, 1]], "terminal": [{"type": "tanh"}]}})");
  cfg["model"]["terminal"][0]["offset"] = c;
  PdePreset shifted = pde_from_json(cfg);
  shifted.grid.y_lo[0] += c;
  shifted.grid.y_hi[0] += c;
  const PdeField moved = solve_w(shifted.spec, shifted.grid);
  double err = 0;
  for (std::size_t l = 0; l < base.layers.size(); ++l)
    for (std::size_t k = 0; k < base.layers[l].size(); ++k) err = std::max(err, std::abs(base.layers[l][k] - moved.layers[l][k]));
  EXPECT_LT(err, 1e-9);

  // same y grid: nodal centroids move by c up to a node
  cfg["model"]["terminal"][0]["offset"] = 2 * p.grid.hy(0);
  const PdePreset same = pde_from_json(cfg);
  const PdeField f2 = solve_w(same.spec, same.grid);
  for (int layer : {0, p.grid.intervals}) {
    const double d = default_threshold(base, p.c_delta);
    const auto a = nodal_set(base, layer, 20, d);
    const auto b = nodal_set(f2, layer, 20, d);
    ASSERT_FALSE(a.clusters.empty());
    ASSERT_FALSE(b.clusters.empty());
    EXPECT_NEAR(b.clusters[0].centroid(0) - a.clusters[0].centroid(0), 2 * p.grid.hy(0), p.grid.hy(0) + 1e-12);
  }
}

TEST(SolveW, ZeroSumCentroidAndPlayerSwap) {
  const PdePreset p = pde_preset("zero-sum");
  const PdeField f = solve_w(p.spec, p.grid);
  EXPECT_GE(f.min_value, -1e-10);
  const NodalSet ns = nodal_set_at(f, 0, 0, default_threshold(f, p.c_delta));
  ASSERT_FALSE(ns.clusters.empty());
  for (const auto& c : ns.clusters) EXPECT_LE(std::abs(c.centroid(0) + c.centroid(1)), 2 * p.grid.hy(0));

  Json cfg = Json::parse(R"({"model": {"players": 2, "actions": [[-1, 0, 1], [-1, 0, 1]],
    "drift_weights": [0.5, 0.5], "terminal": [{"type": "tanh", "amp": -1}, {"type": "tanh"}]},
    "grid": {"ny": 21, "intervals": 20, "z_max": 1.5, "x": [-4, 4, 21]}})");
  const PdePreset swapped = pde_from_json(cfg);
  const PdeField g = solve_w(swapped.spec, swapped.grid);
  const int n = p.grid.ny;
  double err = 0;
  for (int ix = 0; ix < p.grid.nx; ++ix)
    for (int j0 = 0; j0 < n; ++j0)
      for (int j1 = 0; j1 < n; ++j1)
        err = std::max(err, std::abs(f.at(0, ix, j0 * n + j1) - g.at(0, ix, j1 * n + j0)));
  EXPECT_LT(err, 1e-12);
}

TEST(SolveW, CentralSchemeRuns) {
  PdePreset p = pde_preset("single-player");
  p.grid.scheme = Scheme::central;
  const PdeField f = solve_w(p.spec, p.grid);
  EXPECT_EQ(f.terminal_error, 0.0);
  EXPECT_TRUE(std::isfinite(f.min_value));
}

TEST(SolveW, DeterministicAcrossThreads) {
  PdePreset p = pde_preset("single-player");
  p.grid.threads = 1;
  const PdeField a = solve_w(p.spec, p.grid);
  p.grid.threads = 3;
  const PdeField b = solve_w(p.spec, p.grid);
  EXPECT_EQ(a.layers, b.layers);
}

TEST(SolveW, StabilityViolationIsRejected) {
  PdePreset p = pde_preset("single-player");
  p.grid.substeps = 1;
  EXPECT_THROW(solve_w(p.spec, p.grid), ValidationError);
}

TEST(PdeConfig, Validation) {
  EXPECT_THROW(pde_from_json(Json::parse(R"({"preset": "nope"})")), ValidationError);
  EXPECT_THROW(pde_from_json(Json::parse(R"({"preset": "static", "grid": {"bogus": 1}})")), ValidationError);
  EXPECT_THROW(pde_from_json(Json::parse(R"({"model": {"players": 1, "actions": [[-1, 1]],
    "drift_bound": 0.5, "terminal": [{"type": "tanh"}]}})")), ValidationError);
  EXPECT_THROW(pde_from_json(Json::parse(R"({})")), ValidationError);
  const PdePreset p = pde_from_json(Json::parse(R"({"preset": "single-player", "grid": {"ny": 21, "scheme": "central"}, "x0": 1})"));
  EXPECT_EQ(p.grid.ny, 21);
  EXPECT_EQ(p.grid.scheme, Scheme::central);
  EXPECT_EQ(p.x0, 1.0);
}

TEST(PdeField, OffGridQueriesThrow) {
  const PdePreset p = pde_preset("single-player");
  const PdeField f = solve_w(p.spec, p.grid);
  EXPECT_THROW(nodal_set_at(f, 0, 0.01, 0.1), ValidationError);
  EXPECT_THROW(nodal_set(f, -1, 0, 0.1), ValidationError);
}

TEST(PdeField, BinaryExport) {
  const PdePreset p = pde_preset("single-player");
  const PdeField f = solve_w(p.spec, p.grid);
  const auto path = std::filesystem::temp_directory_path() / "nashset_field_test.bin";
  write_field(path, f, {0, p.grid.intervals});
  std::ifstream in(path, std::ios::binary);
  std::string line;
  std::getline(in, line);
  const Json header = Json::parse(line);
  EXPECT_EQ(header["times"].size(), 2u);
  std::vector<double> data(f.layers[0].size());
  in.read(reinterpret_cast<char*>(data.data()), static_cast<std::streamsize>(data.size() * sizeof(double)));
  EXPECT_EQ(data, f.layers[0]);
  std::filesystem::remove(path);
}

}  // namespace
}  // namespace nashset
