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


#pragma once

#include "nashset/value_set.hpp"

#include <Eigen/Dense>
#include <json.hpp>

#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace nashset {

/// N-player game driven by a one-dimensional Brownian state x, state
/// dependent coefficients and finite action grids.
struct DiffusionGameSpec {
  std::string name;
  int players = 1;
  double horizon = 1;
  std::vector<std::vector<double>> actions;  // per player
  // b(t, x, a) with a the joint action (one entry per player)
  std::function<double(double, double, const std::vector<double>&)> drift;
  // f_i(t, x, a_i)
  std::function<double(int, double, double, double)> running_cost;
  // g_i(x)
  std::function<double(int, double)> terminal;
  double drift_bound = 0;  // B_max
  double cost_bound = 0;   // C_0, for both f and g
};

enum class Scheme { monotone, central };
std::string to_string(Scheme s);
Scheme parse_scheme(std::string_view s);

struct PdeGrid {
  double x_lo = -4, x_hi = 4;
  int nx = 41;
  std::vector<double> y_lo{-1.5}, y_hi{1.5};  // per player
  int ny = 41;                                 // nodes per y axis
  int intervals = 40;                          // stored time layers minus one
  int substeps = 0;                            // per interval; 0 picks the smallest stable count
  double z_max = 3;
  int stencil = 1;      // x jumps of m hx for m = 1..stencil; z = k hy / (m hx)
  double safety = 0.9;  // fraction of the stability bound used when substeps = 0
  Scheme scheme = Scheme::monotone;
  int threads = 0;

  double hx() const { return (x_hi - x_lo) / (nx - 1); }
  double hy(int i) const { return (y_hi[i] - y_lo[i]) / (ny - 1); }
};

/// Doubles the resolution in x, y and t (n nodes -> 2n - 1).
PdeGrid refine(const PdeGrid& grid);

/// Throws ValidationError on shape errors or when sampled coefficients
/// exceed the declared bounds on the grid.
void validate(const DiffusionGameSpec& spec, const PdeGrid& grid);

/// f_i(t,x,a,z_i) = f_i(t,x,a_i) + b(t,x,a) z_i, its infimum over a_i and
/// the nonnegative gap between the two.
class CoupledCost {
 public:
  explicit CoupledCost(const DiffusionGameSpec& spec) : spec_(&spec) {}
  double full(int i, double t, double x, const std::vector<double>& a, double z) const;
  double lower(int i, double t, double x, const std::vector<double>& a, double z) const;
  double gap(int i, double t, double x, const std::vector<double>& a, double z) const {
    return full(i, t, x, a, z) - lower(i, t, x, a, z);
  }

 private:
  const DiffusionGameSpec* spec_;
};

struct Gradients {
  double wx = 0, wxx = 0;
  Eigen::VectorXd wy, wyx;  // d W / d y_i, d^2 W / d y_i d x
  Eigen::MatrixXd wyy;
};

struct HamiltonianResult {
  double value = 0;
  std::vector<double> action;
  Eigen::VectorXd z;
};

/// min over the joint action grid and z in {k hz : |k hz| <= z_max}^N of
///   1/2 W_xx + 1/2 z' W_yy z + z' W_yx + sum_i [gap_i^(3/2) - lower_i W_{y_i}].
HamiltonianResult hamiltonian(const DiffusionGameSpec& spec, double t, double x, const Gradients& g,
                              double z_max, double hz);

struct PdeField {
  int players = 1;
  PdeGrid grid;
  double ht = 0;                  // substep
  int substeps = 0;               // per stored interval
  std::vector<double> hz;         // per player hy_i / hx; z_i = k hz_i / m
  std::vector<int> z_steps;       // per player: |k| <= z_steps_i at m = 1 (scaled by m)
  std::vector<double> times;      // per stored layer
  std::vector<std::vector<double>> layers;  // [layer][ix * ny^N + flat y], layer 0 at t = 0
  double min_value = 0;           // over every substep
  double terminal_error = 0;      // max |W(T) - |g - y|^2|

  std::size_t y_size() const;
  double x(int ix) const { return grid.x_lo + ix * grid.hx(); }
  double y(int i, int j) const { return grid.y_lo[i] + j * grid.hy(i); }
  double at(int layer, int ix, std::size_t flat_y) const {
    return layers[layer][static_cast<std::size_t>(ix) * y_size() + flat_y];
  }
  std::vector<int> unflatten(std::size_t flat_y) const;
};

/// Explicit backward stepping of the HJB equation for W from
/// W(T, x, y) = |g(x) - y|^2. Throws ValidationError on a stability
/// violation and NumericInstability on non-finite values.
PdeField solve_w(const DiffusionGameSpec& spec, const PdeGrid& grid);

struct NodalCluster {
  std::vector<Eigen::VectorXd> points;
  Eigen::VectorXd centroid;
  double diameter = 0;
  double min_w = 0;
};

struct NodalSet {
  double delta = 0;
  ValueSet<double> points;
  std::vector<NodalCluster> clusters;  // ordered by min_w
};

/// c_delta (hx + max_i hy_i + sqrt(ht)).
double default_threshold(const PdeField& field, double c_delta);

/// y-nodes with W(t_layer, x_ix, y) <= delta, grouped into clusters of
/// nodes adjacent in every y index (Chebyshev distance one).
NodalSet nodal_set(const PdeField& field, int layer, int ix, double delta);
/// Same at grid coordinates (t, x); throws ValidationError when off grid.
NodalSet nodal_set_at(const PdeField& field, double t, double x, double delta);

/// Single-player value v(0, x0) of v_t + 1/2 v_xx + min_a [b(t,x,a) v_x + f(t,x,a)] = 0,
/// v(T) = g, by a 1-d upwind finite-difference scheme on [x0 - width, x0 + width].
double scalar_hjb_value(const DiffusionGameSpec& spec, double x0, double width = 8, int nodes = 1201);

struct PdePreset {
  DiffusionGameSpec spec;
  PdeGrid grid;
  double x0 = 0;
  double c_delta = 0.25;
};

/// static, single-player, zero-sum.
std::vector<std::string> pde_preset_names();
PdePreset pde_preset(const std::string& name);

/// {"preset": name, "model": {...}, "grid": {...}, "x0": .., "c_delta": ..}.
/// Either a preset or a model is required; grid keys override the preset's.
PdePreset pde_from_json(const nlohmann::ordered_json& config);

/// Binary export: one JSON header line, then the requested layers as
/// little-endian doubles in [layer][ix][y] order.
void write_field(const std::filesystem::path& path, const PdeField& field, const std::vector<int>& layers);

}  // namespace nashset
