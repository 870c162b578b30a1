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
#include "nashset/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <numeric>
#include <sstream>

namespace nashset {

std::string to_string(Scheme s) { return s == Scheme::monotone ? "monotone" : "central"; }

Scheme parse_scheme(std::string_view s) {
  if (s == "monotone") return Scheme::monotone;
  if (s == "central") return Scheme::central;
  throw ValidationError("unknown scheme '" + std::string(s) + "'");
}

PdeGrid refine(const PdeGrid& grid) {
  PdeGrid out = grid;
  out.nx = 2 * grid.nx - 1;
  out.ny = 2 * grid.ny - 1;
  out.intervals = 2 * grid.intervals;
  return out;
}

namespace {

// Joint action grid in mixed radix, player 0 most significant.
std::vector<std::vector<double>> joint_actions(const DiffusionGameSpec& spec) {
  std::vector<std::vector<double>> out{{}};
  for (int i = 0; i < spec.players; ++i) {
    std::vector<std::vector<double>> next;
    for (const auto& prefix : out)
      for (double a : spec.actions[i]) {
        next.push_back(prefix);
        next.back().push_back(a);
      }
    out = std::move(next);
  }
  return out;
}

}  // namespace

void validate(const DiffusionGameSpec& spec, const PdeGrid& grid) {
  if (spec.players < 1 || spec.players > 3) throw ValidationError("the PDE solver supports 1 to 3 players");
  if (static_cast<int>(spec.actions.size()) != spec.players) throw ValidationError("one action grid per player");
  for (const auto& a : spec.actions)
    if (a.empty()) throw ValidationError("empty action grid");
  if (!spec.drift || !spec.running_cost || !spec.terminal) throw ValidationError("missing coefficient function");
  if (!(spec.horizon > 0)) throw ValidationError("horizon must be positive");
  if (grid.nx < 3 || grid.ny < 3) throw ValidationError("grids need at least 3 nodes per axis");
  if (!(grid.x_hi > grid.x_lo)) throw ValidationError("empty x range");
  if (static_cast<int>(grid.y_lo.size()) != spec.players || static_cast<int>(grid.y_hi.size()) != spec.players)
    throw ValidationError("one y range per player");
  for (int i = 0; i < spec.players; ++i)
    if (!(grid.y_hi[i] > grid.y_lo[i])) throw ValidationError("empty y range");
  if (grid.intervals < 1 || grid.substeps < 0) throw ValidationError("bad time discretization");
  if (!(grid.z_max >= 0)) throw ValidationError("z_max must be nonnegative");
  if (!(grid.safety > 0 && grid.safety <= 1)) throw ValidationError("safety factor must lie in (0, 1]");
  if (grid.stencil < 1 || grid.stencil >= grid.nx) throw ValidationError("stencil must lie in [1, nx)");

  const auto joint = joint_actions(spec);
  const double tol = 1e-12;
  const int nt = std::max(grid.intervals, 2);
  for (int k = 0; k <= nt; ++k) {
    const double t = spec.horizon * k / nt;
    for (int ix = 0; ix < grid.nx; ++ix) {
      const double x = grid.x_lo + ix * grid.hx();
      for (const auto& a : joint) {
        const double b = spec.drift(t, x, a);
        if (!std::isfinite(b) || std::abs(b) > spec.drift_bound + tol)
          throw ValidationError("drift " + std::to_string(b) + " exceeds the declared bound " +
                                std::to_string(spec.drift_bound));
      }
      for (int i = 0; i < spec.players; ++i) {
        for (double ai : spec.actions[i]) {
          const double f = spec.running_cost(i, t, x, ai);
          if (!std::isfinite(f) || std::abs(f) > spec.cost_bound + tol)
            throw ValidationError("running cost exceeds the declared bound");
        }
        const double g = spec.terminal(i, x);
        if (!std::isfinite(g) || std::abs(g) > spec.cost_bound + tol)
          throw ValidationError("terminal cost exceeds the declared bound");
      }
    }
  }
}

double CoupledCost::full(int i, double t, double x, const std::vector<double>& a, double z) const {
  return spec_->running_cost(i, t, x, a[i]) + spec_->drift(t, x, a) * z;
}

double CoupledCost::lower(int i, double t, double x, const std::vector<double>& a, double z) const {
  std::vector<double> dev = a;
  double best = std::numeric_limits<double>::infinity();
  for (double ai : spec_->actions[i]) {
    dev[i] = ai;
    best = std::min(best, full(i, t, x, dev, z));
  }
  return best;
}

HamiltonianResult hamiltonian(const DiffusionGameSpec& spec, double t, double x, const Gradients& g,
                              double z_max, double hz) {
  const int n = spec.players;
  const int steps = hz > 0 ? static_cast<int>(std::floor(z_max / hz + 1e-9)) : 0;
  const CoupledCost cost(spec);
  HamiltonianResult best;
  best.value = std::numeric_limits<double>::infinity();
  std::vector<int> k(static_cast<std::size_t>(n), -steps);
  Eigen::VectorXd z(n);
  for (const auto& a : joint_actions(spec)) {
    std::fill(k.begin(), k.end(), -steps);
    while (true) {
      for (int i = 0; i < n; ++i) z(i) = k[i] * hz;
      double h = 0.5 * g.wxx + 0.5 * z.dot(g.wyy * z) + z.dot(g.wyx);
      for (int i = 0; i < n; ++i) {
        const double gap = std::max(0.0, cost.gap(i, t, x, a, z(i)));
        h += std::pow(gap, 1.5) - cost.lower(i, t, x, a, z(i)) * g.wy(i);
      }
      if (h < best.value) {
        best.value = h;
        best.action = a;
        best.z = z;
      }
      int d = n - 1;
      while (d >= 0 && k[d] == steps) k[d--] = -steps;
      if (d < 0) break;
      ++k[d];
    }
  }
  return best;
}

std::size_t PdeField::y_size() const {
  std::size_t s = 1;
  for (int i = 0; i < players; ++i) s *= static_cast<std::size_t>(grid.ny);
  return s;
}

std::vector<int> PdeField::unflatten(std::size_t flat_y) const {
  std::vector<int> j(static_cast<std::size_t>(players));
  for (int i = players - 1; i >= 0; --i) {
    j[i] = static_cast<int>(flat_y % grid.ny);
    flat_y /= grid.ny;
  }
  return j;
}

namespace {

// Per (time, x) coefficient tables indexed by joint action, player and
// position in that player's z list.
struct Coefficients {
  int n = 0;
  std::vector<std::size_t> base;  // per player offset into the z lists
  std::size_t width = 0;          // total z entries over players
  std::vector<double> drift;      // [a][entry]: -lower_i
  std::vector<double> penalty;    // [a][entry]: gap_i^(3/2)

  double mu(std::size_t a, int i, int z) const { return drift[a * width + base[i] + z]; }
  double pen(std::size_t a, int i, int z) const { return penalty[a * width + base[i] + z]; }
};

Coefficients coefficients(const DiffusionGameSpec& spec, const std::vector<std::vector<double>>& joint,
                          const std::vector<std::vector<double>>& zs, double t, double x) {
  Coefficients c;
  c.n = spec.players;
  for (int i = 0; i < c.n; ++i) {
    c.base.push_back(c.width);
    c.width += zs[i].size();
  }
  c.drift.assign(joint.size() * c.width, 0.0);
  c.penalty.assign(joint.size() * c.width, 0.0);
  const CoupledCost cost(spec);
  for (std::size_t a = 0; a < joint.size(); ++a)
    for (int i = 0; i < c.n; ++i)
      for (std::size_t k = 0; k < zs[i].size(); ++k) {
        const double lo = cost.lower(i, t, x, joint[a], zs[i][k]);
        const double gap = std::max(0.0, cost.full(i, t, x, joint[a], zs[i][k]) - lo);
        c.drift[a * c.width + c.base[i] + k] = -lo;
        c.penalty[a * c.width + c.base[i] + k] = std::pow(gap, 1.5);
      }
  return c;
}

// One diffusion move: x by +-m hx, y by +-k hy, with z_i = k_i hz_i / m.
struct Move {
  int m = 1;
  std::vector<int> k;
  std::vector<int> z;  // index into the player's z list
  std::ptrdiff_t shift = 0;
};

double terminal_value(const DiffusionGameSpec& spec, const PdeField& f, int ix, const std::vector<int>& j) {
  double w = 0;
  for (int i = 0; i < spec.players; ++i) {
    const double d = spec.terminal(i, f.x(ix)) - f.y(i, j[i]);
    w += d * d;
  }
  return w;
}

}  // namespace

PdeField solve_w(const DiffusionGameSpec& spec, const PdeGrid& grid) {
  validate(spec, grid);
  const int n = spec.players;
  PdeField field;
  field.players = n;
  field.grid = grid;
  const double hx = grid.hx();
  double rate = 1.0 / (hx * hx);  // total jump intensity per unit time, bounded below
  for (int i = 0; i < n; ++i) {
    field.hz.push_back(grid.hy(i) / hx);
    field.z_steps.push_back(static_cast<int>(std::floor(grid.z_max / field.hz[i] + 1e-9)));
    const double mu_max = spec.cost_bound + spec.drift_bound * field.z_steps[i] * field.hz[i];
    rate += (grid.scheme == Scheme::monotone ? 1.0 : 0.5) * mu_max / grid.hy(i);
  }
  const double interval = spec.horizon / grid.intervals;
  if (grid.substeps > 0) {
    field.substeps = grid.substeps;
    field.ht = interval / grid.substeps;
    if (field.ht * rate > 1 + 1e-12)
      throw ValidationError("time step " + std::to_string(field.ht) + " violates the stability bound " +
                            std::to_string(1 / rate));
  } else {
    field.substeps = static_cast<int>(std::ceil(interval * rate / grid.safety - 1e-12));
    field.substeps = std::max(field.substeps, 1);
    field.ht = interval / field.substeps;
  }

  const std::size_t ysz = field.y_size();
  const std::size_t total = static_cast<std::size_t>(grid.nx) * ysz;
  std::vector<std::size_t> stride(static_cast<std::size_t>(n));
  for (int i = n - 1; i >= 0; --i) stride[i] = i == n - 1 ? 1 : stride[i + 1] * grid.ny;

  field.layers.assign(static_cast<std::size_t>(grid.intervals) + 1, {});
  for (int l = 0; l <= grid.intervals; ++l) field.times.push_back(l * interval);
  std::vector<double> cur(total);
  for (int ix = 0; ix < grid.nx; ++ix)
    for (std::size_t y = 0; y < ysz; ++y) cur[ix * ysz + y] = terminal_value(spec, field, ix, field.unflatten(y));
  field.layers.back() = cur;
  field.min_value = *std::min_element(cur.begin(), cur.end());

  std::vector<std::vector<double>> zs(static_cast<std::size_t>(n));
  std::vector<Move> moves;
  for (int m = 1; m <= grid.stencil; ++m) {
    std::vector<std::vector<int>> ks{{}};
    for (int i = 0; i < n; ++i) {
      std::vector<std::vector<int>> next;
      for (const auto& o : ks)
        for (int k = -m * field.z_steps[i]; k <= m * field.z_steps[i]; ++k) {
          next.push_back(o);
          next.back().push_back(k);
        }
      ks = std::move(next);
    }
    for (const auto& k : ks) {
      bool reduced = m > 1;  // (m, k) and (m / d, k / d) are the same control
      for (int d = 2; d <= m && reduced; ++d) {
        bool divides = m % d == 0;
        for (int v : k) divides = divides && v % d == 0;
        if (divides) reduced = false;
      }
      if (m > 1 && !reduced) continue;
      Move mv;
      mv.m = m;
      mv.k = k;
      for (int i = 0; i < n; ++i) {
        const double z = k[i] * field.hz[i] / m;
        auto it = std::find_if(zs[i].begin(), zs[i].end(), [&](double v) { return std::abs(v - z) < 1e-12; });
        if (it == zs[i].end()) {
          zs[i].push_back(z);
          it = zs[i].end() - 1;
        }
        mv.z.push_back(static_cast<int>(it - zs[i].begin()));
        mv.shift += static_cast<std::ptrdiff_t>(k[i]) * static_cast<std::ptrdiff_t>(stride[i]);
      }
      moves.push_back(std::move(mv));
    }
  }
  const auto joint = joint_actions(spec);
  const double lambda = field.ht / (hx * hx);

  std::vector<double> next(total);
  const int steps = grid.intervals * field.substeps;
  for (int s = steps - 1; s >= 0; --s) {
    const double t = s * field.ht;
    const std::size_t chunks = static_cast<std::size_t>(grid.nx);
    parallel_chunks(static_cast<std::uint64_t>(grid.nx), grid.threads, chunks,
                    [&](std::size_t, std::uint64_t begin, std::uint64_t end) {
      std::vector<int> j(static_cast<std::size_t>(n));
      for (std::uint64_t ixu = begin; ixu < end; ++ixu) {
        const int ix = static_cast<int>(ixu);
        const Coefficients c = coefficients(spec, joint, zs, t, field.x(ix));
        const double* here = &cur[ix * ysz];
        for (std::size_t y = 0; y < ysz; ++y) {
          std::size_t rest = y;
          for (int i = n - 1; i >= 0; --i) {
            j[i] = static_cast<int>(rest % grid.ny);
            rest /= grid.ny;
          }
          double best = std::numeric_limits<double>::infinity();
          for (const Move& mv : moves) {
            bool inside = true;
            for (int i = 0; i < n; ++i)
              if (j[i] - std::abs(mv.k[i]) < 0 || j[i] + std::abs(mv.k[i]) > grid.ny - 1) inside = false;
            if (!inside) continue;
            const double* up = &cur[std::min(ix + mv.m, grid.nx - 1) * ysz];
            const double* down = &cur[std::max(ix - mv.m, 0) * ysz];
            const double jump = lambda / (mv.m * mv.m);
            const double diffusion = 0.5 * jump * (up[y + mv.shift] + down[y - mv.shift]) + (1 - jump) * here[y];
            for (std::size_t a = 0; a < joint.size(); ++a) {
              double v = diffusion;
              double pen = 0;
              for (int i = 0; i < n; ++i) {
                const double mu = c.mu(a, i, mv.z[i]);
                pen += c.pen(a, i, mv.z[i]);
                const double r = field.ht * mu / grid.hy(i);
                const std::size_t yp = j[i] < grid.ny - 1 ? y + stride[i] : y;
                const std::size_t ym = j[i] > 0 ? y - stride[i] : y;
                if (grid.scheme == Scheme::monotone) {
                  v += r > 0 ? r * (here[yp] - here[y]) : r * (here[y] - here[ym]);
                } else if (j[i] > 0 && j[i] < grid.ny - 1) {
                  v += 0.5 * r * (here[yp] - here[ym]);
                } else {
                  v += j[i] == 0 ? r * (here[yp] - here[y]) : r * (here[y] - here[ym]);
                }
              }
              v += field.ht * pen;
              best = std::min(best, v);
            }
          }
          if (!std::isfinite(best)) {
            std::ostringstream os;
            os << "non-finite W at t=" << t << ", x=" << field.x(ix) << ", y index " << y;
            throw NumericInstability(os.str());
          }
          next[ix * ysz + y] = best;
        }
      }
    });
    std::swap(cur, next);
    field.min_value = std::min(field.min_value, *std::min_element(cur.begin(), cur.end()));
    if (s % field.substeps == 0) field.layers[s / field.substeps] = cur;
  }

  double err = 0;
  for (int ix = 0; ix < grid.nx; ++ix)
    for (std::size_t y = 0; y < ysz; ++y)
      err = std::max(err, std::abs(field.at(grid.intervals, ix, y) - terminal_value(spec, field, ix, field.unflatten(y))));
  field.terminal_error = err;
  return field;
}

double default_threshold(const PdeField& field, double c_delta) {
  double hy = 0;
  for (int i = 0; i < field.players; ++i) hy = std::max(hy, field.grid.hy(i));
  return c_delta * (field.grid.hx() + hy + std::sqrt(field.ht));
}

NodalSet nodal_set(const PdeField& field, int layer, int ix, double delta) {
  if (layer < 0 || layer >= static_cast<int>(field.layers.size()) || ix < 0 || ix >= field.grid.nx)
    throw ValidationError("nodal set requested off the grid");
  NodalSet out;
  out.delta = delta;
  const std::size_t ysz = field.y_size();
  std::vector<std::size_t> hits;
  for (std::size_t y = 0; y < ysz; ++y)
    if (field.at(layer, ix, y) <= delta) hits.push_back(y);

  auto point = [&](std::size_t y) {
    const auto j = field.unflatten(y);
    Eigen::VectorXd p(field.players);
    for (int i = 0; i < field.players; ++i) p(i) = field.y(i, j[i]);
    return p;
  };
  auto adjacent = [&](std::size_t u, std::size_t v) {
    const auto a = field.unflatten(u), b = field.unflatten(v);
    for (int i = 0; i < field.players; ++i)
      if (std::abs(a[i] - b[i]) > 1) return false;
    return true;
  };
  std::vector<int> label(hits.size(), -1);
  int clusters = 0;
  for (std::size_t h = 0; h < hits.size(); ++h) {
    if (label[h] >= 0) continue;
    std::vector<std::size_t> stack{h};
    label[h] = clusters;
    while (!stack.empty()) {
      const std::size_t u = stack.back();
      stack.pop_back();
      for (std::size_t v = 0; v < hits.size(); ++v)
        if (label[v] < 0 && adjacent(hits[u], hits[v])) {
          label[v] = clusters;
          stack.push_back(v);
        }
    }
    ++clusters;
  }
  out.clusters.resize(static_cast<std::size_t>(clusters));
  for (auto& c : out.clusters) c.min_w = std::numeric_limits<double>::infinity();
  for (std::size_t h = 0; h < hits.size(); ++h) {
    const Eigen::VectorXd p = point(hits[h]);
    out.points.insert(p);
    auto& c = out.clusters[label[h]];
    c.points.push_back(p);
    c.min_w = std::min(c.min_w, field.at(layer, ix, hits[h]));
  }
  for (auto& c : out.clusters) {
    c.centroid = Eigen::VectorXd::Zero(field.players);
    for (const auto& p : c.points) c.centroid += p;
    c.centroid /= static_cast<double>(c.points.size());
    for (const auto& p : c.points)
      for (const auto& q : c.points) c.diameter = std::max(c.diameter, (p - q).norm());
  }
  std::stable_sort(out.clusters.begin(), out.clusters.end(),
                   [](const NodalCluster& a, const NodalCluster& b) { return a.min_w < b.min_w; });
  return out;
}

NodalSet nodal_set_at(const PdeField& field, double t, double x, double delta) {
  const double lt = t / (field.grid.intervals ? field.times.back() / field.grid.intervals : 1);
  const double lx = (x - field.grid.x_lo) / field.grid.hx();
  const int layer = static_cast<int>(std::lround(lt));
  const int ix = static_cast<int>(std::lround(lx));
  if (std::abs(lt - layer) > 1e-9 || std::abs(lx - ix) > 1e-9)
    throw ValidationError("(t, x) is not a grid point");
  return nodal_set(field, layer, ix, delta);
}

double scalar_hjb_value(const DiffusionGameSpec& spec, double x0, double width, int nodes) {
  if (spec.players != 1) throw ValidationError("the scalar HJB oracle is single-player");
  const double h = 2 * width / (nodes - 1);
  const double rate = 1 / (h * h) + spec.drift_bound / h;
  const int steps = static_cast<int>(std::ceil(spec.horizon * rate / 0.9));
  const double dt = spec.horizon / steps;
  std::vector<double> v(static_cast<std::size_t>(nodes)), w(v.size());
  auto xs = [&](int k) { return x0 - width + k * h; };
  for (int k = 0; k < nodes; ++k) v[k] = spec.terminal(0, xs(k));
  for (int s = steps - 1; s >= 0; --s) {
    const double t = s * dt;
    for (int k = 0; k < nodes; ++k) {
      const double vm = v[std::max(k - 1, 0)], vp = v[std::min(k + 1, nodes - 1)];
      double best = std::numeric_limits<double>::infinity();
      for (double a : spec.actions[0]) {
        const double b = spec.drift(t, xs(k), {a});
        const double grad = b > 0 ? (vp - v[k]) / h : (v[k] - vm) / h;
        best = std::min(best, b * grad + spec.running_cost(0, t, xs(k), a));
      }
      w[k] = v[k] + dt * (0.5 * (vp - 2 * v[k] + vm) / (h * h) + best);
    }
    std::swap(v, w);
  }
  return v[static_cast<std::size_t>((nodes - 1) / 2)];
}

namespace {

using Json = nlohmann::ordered_json;

// amp * tanh(scale * (x - shift)) + offset, or a constant.
std::function<double(double)> terminal_shape(const Json& j, double& bound) {
  const std::string type = j.value("type", "const");
  if (type == "const") {
    const double c = j.at("value").get<double>();
    bound = std::max(bound, std::abs(c));
    return [c](double) { return c; };
  }
  if (type == "tanh") {
    const double amp = j.value("amp", 1.0), scale = j.value("scale", 1.0);
    const double shift = j.value("shift", 0.0), offset = j.value("offset", 0.0);
    bound = std::max(bound, std::abs(amp) + std::abs(offset));
    return [=](double x) { return amp * std::tanh(scale * (x - shift)) + offset; };
  }
  throw ValidationError("unknown terminal type '" + type + "'");
}

DiffusionGameSpec model_from_json(const Json& m) {
  DiffusionGameSpec spec;
  spec.name = m.value("name", "custom");
  spec.players = m.at("players").get<int>();
  spec.horizon = m.value("horizon", 1.0);
  spec.actions = m.at("actions").get<std::vector<std::vector<double>>>();
  if (static_cast<int>(spec.actions.size()) != spec.players) throw ValidationError("one action grid per player");
  // b = sum_i w_i a_i
  std::vector<double> w = m.value("drift_weights", std::vector<double>(spec.players, 1.0));
  if (static_cast<int>(w.size()) != spec.players) throw ValidationError("one drift weight per player");
  double bmax = 0;
  for (int i = 0; i < spec.players; ++i) {
    double amax = 0;
    for (double a : spec.actions[i]) amax = std::max(amax, std::abs(a));
    bmax += std::abs(w[i]) * amax;
  }
  spec.drift = [w](double, double, const std::vector<double>& a) {
    double b = 0;
    for (std::size_t i = 0; i < a.size(); ++i) b += w[i] * a[i];
    return b;
  };
  // f_i = c_i a_i^2
  std::vector<double> q = m.value("action_cost", std::vector<double>(spec.players, 0.0));
  if (static_cast<int>(q.size()) != spec.players) throw ValidationError("one action cost per player");
  double cbound = 0;
  for (int i = 0; i < spec.players; ++i)
    for (double a : spec.actions[i]) cbound = std::max(cbound, std::abs(q[i]) * a * a);
  spec.running_cost = [q](int i, double, double, double a) { return q[i] * a * a; };
  std::vector<std::function<double(double)>> g;
  const Json& terms = m.at("terminal");
  if (!terms.is_array() || static_cast<int>(terms.size()) != spec.players)
    throw ValidationError("one terminal entry per player");
  for (const auto& t : terms) g.push_back(terminal_shape(t, cbound));
  spec.terminal = [g](int i, double x) { return g[i](x); };
  spec.drift_bound = m.value("drift_bound", bmax);
  spec.cost_bound = m.value("cost_bound", cbound);
  return spec;
}

Json preset_model(const std::string& name) {
  if (name == "static")
    return Json::parse(R"({"name": "static", "players": 2, "actions": [[0], [0]],
      "terminal": [{"type": "const", "value": 0.5}, {"type": "const", "value": -0.25}]})");
  if (name == "single-player")
    return Json::parse(R"({"name": "single-player", "players": 1, "actions": [[-1, 0, 1]],
      "terminal": [{"type": "tanh"}]})");
  if (name == "zero-sum")
    return Json::parse(R"({"name": "zero-sum", "players": 2, "actions": [[-1, 0, 1], [-1, 0, 1]],
      "drift_weights": [0.5, 0.5],
      "terminal": [{"type": "tanh"}, {"type": "tanh", "amp": -1}]})");
  throw ValidationError("unknown PDE preset '" + name + "'");
}

}  // namespace

std::vector<std::string> pde_preset_names() { return {"static", "single-player", "zero-sum"}; }

PdePreset pde_preset(const std::string& name) {
  Json config;
  config["preset"] = name;
  return pde_from_json(config);
}

PdePreset pde_from_json(const Json& config) {
  PdePreset out;
  Json model;
  std::string preset;
  if (config.contains("preset")) {
    preset = config.at("preset").get<std::string>();
    model = preset_model(preset);
  }
  if (config.contains("model")) model = config.at("model");
  if (model.is_null()) throw ValidationError("PDE config needs a preset or a model");
  out.spec = model_from_json(model);
  const int n = out.spec.players;
  out.grid.y_lo.assign(static_cast<std::size_t>(n), -1.5);
  out.grid.y_hi.assign(static_cast<std::size_t>(n), 1.5);
  if (preset == "static") {
    out.grid.nx = 21;
    out.grid.z_max = 1;
  } else if (preset == "zero-sum") {
    out.grid.nx = 21;
    out.grid.ny = 21;
    out.grid.intervals = 20;
    out.grid.z_max = 1.5;
  }
  if (config.contains("grid")) {
    const Json& g = config.at("grid");
    if (g.contains("x")) {
      const auto x = g.at("x").get<std::vector<double>>();
      if (x.size() != 3) throw ValidationError("grid.x is [lo, hi, nodes]");
      out.grid.x_lo = x[0];
      out.grid.x_hi = x[1];
      out.grid.nx = static_cast<int>(x[2]);
    }
    if (g.contains("y")) {
      const auto y = g.at("y").get<std::vector<std::vector<double>>>();
      if (static_cast<int>(y.size()) != n) throw ValidationError("grid.y needs one [lo, hi] per player");
      for (int i = 0; i < n; ++i) {
        if (y[i].size() != 2) throw ValidationError("grid.y entries are [lo, hi]");
        out.grid.y_lo[i] = y[i][0];
        out.grid.y_hi[i] = y[i][1];
      }
    }
    out.grid.ny = g.value("ny", out.grid.ny);
    out.grid.intervals = g.value("intervals", out.grid.intervals);
    out.grid.substeps = g.value("substeps", out.grid.substeps);
    out.grid.z_max = g.value("z_max", out.grid.z_max);
    out.grid.stencil = g.value("stencil", out.grid.stencil);
    out.grid.safety = g.value("safety", out.grid.safety);
    if (g.contains("scheme")) out.grid.scheme = parse_scheme(g.at("scheme").get<std::string>());
    for (const auto& [key, _] : g.items())
      if (key != "x" && key != "y" && key != "ny" && key != "intervals" && key != "substeps" && key != "z_max" && key != "stencil" &&
          key != "safety" && key != "scheme")
        throw ValidationError("unknown grid key '" + key + "'");
  }
  out.x0 = config.value("x0", 0.0);
  out.c_delta = config.value("c_delta", out.c_delta);
  if (!(out.c_delta > 0)) throw ValidationError("c_delta must be positive");
  validate(out.spec, out.grid);
  return out;
}

void write_field(const std::filesystem::path& path, const PdeField& field, const std::vector<int>& layers) {
  Json header;
  header["format"] = "nashset-field";
  header["players"] = field.players;
  header["x"] = {field.grid.x_lo, field.grid.x_hi, field.grid.nx};
  Json y = Json::array();
  for (int i = 0; i < field.players; ++i) y.push_back({field.grid.y_lo[i], field.grid.y_hi[i]});
  header["y"] = y;
  header["ny"] = field.grid.ny;
  header["ht"] = field.ht;
  header["hz"] = field.hz;
  header["z_steps"] = field.z_steps;
  header["stencil"] = field.grid.stencil;
  Json times = Json::array();
  for (int l : layers) {
    if (l < 0 || l >= static_cast<int>(field.layers.size())) throw ValidationError("layer out of range");
    times.push_back(field.times[l]);
  }
  header["times"] = times;
  header["order"] = "layer, x, y (player 0 slowest)";
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ValidationError("cannot write " + path.string());
  out << header.dump() << '\n';
  for (int l : layers)
    out.write(reinterpret_cast<const char*>(field.layers[l].data()),
              static_cast<std::streamsize>(field.layers[l].size() * sizeof(double)));
}

}  // namespace nashset
