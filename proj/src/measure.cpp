// Copyright 2026 The rectlab Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "rectlab/measure.hpp"

#include <algorithm>
#include <numbers>
#include <numeric>
#include <unordered_set>

namespace rectlab {
namespace {

constexpr char kModule[] = "measure-estimation";

struct CellKey {
  std::array<std::int64_t, kMaxDim> c;
  friend bool operator==(const CellKey&, const CellKey&) = default;
};

struct CellKeyHash {
  std::size_t operator()(const CellKey& k) const {
    std::uint64_t h = 1469598103934665603ULL;
    for (std::int64_t v : k.c) {
      h ^= static_cast<std::uint64_t>(v) + 0x9E3779B97F4A7C15ULL + (h << 6) + (h >> 2);
    }
    return static_cast<std::size_t>(h);
  }
};

int LevelForScale(double delta) {
  if (!(delta > 0.0) || !std::isfinite(delta)) {
    throw Refusal(kModule, "scale must be positive and finite");
  }
  int level = static_cast<int>(std::ceil(-std::log2(delta)));
  while (std::ldexp(1.0, -level) > delta) ++level;
  while (std::ldexp(1.0, -(level - 1)) <= delta) --level;
  if (level > 60) throw Refusal(kModule, "scale below the smallest representable cell");
  return level;
}

}  // namespace

double UnitBallMeasure(int m) {
  // pi^{m/2} / Gamma(m/2 + 1)
  return std::pow(std::numbers::pi, 0.5 * m) / std::tgamma(0.5 * m + 1.0);
}

std::size_t OccupiedCells(std::span<const Vec> points, int n, double cell_side) {
  std::unordered_set<CellKey, CellKeyHash> cells;
  cells.reserve(points.size());
  for (const Vec& p : points) {
    CellKey key{{0, 0, 0}};
    for (int a = 0; a < n; ++a) {
      const double u = std::floor(p[a] / cell_side);
      if (!(std::abs(u) < 0x1.0p62)) {
        throw Refusal(kModule, "point coordinates overflow the cell index at this scale");
      }
      key.c[a] = static_cast<std::int64_t>(u);
    }
    cells.insert(key);
  }
  return cells.size();
}

MeasureEstimate MeasureAtScale(const WeightedCloud& cloud, int m, double delta) {
  MeasureEstimate est;
  est.scale = delta;
  est.level = LevelForScale(delta);
  est.cell_side = std::ldexp(1.0, -est.level);
  est.weight_sum = cloud.TotalWeight();
  if (!cloud.empty()) {
    est.cells = OccupiedCells(cloud.points, cloud.n, est.cell_side);
    const double diam = std::sqrt(static_cast<double>(cloud.n)) * est.cell_side;
    est.value = static_cast<double>(est.cells) * std::pow(diam, m);
  }
  est.lower = std::min(est.value, est.weight_sum);
  est.upper = std::max(est.value, est.weight_sum);
  return est;
}

double Density(const WeightedCloud& cloud, const Vec& p, double s, double r) {
  if (!(r > 0.0)) throw Refusal(kModule, "density radius must be positive");
  double mass = 0.0;
  for (std::size_t i = 0; i < cloud.size(); ++i) {
    if (Distance(cloud.points[i], p) <= r) mass += cloud.weights[i];
  }
  return mass / std::pow(2.0 * r, s);
}

PointIndex::PointIndex(std::span<const Vec> points, int n, double bucket)
    : points_(points), n_(n), bucket_(bucket) {
  if (!(bucket_ > 0.0)) throw Refusal(kModule, "index bucket must be positive");
  for (std::size_t i = 0; i < points_.size(); ++i) {
    std::array<std::int64_t, kMaxDim> idx{0, 0, 0};
    for (int a = 0; a < n_; ++a) {
      idx[a] = static_cast<std::int64_t>(std::floor(points_[i][a] / bucket_));
    }
    buckets_[Key(idx)].push_back(i);
  }
}

std::uint64_t PointIndex::Key(const std::array<std::int64_t, kMaxDim>& idx) const {
  std::uint64_t h = 0;
  for (std::int64_t v : idx) {
    h = h * 0x100000001B3ULL ^ (static_cast<std::uint64_t>(v) + 0x9E3779B97F4A7C15ULL);
  }
  return h;
}

void PointIndex::ForEachInBall(const Vec& center, double radius,
                               const std::function<void(std::size_t)>& visit) const {
  std::array<std::int64_t, kMaxDim> first{0, 0, 0};
  std::array<std::int64_t, kMaxDim> last{0, 0, 0};
  double count = 1.0;
  for (int a = 0; a < n_; ++a) {
    first[a] = static_cast<std::int64_t>(std::floor((center[a] - radius) / bucket_));
    last[a] = static_cast<std::int64_t>(std::floor((center[a] + radius) / bucket_));
    count *= static_cast<double>(last[a] - first[a] + 1);
  }
  std::vector<std::size_t> hits;
  if (count > static_cast<double>(buckets_.size())) {
    for (std::size_t i = 0; i < points_.size(); ++i) {
      if (Distance(points_[i], center) <= radius) hits.push_back(i);
    }
  } else {
    std::array<std::int64_t, kMaxDim> idx = first;
    while (true) {
      if (auto it = buckets_.find(Key(idx)); it != buckets_.end()) {
        for (std::size_t i : it->second) {
          if (Distance(points_[i], center) <= radius) hits.push_back(i);
        }
      }
      int a = 0;
      for (; a < n_; ++a) {
        if (++idx[a] <= last[a]) break;
        idx[a] = first[a];
      }
      if (a == n_) break;
    }
    // Hash collisions may list a point twice; visiting order is by index.
    std::sort(hits.begin(), hits.end());
    hits.erase(std::unique(hits.begin(), hits.end()), hits.end());
  }
  for (std::size_t i : hits) visit(i);
}

BallSystem FindBallSystem(const WeightedCloud& cloud, double delta,
                          const BallSystemOptions& options) {
  if (!(delta > 0.0)) throw Refusal(kModule, "ball system tolerance must be positive");
  const int m = options.m;
  const int n = cloud.n;
  double residual = cloud.PartWeight(Part::kU);
  if (!(residual > 0.0)) throw Refusal(kModule, "E has an empty U part: nothing to cover");

  BallSystem sys;
  sys.m = m;
  sys.delta = delta;
  const double total = cloud.TotalWeight();

  Vec lo = cloud.points.front();
  Vec hi = lo;
  for (const Vec& p : cloud.points) {
    for (int a = 0; a < n; ++a) {
      lo[a] = std::min(lo[a], p[a]);
      hi[a] = std::max(hi[a], p[a]);
    }
  }
  const double diam = std::max(Distance(lo, hi), 1e-300);

  std::vector<std::size_t> u_points;
  for (std::size_t i = 0; i < cloud.size(); ++i) {
    if (cloud.parts[i] == Part::kU && cloud.weights[i] > 0.0) u_points.push_back(i);
  }
  std::vector<char> covered(cloud.size(), 0);
  const double kappa = options.radius_factor;

  int t = static_cast<int>(std::floor(std::log(kappa / (kappa * diam)) / std::log(4.0))) - 1;
  const int t_last = t + 60;
  for (; t <= t_last && residual >= delta; ++t) {
    const double quarter = std::pow(4.0, -t);
    const double r = kappa * quarter;
    if (r > options.max_radius || r > kappa * diam) continue;
    if (r < 1e-12 * diam) break;
    const double rm = std::pow(r, m);
    const PointIndex index(cloud.points, n, r);

    // Most central points of their aligned 4^-t cells first.
    std::vector<std::pair<double, std::size_t>> order;
    order.reserve(u_points.size());
    for (std::size_t i : u_points) {
      if (covered[i]) continue;
      double d2 = 0.0;
      for (int a = 0; a < n; ++a) {
        const double c = (std::floor(cloud.points[i][a] / quarter) + 0.5) * quarter;
        d2 += (cloud.points[i][a] - c) * (cloud.points[i][a] - c);
      }
      order.emplace_back(std::sqrt(d2) / quarter, i);
    }
    std::sort(order.begin(), order.end());

    for (const auto& [key, i] : order) {
      if (residual < delta) break;
      if (covered[i]) continue;
      const Vec& x = cloud.points[i];
      bool disjoint = true;
      for (const Ball& b : sys.balls) {
        if (Distance(x, b.center) <= r + b.radius) {
          disjoint = false;
          break;
        }
      }
      if (!disjoint) continue;
      Ball ball;
      ball.center = x;
      ball.radius = r;
      ball.center_index = i;
      index.ForEachInBall(x, r, [&](std::size_t k) {
        (cloud.parts[k] == Part::kU ? ball.u_weight : ball.r_weight) += cloud.weights[k];
      });
      ball.remainder_small = {"(E\\U)(B) < delta r^m", ball.r_weight, delta * rm, true};
      ball.u_large = {"r^m/2 < U(B)", 0.5 * rm, ball.u_weight, true};
      if (!ball.remainder_small.holds() || !ball.u_large.holds()) continue;
      ball.u_upper_bound_ok = ball.u_weight <= std::pow(2.0, m + 1) * rm;
      if (!ball.u_upper_bound_ok) {
        sys.log.push_back("ball " + std::to_string(sys.balls.size()) +
                          ": U(B) exceeds 2^{m+1} r^m");
      }
      index.ForEachInBall(x, r, [&](std::size_t k) {
        if (cloud.parts[k] == Part::kU && !covered[k]) {
          covered[k] = 1;
          residual -= cloud.weights[k];
        }
      });
      sys.balls.push_back(ball);
    }
  }
  // Recompute the residual exactly instead of trusting the running sum.
  double outside = 0.0;
  for (std::size_t i : u_points) {
    if (!covered[i]) outside += cloud.weights[i];
  }
  sys.residual = {"U(outside balls) < delta", outside, delta, true};
  if (!sys.residual.holds()) {
    throw Refusal(kModule, "no admissible ball system: residual U weight " +
                               std::to_string(outside) + " >= delta " +
                               std::to_string(delta));
  }

  double r_min = std::numeric_limits<double>::infinity();
  double r_max = 0.0;
  double remainder = 0.0;
  for (const Ball& b : sys.balls) {
    r_min = std::min(r_min, b.radius);
    r_max = std::max(r_max, b.radius);
    remainder += b.r_weight;
  }
  sys.remainder_total = {"sum (E\\U)(B_k) < 2 delta E", remainder, 2.0 * delta * total, true};

  const PointIndex index(cloud.points, n, std::max(r_max, r_min));
  for (int s = 0; s <= options.max_eta_halvings; ++s) {
    const double eta = std::ldexp(r_min, -s);
    bool disjoint = true;
    for (std::size_t a = 0; a < sys.balls.size() && disjoint; ++a) {
      for (std::size_t b = a + 1; b < sys.balls.size(); ++b) {
        if (Distance(sys.balls[a].center, sys.balls[b].center) <=
            sys.balls[a].radius + sys.balls[b].radius + 2.0 * eta) {
          disjoint = false;
          break;
        }
      }
    }
    if (!disjoint) continue;
    double annulus = 0.0;
    for (const Ball& b : sys.balls) {
      index.ForEachInBall(b.center, b.radius + eta, [&](std::size_t k) {
        if (Distance(cloud.points[k], b.center) > b.radius) annulus += cloud.weights[k];
      });
    }
    if (annulus < delta) {
      sys.eta = eta;
      sys.annulus = {"sum E(annuli) < delta", annulus, delta, true};
      return sys;
    }
  }
  throw Refusal(kModule, "no padding eta keeps the balls disjoint with small annuli");
}

}  // namespace rectlab
