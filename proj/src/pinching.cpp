#include "lrange/pinching.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "lrange/errors.hpp"
#include "lrange/rng.hpp"

namespace lrange {

void Pinching::validate(int n) const {
  if (s < 0 || t >= n || s >= t) {
    throw DimensionError("pinching indices must satisfy 1 <= s < t <= n (got s=" + std::to_string(s + 1) +
                         ", t=" + std::to_string(t + 1) + ", n=" + std::to_string(n) + ")");
  }
  if (!(alpha >= 0.0 && alpha <= 1.0)) throw DimensionError("pinching alpha must lie in [0, 1]");
}

PinchChain::PinchChain(int n, std::vector<Pinching> steps) : n_(n), steps_(std::move(steps)) {
  if (n_ < 1) throw DimensionError("pinch chain dimension must be >= 1");
  for (const auto& p : steps_) p.validate(n_);
}

PinchChain compose(const PinchChain& left, const PinchChain& right) {
  if (left.dim() != right.dim()) throw DimensionError("cannot compose pinch chains of different dimension");
  std::vector<Pinching> steps = left.steps();
  steps.insert(steps.end(), right.steps().begin(), right.steps().end());
  return PinchChain(left.dim(), std::move(steps));
}

RMatrix pinch_matrix(const Pinching& p, int n) {
  p.validate(n);
  RMatrix m = RMatrix::Identity(n, n);
  m(p.s, p.s) = p.alpha;
  m(p.t, p.t) = p.alpha;
  m(p.s, p.t) = 1.0 - p.alpha;
  m(p.t, p.s) = 1.0 - p.alpha;
  return m;
}

RMatrix chain_product(const PinchChain& chain) {
  RMatrix prod = RMatrix::Identity(chain.dim(), chain.dim());
  for (const auto& p : chain.steps()) prod = prod * pinch_matrix(p, chain.dim());
  return prod;
}

void apply_pinching(const Pinching& p, RealVector& d) {
  const double ds = d[p.s];
  const double dt = d[p.t];
  d[p.s] = p.alpha * ds + (1.0 - p.alpha) * dt;
  d[p.t] = (1.0 - p.alpha) * ds + p.alpha * dt;
}

DiagonalTuple apply_chain(const PinchChain& chain, const DiagonalTuple& d) {
  if (chain.dim() != d.dim()) throw DimensionError("apply_chain: chain and tuple dimensions differ");
  std::vector<RealVector> out = d.vectors();
  for (auto& v : out) {
    for (auto it = chain.steps().rbegin(); it != chain.steps().rend(); ++it) apply_pinching(*it, v);
  }
  return DiagonalTuple(std::move(out));
}

RMatrix ScalingTarget::matrix() const {
  if (n < 1) throw DimensionError("scaling target needs n >= 1");
  if (!(alpha >= 0.0 && alpha <= 1.0)) throw DimensionError("scaling target alpha must lie in [0, 1]");
  return alpha * RMatrix::Identity(n, n) + RMatrix::Constant(n, n, (1.0 - alpha) / n);
}

namespace {

// Left-multiplying a pinching onto `prod` only rewrites rows s and t.
void left_apply(const Pinching& p, RMatrix& prod) {
  const Eigen::RowVectorXd rs = prod.row(p.s);
  const Eigen::RowVectorXd rt = prod.row(p.t);
  prod.row(p.s) = p.alpha * rs + (1.0 - p.alpha) * rt;
  prod.row(p.t) = (1.0 - p.alpha) * rs + p.alpha * rt;
}

// Pinchings are recorded in application order (first applied first) and
// reversed into chain order at the end.
struct Construction {
  RMatrix product;
  std::vector<Pinching> applied;
  std::vector<double> trace;

  double error(const RMatrix& target) const { return (product - target).norm(); }

  PinchChain chain(int n) const {
    return PinchChain(n, std::vector<Pinching>(applied.rbegin(), applied.rend()));
  }
};

// Greedy steps until tol, stall or budget. Returns when no candidate improves.
void greedy(Construction& c, const RMatrix& target, double tol, std::size_t budget, std::size_t& evaluations) {
  const int n = static_cast<int>(target.rows());
  double current = c.error(target);
  if (c.trace.empty()) c.trace.push_back(current);
  while (current > tol && evaluations < budget) {
    double best_sq = current * current;
    Pinching best{0, 1, 1.0};
    bool improved = false;
    for (int s = 0; s < n && evaluations < budget; ++s) {
      for (int t = s + 1; t < n && evaluations < budget; ++t) {
        ++evaluations;
        const Eigen::RowVectorXd rs = c.product.row(s);
        const Eigen::RowVectorXd rt = c.product.row(t);
        const Eigen::RowVectorXd d = rs - rt;
        const double a = d.squaredNorm();
        if (a == 0.0) continue;
        // New rows: s -> rt + beta d, t -> rs - beta d; minimize the sum of
        // squared distances to the target rows.
        const Eigen::RowVectorXd es = rt - target.row(s);
        const Eigen::RowVectorXd et = rs - target.row(t);
        const double beta = std::clamp((d.dot(et) - d.dot(es)) / (2.0 * a), 0.0, 1.0);
        const double old_rows = (rs - target.row(s)).squaredNorm() + (rt - target.row(t)).squaredNorm();
        const double new_rows = (es + beta * d).squaredNorm() + (et - beta * d).squaredNorm();
        const double candidate = current * current - old_rows + new_rows;
        if (candidate < best_sq * (1.0 - 1e-12)) {
          best_sq = candidate;
          best = Pinching{s, t, beta};
          improved = true;
        }
      }
    }
    if (!improved) break;
    left_apply(best, c.product);
    c.applied.push_back(best);
    // Recompute rather than trust the incremental update.
    const double next = c.error(target);
    if (next > current) {
      // Rounding only; undo and stop so the trace stays monotone.
      c.applied.pop_back();
      c.product = RMatrix::Identity(n, n);
      for (const auto& p : c.applied) left_apply(p, c.product);
      break;
    }
    current = next;
    c.trace.push_back(current);
  }
}

// Symmetric splitting of exp(-tau (I - J)), tau = -log(alpha), using
// n (I - J) = sum_{s<t} w w^T with w = e_s - e_t. Each factor exp(-delta w w^T)
// is the pinching with alpha = (1 + e^{-2 delta}) / 2.
Construction splitting(int n, double alpha, int sweeps) {
  const double tau = -std::log(alpha);
  const double delta = tau / (2.0 * n * sweeps);
  const double beta = 0.5 * (1.0 + std::exp(-2.0 * delta));
  std::vector<std::pair<int, int>> pairs;
  for (int s = 0; s < n; ++s) {
    for (int t = s + 1; t < n; ++t) pairs.emplace_back(s, t);
  }
  Construction c{RMatrix::Identity(n, n), {}, {}};
  for (int k = 0; k < sweeps; ++k) {
    for (const auto& [s, t] : pairs) c.applied.push_back({s, t, beta});
    for (auto it = pairs.rbegin(); it != pairs.rend(); ++it) c.applied.push_back({it->first, it->second, beta});
  }
  for (const auto& p : c.applied) left_apply(p, c.product);
  return c;
}

// Round-robin pairwise averaging, which converges to J_n.
Construction averaging_sweeps(int n, int sweeps) {
  Construction c{RMatrix::Identity(n, n), {}, {}};
  for (int k = 0; k < sweeps; ++k) {
    for (int s = 0; s < n; ++s) {
      for (int t = s + 1; t < n; ++t) {
        c.applied.push_back({s, t, 0.5});
        left_apply(c.applied.back(), c.product);
      }
    }
  }
  return c;
}

}  // namespace

SynthesisResult synth_scaling(const ScalingTarget& target, double tol, std::size_t budget) {
  if (!(tol > 0.0)) throw DimensionError("synth_scaling needs tol > 0");
  const RMatrix goal = target.matrix();
  const int n = target.n;
  const std::size_t pairs = static_cast<std::size_t>(n) * static_cast<std::size_t>(n - 1) / 2;

  SynthesisResult result;
  result.chain = PinchChain(n);
  if (n == 1 || target.alpha == 1.0) {
    result.achieved_error = (RMatrix::Identity(n, n) - goal).norm();
    result.error_trace = {result.achieved_error};
    result.reached_tol = result.achieved_error <= tol;
    return result;
  }

  std::size_t evaluations = 0;
  Construction greedy_only{RMatrix::Identity(n, n), {}, {}};
  greedy(greedy_only, goal, tol, budget, evaluations);
  Construction best = greedy_only;

  if (best.error(goal) > tol && evaluations < budget) {
    // Smallest seed construction that meets tol (or the last affordable one),
    // then greedy polishing from there.
    Construction seeded{RMatrix::Identity(n, n), {}, {}};
    bool have_seed = false;
    for (int sweeps = 1; evaluations < budget; sweeps *= 2) {
      const std::size_t cost = 2 * pairs * static_cast<std::size_t>(sweeps);
      if (have_seed && evaluations + cost > budget) break;
      evaluations += cost;
      seeded = target.alpha > 0.0 ? splitting(n, target.alpha, sweeps) : averaging_sweeps(n, 2 * sweeps);
      have_seed = true;
      if (seeded.error(goal) <= tol || sweeps >= (1 << 20)) break;
    }
    if (have_seed) {
      seeded.trace = {seeded.error(goal)};
      greedy(seeded, goal, tol, budget, evaluations);
      if (seeded.error(goal) < best.error(goal)) {
        best = std::move(seeded);
        result.used_splitting = true;
      }
    }
  }

  result.chain = best.chain(n);
  result.achieved_error = best.error(goal);
  result.error_trace = std::move(best.trace);
  result.evaluations = evaluations;
  result.reached_tol = result.achieved_error <= tol;
  return result;
}

PinchChain random_chain(int n, int k, std::uint64_t seed) {
  if (n < 2 && k > 0) throw DimensionError("random_chain needs n >= 2 for a non-empty chain");
  if (k < 0) throw DimensionError("random_chain needs k >= 0");
  CounterRng rng(seed);
  std::vector<Pinching> steps;
  steps.reserve(static_cast<std::size_t>(k));
  const auto pairs = static_cast<std::uint64_t>(n) * static_cast<std::uint64_t>(n - 1) / 2;
  for (int j = 0; j < k; ++j) {
    auto index = rng.below(pairs);
    int s = 0;
    // Unrank the pair (s, t), s < t, in lexicographic order.
    while (index >= static_cast<std::uint64_t>(n - 1 - s)) {
      index -= static_cast<std::uint64_t>(n - 1 - s);
      ++s;
    }
    const int t = s + 1 + static_cast<int>(index);
    steps.push_back({s, t, rng.uniform()});
  }
  return PinchChain(n, std::move(steps));
}

}  // namespace lrange
