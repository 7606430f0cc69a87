#pragma once

// Pinching matrices and finite products of them.
//
// A pinching P(s, t, alpha) mixes coordinates s and t with weights alpha and
// 1 - alpha and fixes every other coordinate. Indices are 0-based in code and
// 1-based in JSON.

#include <cstddef>
#include <cstdint>
#include <vector>

#include "lrange/core.hpp"

namespace lrange {

struct Pinching {
  int s = 0;
  int t = 1;
  double alpha = 1.0;

  void validate(int n) const;
  friend bool operator==(const Pinching&, const Pinching&) = default;
};

/// Ordered pinchings P_1, ..., P_k acting as d_hat = P_1 P_2 ... P_k d, so
/// P_k is applied first.
class PinchChain {
 public:
  PinchChain() = default;
  explicit PinchChain(int n, std::vector<Pinching> steps = {});

  int dim() const { return n_; }
  std::size_t size() const { return steps_.size(); }
  bool empty() const { return steps_.empty(); }
  const std::vector<Pinching>& steps() const { return steps_; }
  const Pinching& operator[](std::size_t j) const { return steps_[j]; }

  friend bool operator==(const PinchChain&, const PinchChain&) = default;

 private:
  int n_ = 0;
  std::vector<Pinching> steps_;
};

/// Chain whose product is product(left) * product(right).
PinchChain compose(const PinchChain& left, const PinchChain& right);

RMatrix pinch_matrix(const Pinching& p, int n);

/// Dense P_1 P_2 ... P_k.
RMatrix chain_product(const PinchChain& chain);

/// In-place P d for one pinching.
void apply_pinching(const Pinching& p, RealVector& d);

DiagonalTuple apply_chain(const PinchChain& chain, const DiagonalTuple& d);

/// S(alpha) = alpha I_n + (1 - alpha) J_n, J_n the all-1/n matrix.
struct ScalingTarget {
  int n = 2;
  double alpha = 0.0;

  RMatrix matrix() const;
};

struct SynthesisResult {
  PinchChain chain;
  /// ||product(chain) - S(alpha)||_F
  double achieved_error = 0.0;
  /// Error after each accepted step of the final construction; non-increasing.
  std::vector<double> error_trace;
  /// Candidate pinchings evaluated, counted against the budget.
  std::size_t evaluations = 0;
  bool reached_tol = false;
  /// True when the operator-splitting construction seeded the chain.
  bool used_splitting = false;
};

inline constexpr double kDefaultSynthesisTol = 1e-2;
inline constexpr std::size_t kDefaultSynthesisBudget = 100000;

/// Finite pinching product approximating S(alpha).
///
/// Greedy descent first: each step tries every pair (s, t), takes the best
/// alpha for it in closed form (the error is a convex quadratic in alpha), and
/// left-multiplies the winner onto the running product. Greedy is exact for
/// n = 2 and converges for alpha = 0, but it can stall for 0 < alpha < 1.
/// Stalls fall back to symmetric operator splitting of
/// S(alpha) = exp(log(alpha) (I - J)), whose factors are exact pinchings and
/// whose error decays as O(K^-2) in the number of sweeps K, followed by greedy
/// polishing. The error is reported whether or not tol was reached.
SynthesisResult synth_scaling(const ScalingTarget& target, double tol = kDefaultSynthesisTol,
                              std::size_t budget = kDefaultSynthesisBudget);

PinchChain random_chain(int n, int k, std::uint64_t seed);

}  // namespace lrange
