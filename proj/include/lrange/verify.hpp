#pragma once

// Sampling W_L(A) and certifying the structural properties of L-numerical
// ranges: star-shapedness about the trace center, convexity in the regimes
// where it is known, inclusion under off-diagonal damping, and the l = 4
// instance where pinching inclusion fails.

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "lrange/core.hpp"
#include "lrange/optimize.hpp"
#include "lrange/pinching.hpp"
#include "lrange/rng.hpp"

namespace lrange {

struct PointCloud {
  int l = 0;
  std::vector<RealPoint> points;
  std::uint64_t seed = 0;
  std::size_t count = 0;
};

/// Seed of the Haar unitary behind sample j.
inline std::uint64_t sample_seed(std::uint64_t seed, std::size_t j) { return derive_seed(seed, j); }

PointCloud sample_orbit_cloud(const LinearMapSpec& map, const HermitianTuple& a, std::size_t count,
                              std::uint64_t seed);

struct CertFailure {
  std::size_t index = 0;   // sample index
  std::uint64_t seed = 0;  // seed that reproduces the sampled unitary
  double alpha = 0.0;      // star checks; epsilon for inclusion checks
  double residual = 0.0;
  std::string detail;
};

struct CertReport {
  std::string kind;  // "star", "convex", "inclusion", "counterexample"
  std::size_t checked = 0;
  std::vector<CertFailure> failures;
  double max_residual = 0.0;
  /// Worst reported synthesis error (star checks only).
  double max_synthesis_error = 0.0;

  bool pass() const { return failures.empty(); }
  void record(std::size_t index, std::uint64_t seed, double alpha, double residual, double tol, std::string detail = {});
};

std::vector<double> default_alpha_grid();

/// For each of `samples` Haar unitaries U and each alpha, builds a star point
/// witness and checks its residual against tol.
CertReport check_star_shaped(const LinearMapSpec& map, const DiagonalTuple& d, std::size_t samples,
                             const std::vector<double>& alphas, double tol, std::uint64_t seed);

/// Midpoints of sampled point pairs must lie within tol of W_L(A).
CertReport check_convex(const LinearMapSpec& map, const HermitianTuple& a, std::size_t pairs, double tol,
                        std::uint64_t seed, const DescentOptions& opts = {});

/// A_k(eps): off-diagonal entries scaled by eps, diagonal kept.
HermitianTuple scale_offdiag(const HermitianTuple& a, double eps);

/// Points of W_L(A(eps)) must lie within tol of W_L(A). Needs l = 2.
CertReport check_ct_inclusion(const LinearMapSpec& map, const HermitianTuple& a, double eps, std::size_t samples,
                              double tol, std::uint64_t seed, const DescentOptions& opts = {});

struct Counterexample {
  DiagonalTuple d;
  DiagonalTuple dhat;
  LinearMapSpec map;
  PinchChain chain;
  RealPoint target;  // (1, 0, ..., 0)
};

/// D = (dg(1, 0, ..., 0), 0, ..., 0), D_hat its (1, 2) half pinching, and the
/// map whose first four rows read X_1 through P, Q, R, S.
Counterexample counterexample_instance(int n, int m, int l);

/// Exact min distance from (1, 0, ..., 0) to W_L(D) for the instance above.
/// With s = |u_1|^2 + |u_2|^2 for the first row u of U, distance^2 =
/// (s - 1)^2 + s^2. For n = 2, s = 1 and the distance is 1; for n >= 3,
/// s ranges over [0, 1] and the minimum is sqrt(1/2).
double counterexample_analytic_distance(int n);

struct CounterexampleReport {
  double hat_distance = 0.0;   // (1, 0, ..., 0) to W_L(D_hat)
  double distance = 0.0;       // best found, to W_L(D)
  int restarts = 0;
  double analytic_distance = 0.0;
  bool pass = false;           // hat_distance <= 1e-10 and |distance - analytic| <= 1e-3
};

CounterexampleReport run_counterexample(int n, int m, int l, int restarts, std::uint64_t seed);

}  // namespace lrange
