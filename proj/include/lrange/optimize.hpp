#pragma once

// Distance and support queries on W_L(A) by descent on the unitary group.
//
// Directions live in the Lie algebra at U: a skew-Hermitian K moves U to
// U exp(eps K). Local search cannot prove nonmembership; results report the
// best distance found over restarts.

#include <cstdint>
#include <optional>

#include "lrange/core.hpp"

namespace lrange {

struct DescentOptions {
  int restarts = 8;
  int max_iter = 2000;
  double step = 0.1;
  double tol = 1e-10;  // on ||G||_F
  std::uint64_t seed = 0;
  double membership_tol = kOptimizationTol;
  /// Start of restart 0; identity when unset. Later restarts are Haar.
  std::optional<UnitaryMatrix> initial;
};

struct MembershipResult {
  UnitaryMatrix ubest;
  double distance = 0.0;
  int iterations = 0;     // of the best restart
  int restarts_used = 0;
  bool member = false;    // distance <= membership_tol
};

/// G = sum_k r_k sum_i [U* A_i U, C[k][i]], r = 2 (L(U* A U) - y); the
/// gradient of F(U) = ||L(U* A U) - y||^2 in the sense dF(U exp(eps K))/d eps
/// = Re tr(G* K).
CMatrix gradient(const LinearMapSpec& map, const HermitianTuple& a, const UnitaryMatrix& u, const RealPoint& y);

/// F at U.
double orbit_objective(const LinearMapSpec& map, const HermitianTuple& a, const CMatrix& u, const RealPoint& y);

struct DescentTrace {
  CMatrix u;
  double value = 0.0;
  int iterations = 0;
  bool monotone = true;     // accepted steps never increased the objective
  double max_unitarity_defect = 0.0;
};

/// One local descent of F from `start`.
DescentTrace descend_distance(const LinearMapSpec& map, const HermitianTuple& a, const RealPoint& y,
                              const CMatrix& start, const DescentOptions& opts);

/// min over U of ||L(U* A U) - y|| by restarted descent; stops early once a
/// restart reaches membership_tol.
MembershipResult orbit_distance(const LinearMapSpec& map, const HermitianTuple& a, const RealPoint& y,
                                const DescentOptions& opts = {});

/// max over U of <w, L(U* A U)> by restarted ascent.
double support_value(const LinearMapSpec& map, const HermitianTuple& a, const RealVector& w,
                     const DescentOptions& opts = {});

}  // namespace lrange
