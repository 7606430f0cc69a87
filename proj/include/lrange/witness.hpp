#pragma once

// Explicit unitaries certifying that points of W_L(D_hat) for a pinched
// diagonal tuple D_hat lie in W_L(D), for maps into R^l with l <= 3.
//
// For a single pinching at indices (1, 2) the target y = L(U* D_hat U) is a
// convex combination of two points of the slice E_L(D, U), so it sits inside
// that ellipsoid. Along the geodesic from U to a unitary V whose slice is flat,
// y must cross the ellipsoid surface; the crossing gives the witness
// T(theta, phi) f(t).

#include <cstddef>

#include "lrange/core.hpp"
#include "lrange/pinching.hpp"

namespace lrange {

struct Witness {
  UnitaryMatrix uprime;
  double theta = 0.0;
  double phi = 0.0;
  double t = 0.0;
  double residual = 0.0;  // ||L(uprime* D uprime) - target||
};

/// f(t) = U exp(t log(U* V)).
UnitaryMatrix unitary_path(const UnitaryMatrix& u, const UnitaryMatrix& v, double t);

inline constexpr int kPathGridPoints = 200;
inline constexpr int kBisectionSteps = 60;

/// Witness for y = L(U* D_hat U), D_hat = p applied to D. Needs l <= 3, and
/// n >= 3 when l == 3.
Witness single_pinch_witness(const DiagonalTuple& d, const LinearMapSpec& map, const Pinching& p,
                             const UnitaryMatrix& u, double tol);

/// Witness for y0 = L(U* D_hat U), D_hat = chain applied to D, built by
/// peeling one pinching at a time. Residual is measured against y0.
Witness chain_witness(const DiagonalTuple& d, const LinearMapSpec& map, const PinchChain& chain,
                      const UnitaryMatrix& u, double tol);

struct StarWitness {
  Witness witness;            // residual against the exact star point
  RealPoint target;
  double chain_residual = 0.0;
  double synthesis_error = 0.0;   // ||product(chain) - S(alpha)||_F
  double synthesis_bound = 0.0;   // ||L||_F * synthesis_error * ||d||_F
  std::size_t chain_length = 0;
};

/// Witness for alpha L(U* D U) + (1 - alpha) star_center(L, D).
StarWitness star_point_witness(const DiagonalTuple& d, const LinearMapSpec& map, const UnitaryMatrix& u,
                               double alpha, double tol);

/// Same, reusing a synthesized chain for S(alpha).
StarWitness star_point_witness(const DiagonalTuple& d, const LinearMapSpec& map, const UnitaryMatrix& u,
                               double alpha, double tol, const SynthesisResult& synthesis);

/// Synthesis tolerance that keeps the propagated synthesis error of a star
/// witness under tol / 2.
double star_synthesis_tol(const DiagonalTuple& d, const LinearMapSpec& map, double tol);

}  // namespace lrange
