#pragma once

// Exponentials, logarithms and projections on the unitary group.

#include "lrange/core.hpp"

namespace lrange {

/// exp(K) for skew-Hermitian K, via the eigendecomposition of the Hermitian -iK.
CMatrix expm_skew(const CMatrix& k);

/// Principal logarithm of a unitary W: skew-Hermitian K with exp(K) = W and
/// eigenvalue phases in (-pi, pi]. Phases at -pi are mapped to +pi.
CMatrix logm_unitary(const CMatrix& w);

/// Closest unitary in Frobenius norm (polar factor).
CMatrix nearest_unitary(const CMatrix& a);

/// Frobenius inner product Re tr(A* B).
double real_inner(const CMatrix& a, const CMatrix& b);

/// Geodesic t -> U exp(t log(U* V)) with the spectral data of log(U* V)
/// precomputed, so evaluating a point costs two small products.
class UnitaryPath {
 public:
  UnitaryPath(const UnitaryMatrix& start, const UnitaryMatrix& end);

  UnitaryMatrix at(double t) const;
  CMatrix at_raw(double t) const;

  /// Skew-Hermitian generator log(U* V).
  CMatrix generator() const;

 private:
  CMatrix start_;
  CMatrix basis_;    // unitary Schur basis of U* V
  RealVector phases_;
};

}  // namespace lrange
