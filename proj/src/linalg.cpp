#include "lrange/linalg.hpp"

#include <cmath>
#include <numbers>

#include "lrange/errors.hpp"

namespace lrange {

CMatrix expm_skew(const CMatrix& k) {
  // K = iH with H = -iK Hermitian, so exp(K) = W diag(e^{i lambda}) W*.
  const CMatrix h = Complex(0.0, -1.0) * k;
  Eigen::SelfAdjointEigenSolver<CMatrix> solver(0.5 * (h + h.adjoint()));
  if (solver.info() != Eigen::Success) {
    throw ConvergenceError("expm_skew: eigensolver failed", std::numeric_limits<double>::infinity());
  }
  const CMatrix& w = solver.eigenvectors();
  Eigen::VectorXcd phases(w.cols());
  for (Eigen::Index j = 0; j < w.cols(); ++j) phases[j] = std::polar(1.0, solver.eigenvalues()[j]);
  return w * phases.asDiagonal() * w.adjoint();
}

namespace {

// Schur form of a unitary (normal) matrix is diagonal up to rounding.
void unitary_spectrum(const CMatrix& w, CMatrix& basis, RealVector& phases) {
  Eigen::ComplexSchur<CMatrix> schur(w);
  if (schur.info() != Eigen::Success) {
    throw ConvergenceError("logm_unitary: Schur decomposition failed", std::numeric_limits<double>::infinity());
  }
  basis = schur.matrixU();
  const CMatrix& t = schur.matrixT();
  phases.resize(t.rows());
  for (Eigen::Index j = 0; j < t.rows(); ++j) {
    double phase = std::arg(t(j, j));
    if (phase <= -std::numbers::pi) phase = std::numbers::pi;
    phases[j] = phase;
  }
}

}  // namespace

CMatrix logm_unitary(const CMatrix& w) {
  CMatrix basis;
  RealVector phases;
  unitary_spectrum(w, basis, phases);
  const CMatrix k = basis * (Complex(0.0, 1.0) * phases.cast<Complex>()).asDiagonal() * basis.adjoint();
  return 0.5 * (k - k.adjoint());
}

CMatrix nearest_unitary(const CMatrix& a) {
  Eigen::JacobiSVD<CMatrix> svd(a, Eigen::ComputeFullU | Eigen::ComputeFullV);
  return svd.matrixU() * svd.matrixV().adjoint();
}

double real_inner(const CMatrix& a, const CMatrix& b) { return (a.adjoint() * b).trace().real(); }

UnitaryPath::UnitaryPath(const UnitaryMatrix& start, const UnitaryMatrix& end) : start_(start.matrix()) {
  if (start.dim() != end.dim()) throw DimensionError("unitary path endpoints differ in dimension");
  unitary_spectrum(start.matrix().adjoint() * end.matrix(), basis_, phases_);
}

CMatrix UnitaryPath::at_raw(double t) const {
  Eigen::VectorXcd diag(phases_.size());
  for (Eigen::Index j = 0; j < phases_.size(); ++j) diag[j] = std::polar(1.0, t * phases_[j]);
  return start_ * (basis_ * diag.asDiagonal() * basis_.adjoint());
}

UnitaryMatrix UnitaryPath::at(double t) const { return UnitaryMatrix(at_raw(t)); }

CMatrix UnitaryPath::generator() const {
  const CMatrix k = basis_ * (Complex(0.0, 1.0) * phases_.cast<Complex>()).asDiagonal() * basis_.adjoint();
  return 0.5 * (k - k.adjoint());
}

}  // namespace lrange
