#include "lrange/core.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <span>
#include <sstream>
#include <string>

#include "lrange/errors.hpp"
#include "lrange/kernels.hpp"
#include "lrange/rng.hpp"

namespace lrange {

namespace {

std::span<const Complex> entries(const CMatrix& m) {
  return {m.data(), static_cast<std::size_t>(m.size())};
}

std::string describe(double value) {
  std::ostringstream os;
  os.precision(3);
  os << std::scientific << value;
  return os.str();
}

}  // namespace

// --- HermitianMatrix -------------------------------------------------------

HermitianMatrix::HermitianMatrix(const CMatrix& entries) {
  if (entries.rows() != entries.cols()) throw DimensionError("Hermitian matrix must be square");
  if (entries.rows() < 1) throw DimensionError("Hermitian matrix must have dimension >= 1");
  if (!entries.allFinite()) throw InvariantError("Hermitian matrix has non-finite entries");
  const double defect = (entries - entries.adjoint()).norm();
  const double scale = std::max(1.0, entries.norm());
  if (defect > kConstructionTol * scale) {
    throw InvariantError("matrix is not Hermitian: ||A - A*||_F = " + describe(defect));
  }
  m_ = 0.5 * (entries + entries.adjoint());
}

HermitianMatrix resymmetrized(const CMatrix& entries) {
  return HermitianMatrix(CMatrix(0.5 * (entries + entries.adjoint())), HermitianMatrix::Trusted{});
}

HermitianMatrix HermitianMatrix::zero(int n) { return scalar(n, 0.0); }

HermitianMatrix HermitianMatrix::identity(int n) { return scalar(n, 1.0); }

HermitianMatrix HermitianMatrix::scalar(int n, double value) {
  if (n < 1) throw DimensionError("dimension must be >= 1");
  return HermitianMatrix(CMatrix(CMatrix::Identity(n, n) * value), Trusted{});
}

HermitianMatrix HermitianMatrix::diagonal(const RealVector& d) {
  if (d.size() < 1) throw DimensionError("diagonal must be non-empty");
  if (!d.allFinite()) throw InvariantError("diagonal has non-finite entries");
  return HermitianMatrix(CMatrix(d.cast<Complex>().asDiagonal()), Trusted{});
}

// --- UnitaryMatrix ---------------------------------------------------------

UnitaryMatrix::UnitaryMatrix(CMatrix entries) : u_(std::move(entries)) {
  if (u_.rows() != u_.cols() || u_.rows() < 1) throw DimensionError("unitary matrix must be square, n >= 1");
  const double defect = unitarity_defect();
  if (!(defect <= kIdentityTol)) {
    throw InvariantError("matrix is not unitary: ||U*U - I||_F = " + describe(defect));
  }
}

UnitaryMatrix UnitaryMatrix::identity(int n) { return UnitaryMatrix(CMatrix::Identity(n, n)); }

UnitaryMatrix UnitaryMatrix::adjoint() const { return UnitaryMatrix(CMatrix(u_.adjoint())); }

double UnitaryMatrix::unitarity_defect() const {
  return (u_.adjoint() * u_ - CMatrix::Identity(u_.rows(), u_.cols())).norm();
}

UnitaryMatrix operator*(const UnitaryMatrix& a, const UnitaryMatrix& b) {
  if (a.dim() != b.dim()) throw DimensionError("unitary product dimension mismatch");
  return UnitaryMatrix(CMatrix(a.matrix() * b.matrix()));
}

// --- Tuples ----------------------------------------------------------------

HermitianTuple::HermitianTuple(std::vector<HermitianMatrix> items) : items_(std::move(items)) {
  if (items_.empty()) throw DimensionError("tuple must have m >= 1 items");
  const int n = items_.front().dim();
  for (const auto& item : items_) {
    if (item.dim() != n) throw DimensionError("tuple items must share the same dimension");
  }
}

DiagonalTuple::DiagonalTuple(std::vector<RealVector> vectors) : vectors_(std::move(vectors)) {
  if (vectors_.empty()) throw DimensionError("diagonal tuple must have m >= 1 vectors");
  const auto n = vectors_.front().size();
  if (n < 1) throw DimensionError("diagonal tuple vectors must be non-empty");
  for (const auto& v : vectors_) {
    if (v.size() != n) throw DimensionError("diagonal tuple vectors must share the same length");
    if (!v.allFinite()) throw InvariantError("diagonal tuple has non-finite entries");
  }
}

HermitianTuple DiagonalTuple::to_hermitian() const {
  std::vector<HermitianMatrix> items;
  items.reserve(vectors_.size());
  for (const auto& v : vectors_) items.push_back(HermitianMatrix::diagonal(v));
  return HermitianTuple(std::move(items));
}

DiagonalTuple DiagonalTuple::traceless() const {
  std::vector<RealVector> shifted;
  shifted.reserve(vectors_.size());
  for (const auto& v : vectors_) shifted.push_back(v.array() - v.mean());
  return DiagonalTuple(std::move(shifted));
}

// --- LinearMapSpec ---------------------------------------------------------

LinearMapSpec::LinearMapSpec(int n, std::vector<std::vector<HermitianMatrix>> coeffs)
    : n_(n), coeffs_(std::move(coeffs)) {
  if (n_ < 1) throw DimensionError("linear map dimension must be >= 1");
  if (coeffs_.empty()) throw DimensionError("linear map must have l >= 1 rows");
  const auto m = coeffs_.front().size();
  if (m == 0) throw DimensionError("linear map must act on m >= 1 matrices");
  for (const auto& row : coeffs_) {
    if (row.size() != m) throw DimensionError("linear map rows must all have m coefficients");
    for (const auto& c : row) {
      if (c.dim() != n_) throw DimensionError("linear map coefficient has wrong dimension");
    }
  }
}

LinearMapSpec LinearMapSpec::zero(int l, int m, int n) {
  if (l < 1 || m < 1) throw DimensionError("linear map needs l >= 1 and m >= 1");
  std::vector<std::vector<HermitianMatrix>> coeffs(
      static_cast<std::size_t>(l), std::vector<HermitianMatrix>(static_cast<std::size_t>(m), HermitianMatrix::zero(n)));
  return LinearMapSpec(n, std::move(coeffs));
}

LinearMapSpec LinearMapSpec::lifted(int l) const {
  if (l < out_dim()) throw DimensionError("cannot lift a linear map to fewer outputs");
  auto coeffs = coeffs_;
  coeffs.resize(static_cast<std::size_t>(l),
                std::vector<HermitianMatrix>(static_cast<std::size_t>(tuple_size()), HermitianMatrix::zero(n_)));
  return LinearMapSpec(n_, std::move(coeffs));
}

std::vector<HermitianMatrix> LinearMapSpec::weighted_rows(const RealVector& w) const {
  if (w.size() != out_dim()) throw DimensionError("weight vector must have l entries");
  std::vector<HermitianMatrix> rows;
  rows.reserve(static_cast<std::size_t>(tuple_size()));
  for (int i = 0; i < tuple_size(); ++i) {
    CMatrix acc = CMatrix::Zero(n_, n_);
    std::span<Complex> out(acc.data(), static_cast<std::size_t>(acc.size()));
    for (int k = 0; k < out_dim(); ++k) {
      if (w[k] != 0.0) kernels::axpy(w[k], entries(coeff(k, i).matrix()), out);
    }
    rows.push_back(resymmetrized(acc));
  }
  return rows;
}

double LinearMapSpec::frobenius_norm() const {
  double sq = 0.0;
  for (const auto& row : coeffs_) {
    for (const auto& c : row) sq += c.matrix().squaredNorm();
  }
  return std::sqrt(sq);
}

// --- Operations ------------------------------------------------------------

HermitianEigen hermitian_eig(const HermitianMatrix& a) {
  Eigen::SelfAdjointEigenSolver<CMatrix> solver(a.matrix());
  if (solver.info() != Eigen::Success) {
    throw ConvergenceError("Hermitian eigensolver did not converge", std::numeric_limits<double>::infinity());
  }
  const CMatrix& v = solver.eigenvectors();
  const RealVector& values = solver.eigenvalues();
  const double residual = (a.matrix() * v - v * values.cast<Complex>().asDiagonal()).norm();
  if (residual > kIdentityTol * std::max(1.0, a.frobenius_norm())) {
    throw ConvergenceError("Hermitian eigensolver residual too large: " + describe(residual), residual);
  }
  return {values, UnitaryMatrix(v)};
}

UnitaryMatrix haar_unitary(int n, std::uint64_t seed) {
  if (n < 1) throw DimensionError("haar_unitary needs n >= 1");
  CounterRng rng(seed);
  CMatrix z(n, n);
  // Column-major fill order is part of the reproducibility contract.
  for (int c = 0; c < n; ++c) {
    for (int r = 0; r < n; ++r) z(r, c) = rng.complex_normal();
  }
  Eigen::HouseholderQR<CMatrix> qr(z);
  CMatrix q = qr.householderQ();
  const CMatrix& r = qr.matrixQR();
  for (int j = 0; j < n; ++j) {
    const Complex d = r(j, j);
    const double mag = std::abs(d);
    const Complex phase = mag > 0.0 ? d / mag : Complex(1.0, 0.0);
    q.col(j) *= phase;
  }
  return UnitaryMatrix(std::move(q));
}

HermitianTuple conjugate_tuple(const HermitianTuple& a, const UnitaryMatrix& u) {
  if (a.dim() != u.dim()) throw DimensionError("conjugate_tuple: tuple and unitary dimensions differ");
  std::vector<HermitianMatrix> items;
  items.reserve(static_cast<std::size_t>(a.size()));
  const CMatrix& um = u.matrix();
  for (const auto& item : a.items()) {
    items.push_back(resymmetrized(um.adjoint() * item.matrix() * um));
  }
  return HermitianTuple(std::move(items));
}

Complex trace_product(const HermitianMatrix& c, const HermitianMatrix& x) {
  // tr(CX) = sum_{jl} C_jl X_lj = sum_{jl} C_jl conj(X_jl) for Hermitian X.
  return kernels::conj_dot(entries(c.matrix()), entries(x.matrix()));
}

RealPoint eval_map(const LinearMapSpec& map, const HermitianTuple& x) {
  if (map.tuple_size() != x.size() || map.dim() != x.dim()) {
    throw DimensionError("eval_map: map expects m=" + std::to_string(map.tuple_size()) +
                         ", n=" + std::to_string(map.dim()) + " but tuple has m=" +
                         std::to_string(x.size()) + ", n=" + std::to_string(x.dim()));
  }
  RealPoint out = RealPoint::Zero(map.out_dim());
  for (int k = 0; k < map.out_dim(); ++k) {
    Complex acc = 0.0;
    double scale = 1.0;
    for (int i = 0; i < x.size(); ++i) {
      acc += trace_product(map.coeff(k, i), x[i]);
      scale += map.coeff(k, i).frobenius_norm() * x[i].frobenius_norm();
    }
    // Hermitian inputs give a real trace; anything else is a broken invariant.
    if (std::abs(acc.imag()) > kIdentityTol * scale) {
      throw InvariantError("eval_map: trace has imaginary part " + describe(acc.imag()));
    }
    out[k] = acc.real();
  }
  return out;
}

RealPoint star_center(const LinearMapSpec& map, const HermitianTuple& a) {
  std::vector<HermitianMatrix> scalars;
  scalars.reserve(static_cast<std::size_t>(a.size()));
  for (const auto& item : a.items()) scalars.push_back(HermitianMatrix::scalar(a.dim(), item.trace() / a.dim()));
  return eval_map(map, HermitianTuple(std::move(scalars)));
}

LinearMapSpec make_c_map(const HermitianMatrix& c, int m) {
  if (m < 1) throw DimensionError("make_c_map needs m >= 1");
  std::vector<std::vector<HermitianMatrix>> coeffs;
  for (int k = 0; k < m; ++k) {
    std::vector<HermitianMatrix> row;
    for (int i = 0; i < m; ++i) row.push_back(k == i ? c : HermitianMatrix::zero(c.dim()));
    coeffs.push_back(std::move(row));
  }
  return LinearMapSpec(c.dim(), std::move(coeffs));
}

HermitianTuple affine_combination(const HermitianTuple& a, double alpha, double beta) {
  std::vector<HermitianMatrix> items;
  const CMatrix id = CMatrix::Identity(a.dim(), a.dim());
  for (const auto& item : a.items()) items.push_back(resymmetrized(alpha * item.matrix() + beta * id));
  return HermitianTuple(std::move(items));
}

HermitianTuple identity_tuple(int m, int n) {
  return HermitianTuple(std::vector<HermitianMatrix>(static_cast<std::size_t>(m), HermitianMatrix::identity(n)));
}

}  // namespace lrange
