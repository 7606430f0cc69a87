#pragma once

// Hermitian tuples, unitaries and linear maps L : H_n^m -> R^l evaluated
// through traces, L(X)_k = sum_i tr(C[k][i] X_i).

#include <Eigen/Dense>

#include <complex>
#include <cstdint>
#include <vector>

namespace lrange {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using RMatrix = Eigen::MatrixXd;
using RealVector = Eigen::VectorXd;
using RealPoint = Eigen::VectorXd;

// Tolerances shared by every module.
inline constexpr double kConstructionTol = 1e-12;  // relative, Hermitian check
inline constexpr double kIdentityTol = 1e-10;      // algebraic identities, unitarity
inline constexpr double kOptimizationTol = 1e-6;   // optimization residuals

class HermitianMatrix {
 public:
  HermitianMatrix() = default;

  /// Validates ||A - A*||_F <= 1e-12 max(1, ||A||_F) and stores (A + A*)/2.
  explicit HermitianMatrix(const CMatrix& entries);

  static HermitianMatrix zero(int n);
  static HermitianMatrix identity(int n);
  static HermitianMatrix scalar(int n, double value);
  static HermitianMatrix diagonal(const RealVector& d);

  int dim() const { return static_cast<int>(m_.rows()); }
  const CMatrix& matrix() const { return m_; }
  Complex operator()(int r, int c) const { return m_(r, c); }

  double trace() const { return m_.trace().real(); }
  double frobenius_norm() const { return m_.norm(); }

 private:
  struct Trusted {};
  HermitianMatrix(CMatrix entries, Trusted) : m_(std::move(entries)) {}
  friend HermitianMatrix resymmetrized(const CMatrix& entries);

  CMatrix m_;
};

/// (A + A*)/2 without the construction check, for results that are Hermitian
/// in exact arithmetic (conjugations, real-weighted sums).
HermitianMatrix resymmetrized(const CMatrix& entries);

class UnitaryMatrix {
 public:
  UnitaryMatrix() = default;

  /// Validates ||U*U - I||_F <= 1e-10.
  explicit UnitaryMatrix(CMatrix entries);

  static UnitaryMatrix identity(int n);

  int dim() const { return static_cast<int>(u_.rows()); }
  const CMatrix& matrix() const { return u_; }
  UnitaryMatrix adjoint() const;

  /// ||U*U - I||_F
  double unitarity_defect() const;

 private:
  CMatrix u_;
};

UnitaryMatrix operator*(const UnitaryMatrix& a, const UnitaryMatrix& b);

class HermitianTuple {
 public:
  HermitianTuple() = default;
  explicit HermitianTuple(std::vector<HermitianMatrix> items);

  int size() const { return static_cast<int>(items_.size()); }
  int dim() const { return items_.empty() ? 0 : items_.front().dim(); }
  const HermitianMatrix& operator[](int i) const { return items_[static_cast<std::size_t>(i)]; }
  const std::vector<HermitianMatrix>& items() const { return items_; }

 private:
  std::vector<HermitianMatrix> items_;
};

/// m real vectors d^(i), standing for D = (dg(d^(1)), ..., dg(d^(m))).
class DiagonalTuple {
 public:
  DiagonalTuple() = default;
  explicit DiagonalTuple(std::vector<RealVector> vectors);

  int size() const { return static_cast<int>(vectors_.size()); }
  int dim() const { return vectors_.empty() ? 0 : static_cast<int>(vectors_.front().size()); }
  const RealVector& operator[](int i) const { return vectors_[static_cast<std::size_t>(i)]; }
  const std::vector<RealVector>& vectors() const { return vectors_; }

  HermitianTuple to_hermitian() const;

  /// Each d^(i) shifted by its mean, i.e. D_i - (tr D_i / n) I.
  DiagonalTuple traceless() const;

 private:
  std::vector<RealVector> vectors_;
};

/// An l x m grid of Hermitian n x n coefficient matrices.
class LinearMapSpec {
 public:
  LinearMapSpec() = default;
  LinearMapSpec(int n, std::vector<std::vector<HermitianMatrix>> coeffs);

  /// All-zero map.
  static LinearMapSpec zero(int l, int m, int n);

  int out_dim() const { return static_cast<int>(coeffs_.size()); }
  int tuple_size() const { return coeffs_.empty() ? 0 : static_cast<int>(coeffs_.front().size()); }
  int dim() const { return n_; }

  const HermitianMatrix& coeff(int k, int i) const {
    return coeffs_[static_cast<std::size_t>(k)][static_cast<std::size_t>(i)];
  }
  const std::vector<std::vector<HermitianMatrix>>& coeffs() const { return coeffs_; }

  /// Copy padded with zero rows up to `l` outputs (l >= out_dim()).
  LinearMapSpec lifted(int l) const;

  /// Row combination sum_k w_k C[k][i] for each i.
  std::vector<HermitianMatrix> weighted_rows(const RealVector& w) const;

  /// sqrt(sum_{k,i} ||C[k][i]||_F^2), an upper bound on the operator norm
  /// with respect to the tuple Frobenius norm.
  double frobenius_norm() const;

 private:
  int n_ = 0;
  std::vector<std::vector<HermitianMatrix>> coeffs_;
};

// Linear algebra and sampling.

struct HermitianEigen {
  RealVector values;      // ascending
  UnitaryMatrix vectors;  // columns are eigenvectors
};

HermitianEigen hermitian_eig(const HermitianMatrix& a);

/// Haar-distributed unitary: Ginibre matrix, QR, phases fixed so R has a
/// positive diagonal. Deterministic in (n, seed).
UnitaryMatrix haar_unitary(int n, std::uint64_t seed);

/// (U* A_1 U, ..., U* A_m U)
HermitianTuple conjugate_tuple(const HermitianTuple& a, const UnitaryMatrix& u);

/// tr(C X) for Hermitian C and X.
Complex trace_product(const HermitianMatrix& c, const HermitianMatrix& x);

RealPoint eval_map(const LinearMapSpec& map, const HermitianTuple& x);

/// L((tr A_1/n) I, ..., (tr A_m/n) I)
RealPoint star_center(const LinearMapSpec& map, const HermitianTuple& a);

/// Joint C-numerical range map: C[k][i] = C when k == i, zero otherwise.
LinearMapSpec make_c_map(const HermitianMatrix& c, int m);

/// alpha * A + beta * (I, ..., I)
HermitianTuple affine_combination(const HermitianTuple& a, double alpha, double beta);

/// (I, ..., I) with m entries.
HermitianTuple identity_tuple(int m, int n);

}  // namespace lrange
