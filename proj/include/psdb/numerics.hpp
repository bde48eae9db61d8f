#pragma once

// Dense complex linear algebra used by the rest of the library. Everything is
// a thin, validated layer over Eigen's dense decompositions.

#include <complex>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "psdb/errors.hpp"

namespace psdb {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;

/// Every tolerance used for comparisons, PSD tests and the geometric-mean
/// limit. Defaults are the documented CLI defaults.
struct ToleranceConfig {
  double hermit_tol = 1e-8;
  /// Eigenvalue floor relative to max(1, spectral norm).
  double psd_tol = 1e-9;
  double cmp_atol = 1e-9;
  double cmp_rtol = 1e-9;
  double gm_eps_start = 1e-2;
  double gm_eps_shrink = 0.1;
  double gm_converge_tol = 1e-9;
  int gm_max_steps = 12;

  /// Throws InputError when a field is out of its admissible range.
  void validate() const;

  /// Additive slack for `lhs <= rhs`: cmp_atol + cmp_rtol * max(1, rhs).
  double slack(double rhs) const;
};

/// Nonincreasing list of real values (eigenvalues or singular values).
class Spectrum {
 public:
  Spectrum() = default;
  /// Sorts `values` nonincreasingly.
  explicit Spectrum(std::vector<double> values);

  std::size_t size() const noexcept { return values_.size(); }
  double operator[](std::size_t j) const { return values_[j]; }
  const std::vector<double>& values() const noexcept { return values_; }
  auto begin() const noexcept { return values_.begin(); }
  auto end() const noexcept { return values_.end(); }
  double max() const { return values_.front(); }
  double min() const { return values_.back(); }

  friend bool operator==(const Spectrum&, const Spectrum&) = default;

 private:
  std::vector<double> values_;
};

/// Square complex matrix stored in its symmetrized form (M + M*)/2.
class HermitianMatrix {
 public:
  HermitianMatrix() = default;

  /// Validates squareness, finiteness and asymmetry <= tol.hermit_tol (relative
  /// to max(1, max |entry|)); throws InputError otherwise.
  explicit HermitianMatrix(const ComplexMatrix& m, const ToleranceConfig& tol = {});

  /// Hermitian part of a matrix known to be Hermitian up to roundoff (results
  /// of internal computations). No asymmetry check.
  static HermitianMatrix hermitian_part(const ComplexMatrix& m);

  static HermitianMatrix identity(Eigen::Index dim);
  static HermitianMatrix zero(Eigen::Index dim);
  static HermitianMatrix diagonal(std::span<const double> d);

  Eigen::Index dim() const noexcept { return m_.rows(); }
  const ComplexMatrix& matrix() const noexcept { return m_; }
  Complex operator()(Eigen::Index i, Eigen::Index j) const { return m_(i, j); }

  HermitianMatrix operator+(const HermitianMatrix& other) const;
  HermitianMatrix operator-(const HermitianMatrix& other) const;
  HermitianMatrix operator*(double t) const;

  /// X* H X, Hermitian for any conformal X.
  HermitianMatrix congruence(const ComplexMatrix& x) const;

 private:
  struct Trusted {};
  HermitianMatrix(ComplexMatrix m, Trusted);
  ComplexMatrix m_;
};

struct EigenDecomposition {
  Spectrum values;
  /// Unitary; column j is the eigenvector of values[j].
  ComplexMatrix vectors;
};

/// Hermitian eigendecomposition with eigenvalues in nonincreasing order.
/// Throws NumericalFailure (carrying the matrix digest) on non-convergence.
EigenDecomposition eig_hermitian(const HermitianMatrix& h);

/// Eigenvalues only, nonincreasing.
Spectrum eigenvalues(const HermitianMatrix& h);

/// Singular values, nonincreasing and nonnegative. Rectangular input allowed.
Spectrum singular_values(const ComplexMatrix& x);

struct PsdCheck {
  bool psd = false;
  double lambda_min = 0.0;
  ComplexVector witness;
  explicit operator bool() const noexcept { return psd; }
};

/// True iff lambda_min(h) >= -psd_tol * max(1, ||h||).
PsdCheck is_psd(const HermitianMatrix& h, const ToleranceConfig& tol = {});

/// True iff lambda_min(h) > psd_tol * ||h||.
bool is_pd(const HermitianMatrix& h, const ToleranceConfig& tol = {});

/// Principal square root. Eigenvalues in [-psd_tol*max(1,||h||), 0) are
/// clamped to zero; anything more negative throws DomainError.
HermitianMatrix sqrt_psd(const HermitianMatrix& h, const ToleranceConfig& tol = {});

/// Inverse of a positive definite matrix. Throws SingularityError when
/// lambda_min(h) <= psd_tol * ||h||; callers fall back to pseudo_inverse.
HermitianMatrix inverse(const HermitianMatrix& h, const ToleranceConfig& tol = {});

/// Moore-Penrose inverse; eigenvalues with |lambda| <= rank_tol*max(1,||h||)
/// are treated as zero.
HermitianMatrix pseudo_inverse(const HermitianMatrix& h, double rank_tol);

/// Positivity of [m11 m12; m12* m22] via the generalized Schur complement:
/// m11 - m12 m22^+ m12* PSD and range(m12*) contained in range(m22).
bool schur_complement_psd(const HermitianMatrix& m11, const ComplexMatrix& m12,
                          const HermitianMatrix& m22, const ToleranceConfig& tol = {});

Complex det(const ComplexMatrix& x);
Complex trace(const ComplexMatrix& x);
double spectral_norm(const ComplexMatrix& x);

/// Largest entrywise modulus of m - m*.
double hermitian_defect(const ComplexMatrix& m);

/// [m11 m12; m12* m22].
ComplexMatrix assemble_blocks(const ComplexMatrix& m11, const ComplexMatrix& m12,
                              const ComplexMatrix& m22);

/// Throws InputError naming `what` if any entry is NaN or infinite.
void require_finite(const ComplexMatrix& m, const std::string& what);

/// Short hex fingerprint of a matrix' dimensions and entries; used in
/// diagnostics so a failing input can be identified.
std::string digest(const ComplexMatrix& m);

}  // namespace psdb
