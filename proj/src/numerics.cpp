#include "psdb/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <functional>
#include <iomanip>
#include <sstream>

namespace psdb {

void ToleranceConfig::validate() const {
  auto nonneg = [](double v, const char* name) {
    if (!(v >= 0.0) || !std::isfinite(v)) {
      throw InputError(std::string("tolerance ") + name + " must be a nonnegative real");
    }
  };
  nonneg(hermit_tol, "hermit_tol");
  nonneg(psd_tol, "psd_tol");
  nonneg(cmp_atol, "cmp_atol");
  nonneg(cmp_rtol, "cmp_rtol");
  if (!(gm_eps_start > 0.0)) throw InputError("gm_eps_start must be positive");
  if (!(gm_eps_shrink > 0.0 && gm_eps_shrink < 1.0)) {
    throw InputError("gm_eps_shrink must lie in (0, 1)");
  }
  if (!(gm_converge_tol > 0.0)) throw InputError("gm_converge_tol must be positive");
  if (gm_max_steps < 1) throw InputError("gm_max_steps must be positive");
}

double ToleranceConfig::slack(double rhs) const {
  return cmp_atol + cmp_rtol * std::max(1.0, std::abs(rhs));
}

Spectrum::Spectrum(std::vector<double> values) : values_(std::move(values)) {
  std::sort(values_.begin(), values_.end(), std::greater<>());
}

// ---------------------------------------------------------------------------

double hermitian_defect(const ComplexMatrix& m) {
  if (m.size() == 0) return 0.0;
  return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

void require_finite(const ComplexMatrix& m, const std::string& what) {
  for (Eigen::Index j = 0; j < m.cols(); ++j) {
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
      if (!std::isfinite(m(i, j).real()) || !std::isfinite(m(i, j).imag())) {
        throw InputError(what + ": non-finite entry at (" + std::to_string(i) + ", " +
                         std::to_string(j) + ")");
      }
    }
  }
}

HermitianMatrix::HermitianMatrix(const ComplexMatrix& m, const ToleranceConfig& tol) {
  if (m.rows() != m.cols() || m.rows() == 0) {
    throw DimensionError("Hermitian matrix must be square and nonempty, got " +
                         std::to_string(m.rows()) + "x" + std::to_string(m.cols()));
  }
  require_finite(m, "Hermitian matrix");
  const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
  const double defect = hermitian_defect(m);
  if (defect > tol.hermit_tol * scale) {
    std::ostringstream os;
    os << "matrix is not Hermitian: max |m - m*| = " << defect << " exceeds "
       << tol.hermit_tol * scale;
    throw InputError(os.str());
  }
  m_ = (m + m.adjoint()) * 0.5;
}

HermitianMatrix::HermitianMatrix(ComplexMatrix m, Trusted) : m_(std::move(m)) {}

HermitianMatrix HermitianMatrix::hermitian_part(const ComplexMatrix& m) {
  if (m.rows() != m.cols()) throw DimensionError("hermitian_part: matrix must be square");
  return HermitianMatrix(ComplexMatrix((m + m.adjoint()) * 0.5), Trusted{});
}

HermitianMatrix HermitianMatrix::identity(Eigen::Index dim) {
  return HermitianMatrix(ComplexMatrix::Identity(dim, dim), Trusted{});
}

HermitianMatrix HermitianMatrix::zero(Eigen::Index dim) {
  return HermitianMatrix(ComplexMatrix::Zero(dim, dim), Trusted{});
}

HermitianMatrix HermitianMatrix::diagonal(std::span<const double> d) {
  ComplexMatrix m = ComplexMatrix::Zero(static_cast<Eigen::Index>(d.size()),
                                        static_cast<Eigen::Index>(d.size()));
  for (std::size_t i = 0; i < d.size(); ++i) {
    m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i)) = d[i];
  }
  return HermitianMatrix(std::move(m), Trusted{});
}

HermitianMatrix HermitianMatrix::operator+(const HermitianMatrix& other) const {
  if (dim() != other.dim()) throw DimensionError("Hermitian sum: dimension mismatch");
  return HermitianMatrix(ComplexMatrix(m_ + other.m_), Trusted{});
}

HermitianMatrix HermitianMatrix::operator-(const HermitianMatrix& other) const {
  if (dim() != other.dim()) throw DimensionError("Hermitian difference: dimension mismatch");
  return HermitianMatrix(ComplexMatrix(m_ - other.m_), Trusted{});
}

HermitianMatrix HermitianMatrix::operator*(double t) const {
  return HermitianMatrix(ComplexMatrix(m_ * t), Trusted{});
}

HermitianMatrix HermitianMatrix::congruence(const ComplexMatrix& x) const {
  if (x.rows() != dim()) throw DimensionError("congruence: dimension mismatch");
  return hermitian_part(x.adjoint() * m_ * x);
}

// ---------------------------------------------------------------------------

EigenDecomposition eig_hermitian(const HermitianMatrix& h) {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(h.matrix());
  if (solver.info() != Eigen::Success) {
    throw NumericalFailure("Hermitian eigensolver did not converge", digest(h.matrix()));
  }
  // Eigen returns ascending order.
  const Eigen::Index n = h.dim();
  std::vector<double> values(static_cast<std::size_t>(n));
  ComplexMatrix vectors(n, n);
  for (Eigen::Index j = 0; j < n; ++j) {
    values[static_cast<std::size_t>(j)] = solver.eigenvalues()(n - 1 - j);
    vectors.col(j) = solver.eigenvectors().col(n - 1 - j);
  }
  EigenDecomposition out;
  out.values = Spectrum(std::move(values));
  out.vectors = std::move(vectors);
  return out;
}

Spectrum eigenvalues(const HermitianMatrix& h) {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(h.matrix(), Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) {
    throw NumericalFailure("Hermitian eigensolver did not converge", digest(h.matrix()));
  }
  const auto& ev = solver.eigenvalues();
  return Spectrum(std::vector<double>(ev.data(), ev.data() + ev.size()));
}

Spectrum singular_values(const ComplexMatrix& x) {
  if (x.size() == 0) return Spectrum{};
  Eigen::JacobiSVD<ComplexMatrix> svd(x);
  const auto& sv = svd.singularValues();
  std::vector<double> values(sv.data(), sv.data() + sv.size());
  for (double& v : values) v = std::max(v, 0.0);
  return Spectrum(std::move(values));
}

double spectral_norm(const ComplexMatrix& x) {
  if (x.size() == 0) return 0.0;
  return singular_values(x).max();
}

PsdCheck is_psd(const HermitianMatrix& h, const ToleranceConfig& tol) {
  EigenDecomposition e = eig_hermitian(h);
  const double norm = std::max(std::abs(e.values.max()), std::abs(e.values.min()));
  PsdCheck out;
  out.lambda_min = e.values.min();
  out.witness = e.vectors.col(h.dim() - 1);
  out.psd = out.lambda_min >= -tol.psd_tol * std::max(1.0, norm);
  return out;
}

bool is_pd(const HermitianMatrix& h, const ToleranceConfig& tol) {
  const Spectrum ev = eigenvalues(h);
  const double norm = std::max(std::abs(ev.max()), std::abs(ev.min()));
  return ev.min() > tol.psd_tol * norm && ev.min() > 0.0;
}

namespace {

// V f(Lambda) V* for a Hermitian spectral decomposition.
HermitianMatrix spectral_apply(const EigenDecomposition& e, const std::vector<double>& f) {
  const ComplexMatrix& v = e.vectors;
  Eigen::VectorXd d(static_cast<Eigen::Index>(f.size()));
  for (std::size_t i = 0; i < f.size(); ++i) d(static_cast<Eigen::Index>(i)) = f[i];
  return HermitianMatrix::hermitian_part(v * d.asDiagonal() * v.adjoint());
}

}  // namespace

HermitianMatrix sqrt_psd(const HermitianMatrix& h, const ToleranceConfig& tol) {
  EigenDecomposition e = eig_hermitian(h);
  const double norm = std::max(std::abs(e.values.max()), std::abs(e.values.min()));
  const double floor = -tol.psd_tol * std::max(1.0, norm);
  std::vector<double> roots;
  roots.reserve(e.values.size());
  for (double lambda : e.values) {
    if (lambda < floor) {
      std::ostringstream os;
      os << "sqrt_psd: matrix is not positive semidefinite (lambda_min = " << lambda << ")";
      throw DomainError(os.str());
    }
    roots.push_back(std::sqrt(std::max(lambda, 0.0)));
  }
  return spectral_apply(e, roots);
}

HermitianMatrix inverse(const HermitianMatrix& h, const ToleranceConfig& tol) {
  if (!is_pd(h, tol)) {
    throw SingularityError("inverse: matrix is not positive definite; use pseudo_inverse");
  }
  Eigen::LLT<ComplexMatrix> llt(h.matrix());
  if (llt.info() != Eigen::Success) {
    throw SingularityError("inverse: Cholesky factorization failed");
  }
  const ComplexMatrix id = ComplexMatrix::Identity(h.dim(), h.dim());
  return HermitianMatrix::hermitian_part(llt.solve(id));
}

HermitianMatrix pseudo_inverse(const HermitianMatrix& h, double rank_tol) {
  EigenDecomposition e = eig_hermitian(h);
  const double norm = std::max(std::abs(e.values.max()), std::abs(e.values.min()));
  const double cutoff = rank_tol * std::max(1.0, norm);
  std::vector<double> inv;
  inv.reserve(e.values.size());
  for (double lambda : e.values) inv.push_back(std::abs(lambda) > cutoff ? 1.0 / lambda : 0.0);
  return spectral_apply(e, inv);
}

bool schur_complement_psd(const HermitianMatrix& m11, const ComplexMatrix& m12,
                          const HermitianMatrix& m22, const ToleranceConfig& tol) {
  if (m12.rows() != m11.dim() || m12.cols() != m22.dim()) {
    throw DimensionError("schur_complement_psd: m12 must be dim(m11) x dim(m22)");
  }
  const HermitianMatrix m22_pinv = pseudo_inverse(m22, tol.psd_tol);
  const ComplexMatrix projector_defect =
      ComplexMatrix::Identity(m22.dim(), m22.dim()) - m22.matrix() * m22_pinv.matrix();
  const double range_residual = spectral_norm(projector_defect * m12.adjoint());
  if (range_residual > std::sqrt(tol.psd_tol) * std::max(1.0, spectral_norm(m12))) {
    return false;
  }
  const HermitianMatrix complement =
      m11 - HermitianMatrix::hermitian_part(m12 * m22_pinv.matrix() * m12.adjoint());
  return is_psd(complement, tol).psd;
}

Complex det(const ComplexMatrix& x) {
  if (x.rows() != x.cols()) throw DimensionError("det: matrix must be square");
  if (x.size() == 0) return Complex(1.0, 0.0);
  return x.partialPivLu().determinant();
}

Complex trace(const ComplexMatrix& x) {
  if (x.rows() != x.cols()) throw DimensionError("trace: matrix must be square");
  return x.trace();
}

ComplexMatrix assemble_blocks(const ComplexMatrix& m11, const ComplexMatrix& m12,
                              const ComplexMatrix& m22) {
  if (m12.rows() != m11.rows() || m12.cols() != m22.cols() || m11.rows() != m11.cols() ||
      m22.rows() != m22.cols()) {
    throw DimensionError("assemble_blocks: non-conformal blocks");
  }
  const Eigen::Index p = m11.rows();
  const Eigen::Index q = m22.rows();
  ComplexMatrix out(p + q, p + q);
  out.topLeftCorner(p, p) = m11;
  out.topRightCorner(p, q) = m12;
  out.bottomLeftCorner(q, p) = m12.adjoint();
  out.bottomRightCorner(q, q) = m22;
  return out;
}

std::string digest(const ComplexMatrix& m) {
  // FNV-1a over the dimensions and raw entry bytes.
  std::uint64_t hash = 1469598103934665603ULL;
  auto feed = [&hash](const void* data, std::size_t len) {
    const auto* bytes = static_cast<const unsigned char*>(data);
    for (std::size_t i = 0; i < len; ++i) {
      hash ^= bytes[i];
      hash *= 1099511628211ULL;
    }
  };
  const std::int64_t dims[2] = {m.rows(), m.cols()};
  feed(dims, sizeof(dims));
  for (Eigen::Index j = 0; j < m.cols(); ++j) {
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
      const double parts[2] = {m(i, j).real(), m(i, j).imag()};
      feed(parts, sizeof(parts));
    }
  }
  std::ostringstream os;
  os << std::hex << std::setw(16) << std::setfill('0') << hash;
  return os.str();
}

}  // namespace psdb
