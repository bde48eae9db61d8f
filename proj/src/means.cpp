#include "psdb/means.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace psdb {

std::string_view to_string(MeanPath path) {
  return path == MeanPath::direct ? "direct" : "epsilon_limit";
}

HermitianMatrix arithmetic_mean(const HermitianMatrix& a, const HermitianMatrix& b) {
  if (a.dim() != b.dim()) throw DimensionError("arithmetic_mean: dimension mismatch");
  return (a + b) * 0.5;
}

namespace {

void require_same_dim(const HermitianMatrix& a, const HermitianMatrix& b, const char* what) {
  if (a.dim() != b.dim()) throw DimensionError(std::string(what) + ": dimension mismatch");
}

// a # b = R_a* U* R_b with a = R_a* R_a, b = R_b* R_b and U the unitary polar
// factor of R_b R_a^-1. Equal to b^1/2 (b^-1/2 a b^-1/2)^1/2 b^1/2 but stays
// accurate when both factors are badly conditioned.
ComplexMatrix pd_mean(const ComplexMatrix& a, const ComplexMatrix& b) {
  Eigen::LLT<ComplexMatrix> la(a);
  Eigen::LLT<ComplexMatrix> lb(b);
  if (la.info() != Eigen::Success || lb.info() != Eigen::Success) {
    throw DomainError("geometric mean: Cholesky factorization failed (input not PD)");
  }
  const ComplexMatrix lower_a = la.matrixL();
  const ComplexMatrix lower_b = lb.matrixL();
  // (R_b R_a^-1)* = L_a^-1 L_b.
  const ComplexMatrix y_adj = lower_a.triangularView<Eigen::Lower>().solve(lower_b);
  Eigen::JacobiSVD<ComplexMatrix> svd(y_adj.adjoint(), Eigen::ComputeFullU | Eigen::ComputeFullV);
  const ComplexMatrix polar = svd.matrixU() * svd.matrixV().adjoint();
  return lower_a * polar.adjoint() * lower_b.adjoint();
}

double riccati_residual(const ComplexMatrix& g, const HermitianMatrix& a,
                        const HermitianMatrix& b) {
  Eigen::LLT<ComplexMatrix> lb(b.matrix());
  const ComplexMatrix lhs = g * lb.solve(g);
  return spectral_norm(lhs - a.matrix()) / std::max(1.0, spectral_norm(a.matrix()));
}

// Project a nearly PSD Hermitian matrix onto the PSD cone.
HermitianMatrix clamp_psd(const HermitianMatrix& h) {
  EigenDecomposition e = eig_hermitian(h);
  if (e.values.min() >= 0.0) return h;
  Eigen::VectorXd d(h.dim());
  for (Eigen::Index i = 0; i < h.dim(); ++i) {
    d(i) = std::max(e.values[static_cast<std::size_t>(i)], 0.0);
  }
  return HermitianMatrix::hermitian_part(e.vectors * d.asDiagonal() * e.vectors.adjoint());
}

}  // namespace

GeometricMeanResult geometric_mean_pd(const HermitianMatrix& a, const HermitianMatrix& b,
                                      const ToleranceConfig& tol) {
  require_same_dim(a, b, "geometric_mean_pd");
  if (!is_pd(a, tol) || !is_pd(b, tol)) {
    throw DomainError(
        "geometric_mean_pd: inputs must be positive definite; use geometric_mean_psd");
  }
  GeometricMeanResult out;
  out.value = HermitianMatrix::hermitian_part(pd_mean(a.matrix(), b.matrix()));
  out.path = MeanPath::direct;
  out.steps_used = 1;
  out.final_eps = 0.0;
  out.riccati_residual = riccati_residual(out.value.matrix(), a, b);
  return out;
}

GeometricMeanResult geometric_mean_psd(const HermitianMatrix& a, const HermitianMatrix& b,
                                       const ToleranceConfig& tol) {
  require_same_dim(a, b, "geometric_mean_psd");
  for (const HermitianMatrix* m : {&a, &b}) {
    const PsdCheck check = is_psd(*m, tol);
    if (!check) {
      std::ostringstream os;
      os << "geometric_mean_psd: input is not PSD (lambda_min = " << check.lambda_min << ")";
      throw DomainError(os.str());
    }
  }
  if (is_pd(a, tol) && is_pd(b, tol)) return geometric_mean_pd(a, b, tol);

  const Eigen::Index n = a.dim();
  const double scale = std::max(spectral_norm(a.matrix()), spectral_norm(b.matrix()));
  GeometricMeanResult out;
  out.path = MeanPath::epsilon_limit;
  if (scale == 0.0) {
    out.value = HermitianMatrix::zero(n);
    return out;
  }

  // The schedule never goes below eps_floor, so it cannot resolve eigenvalues
  // above it: a pair whose smallest eigenvalues both exceed the floor is
  // definite at that resolution and its limit is the direct mean.
  const double eps_floor =
      tol.gm_eps_start * std::pow(tol.gm_eps_shrink, tol.gm_max_steps - 1) * scale;
  if (eigenvalues(a).min() > eps_floor && eigenvalues(b).min() > eps_floor) {
    out.value = HermitianMatrix::hermitian_part(pd_mean(a.matrix(), b.matrix()));
    out.path = MeanPath::direct;
    out.steps_used = 1;
    out.riccati_residual = riccati_residual(out.value.matrix(), a, b);
    return out;
  }

  // Richardson table in t = sqrt(eps): consecutive t shrink by r, so level j
  // removes the t^j term with factor r^j.
  const double r = std::sqrt(tol.gm_eps_shrink);
  // Iterates and their rounding error scale like sqrt(||a|| ||b||).
  const double mean_scale =
      std::max(1.0, std::sqrt(spectral_norm(a.matrix()) * spectral_norm(b.matrix())));
  const ComplexMatrix id = ComplexMatrix::Identity(n, n);
  std::vector<ComplexMatrix> previous_row;
  ComplexMatrix previous_estimate;
  double gap = std::numeric_limits<double>::infinity();
  double eps = tol.gm_eps_start * scale;
  for (int step = 0; step < tol.gm_max_steps; ++step, eps *= tol.gm_eps_shrink) {
    std::vector<ComplexMatrix> row;
    row.reserve(previous_row.size() + 1);
    row.push_back(pd_mean(a.matrix() + eps * id, b.matrix() + eps * id));
    double factor = r;
    for (const ComplexMatrix& above : previous_row) {
      row.push_back((row.back() - factor * above) / (1.0 - factor));
      factor *= r;
    }
    const ComplexMatrix& estimate = row.back();
    if (step > 0) {
      gap = spectral_norm(estimate - previous_estimate);
      if (gap <= tol.gm_converge_tol * mean_scale) {
        out.value = clamp_psd(HermitianMatrix::hermitian_part(estimate));
        out.steps_used = step + 1;
        out.final_eps = eps;
        return out;
      }
    }
    previous_estimate = estimate;
    previous_row = std::move(row);
  }
  std::ostringstream os;
  os << "geometric_mean_psd: no convergence in " << tol.gm_max_steps
     << " steps; last gap between iterates = " << gap;
  throw ConvergenceError(os.str(), gap);
}

std::vector<double> amgm_eigen_check(const HermitianMatrix& a, const HermitianMatrix& b,
                                     const ToleranceConfig& tol) {
  require_same_dim(a, b, "amgm_eigen_check");
  const Spectrum am = eigenvalues(arithmetic_mean(a, b));
  const Spectrum gm = eigenvalues(geometric_mean_psd(a, b, tol).value);
  std::vector<double> margins(am.size());
  for (std::size_t j = 0; j < am.size(); ++j) margins[j] = am[j] - gm[j];
  return margins;
}

double det_gm_identity_check(const HermitianMatrix& a, const HermitianMatrix& b,
                             const ToleranceConfig& tol) {
  require_same_dim(a, b, "det_gm_identity_check");
  const double lhs = det(geometric_mean_psd(a, b, tol).value.matrix()).real();
  const double product = std::max(0.0, det(a.matrix()).real() * det(b.matrix()).real());
  const double rhs = std::sqrt(product);
  return std::abs(lhs - rhs) / std::max(1.0, rhs);
}

}  // namespace psdb
