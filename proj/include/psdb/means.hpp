#pragma once

#include <optional>
#include <string_view>
#include <vector>

#include "psdb/numerics.hpp"

namespace psdb {

enum class MeanPath { direct, epsilon_limit };

std::string_view to_string(MeanPath path);

struct GeometricMeanResult {
  HermitianMatrix value;
  MeanPath path = MeanPath::direct;
  int steps_used = 0;
  /// Smallest regularization used (0 on the direct path).
  double final_eps = 0.0;
  /// ||G B^-1 G - A|| / max(1, ||A||); present only when both inputs are PD.
  std::optional<double> riccati_residual;
};

/// (a + b) / 2.
HermitianMatrix arithmetic_mean(const HermitianMatrix& a, const HermitianMatrix& b);

/// Geometric mean of two positive definite matrices, the unique PD solution
/// of X b^-1 X = a. Throws DomainError for inputs that are not PD; use
/// geometric_mean_psd for semidefinite inputs.
GeometricMeanResult geometric_mean_pd(const HermitianMatrix& a, const HermitianMatrix& b,
                                      const ToleranceConfig& tol = {});

/// Geometric mean of PSD matrices as the limit of (a + eps I) # (b + eps I),
/// eps -> 0+. PD pairs go straight to geometric_mean_pd, as do pairs whose
/// smallest eigenvalues both exceed the last scheduled eps.
///
/// The regularized means are evaluated on the schedule
/// eps_k = gm_eps_start * gm_eps_shrink^k * max(||a||, ||b||) and accelerated
/// by Richardson extrapolation in sqrt(eps); iteration stops once two
/// consecutive extrapolated estimates differ by at most
/// gm_converge_tol * max(1, sqrt(||a|| ||b||)) in spectral norm. Throws
/// ConvergenceError after gm_max_steps. The limit is discontinuous where the
/// ranges of a and b nearly intersect, and such pairs may fail to converge.
GeometricMeanResult geometric_mean_psd(const HermitianMatrix& a, const HermitianMatrix& b,
                                       const ToleranceConfig& tol = {});

/// lambda_j((a+b)/2) - lambda_j(a # b), j = 1..n.
std::vector<double> amgm_eigen_check(const HermitianMatrix& a, const HermitianMatrix& b,
                                     const ToleranceConfig& tol = {});

/// |det(a # b) - sqrt(det a det b)| / max(1, sqrt(det a det b)).
double det_gm_identity_check(const HermitianMatrix& a, const HermitianMatrix& b,
                             const ToleranceConfig& tol = {});

}  // namespace psdb
