#pragma once

#include "beamsolid/saddle.hpp"
#include "beamsolid/types.hpp"

#include <string>

namespace beamsolid {

/// Stability constants of one refinement level.
struct StabilityReport {
  int level = 0;
  int n_primal = 0;
  double alpha = 0.0;  // smallest generalized eigenvalue of K on ker B w.r.t. G_V
  double beta = 0.0;   // inf-sup constant
  int rigid_modes_unconstrained = 0;  // near-zero modes of K alone
  int rigid_modes_constrained = 0;    // near-zero modes of the KKT matrix
};

/// Orthonormal basis of ker B. Rank is decided by the singular values of
/// B^T with relative threshold 1e-12.
MatX kernel_basis(const SpMat& B);

struct EllipticityOptions {
  int dense_threshold = 3000;  // dense generalized eigensolve at or below
  double iterative_tolerance = 1e-8;
  int max_iterations = 500;
};

/// Kernel ellipticity constant of Theorem "a is V-elliptic on K":
/// lambda_min(Z' K Z, Z' G_V Z) for an orthonormal kernel basis Z.
/// Systems with no constraint rows use the full space.
double kernel_ellipticity(const SaddleSystem& system,
                          const EllipticityOptions& options = {});

/// 6x6 constraint Schur complement B G_V^{-1} B^T.
MatX constraint_schur(const SaddleSystem& system);

/// Inf-sup constant sqrt(lambda_min(B G_V^{-1} B^T, G_Q)).
double inf_sup_constant(const SaddleSystem& system);

/// Number of eigenvalues of the symmetric matrix with magnitude below
/// tolerance * max |eigenvalue|.
int rigid_mode_census(const SpMat& k, double tolerance);

/// Volumetric inertia of the mesh about a point:
/// integral of (|x-p|^2 I - (x-p) x (x-p)) dV.
Mat3 compute_M(const Mesh& mesh, const Vec3& about);

struct WitnessBound {
  double ratio = 0.0;          // b(lambda, mu; witness) / ||witness||_V
  double numerator = 0.0;      // b(lambda, mu; witness)
  double witness_norm = 0.0;   // ||witness||_V
  double certified_sup = 0.0;  // sup_v b(lambda, mu; v) / ||v||_V
};

/// Evaluates the explicit inf-sup witness u = mu + lambda x (x - x_G),
/// (w, theta) = 0 as a discrete field. The ratio is a lower bound for the
/// certified sup of the same multiplier pair.
WitnessBound witness_infsup_bound(const SaddleSystem& system, const Vec3& lambda,
                                  const Vec3& mu);

/// Appends one row to a CSV with columns
/// level,N,alpha,beta,rigid_unconstrained,rigid_constrained.
void append_stability_csv(const std::string& path, const StabilityReport& report);

}  // namespace beamsolid
