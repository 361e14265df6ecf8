#pragma once

#include "beamsolid/beam.hpp"
#include "beamsolid/coupling.hpp"
#include "beamsolid/dof_layout.hpp"
#include "beamsolid/geometry.hpp"
#include "beamsolid/solid.hpp"
#include "beamsolid/types.hpp"

#include <string>

namespace beamsolid {

/// Assembled blocks of the mixed problem: block-diagonal stiffness over
/// (solid, beam) primal DOFs, the constraint block, loads, and the Gram
/// matrices of the V- and Q-norms. Multipliers are ordered (lambda, mu)
/// after the primal block.
struct SaddleSystem {
  SpMat K;    // primal x primal, symmetric PSD
  SpMat B;    // m x primal (m = 6 for the coupled problem)
  VecX f;     // primal loads
  SpMat G_V;  // primal V-norm Gram, SPD
  MatX G_Q;   // m x m multiplier Gram, SPD
  DofLayout layout;

  // Interface metadata used by reports and the stability analysis.
  double interface_area = 0.0;
  Mat3 interface_J = Mat3::Zero();
  Vec3 interface_centroid = Vec3::Zero();
  double characteristic_length = 1.0;
  std::vector<Vec3> solid_node_coords;

  int primal_dofs() const { return static_cast<int>(K.rows()); }
  int multiplier_dofs() const { return static_cast<int>(B.rows()); }
  int total_dofs() const { return primal_dofs() + multiplier_dofs(); }
};

struct SolveOptions {
  bool allow_singular = false;     // report near-singularity instead of throwing
  double pivot_tolerance = 1e-10;  // relative pivot threshold
  int dense_threshold = 3000;      // dense factorization at or below this size
};

struct SolveReport {
  VecX primal;               // (u, w, theta)
  VecX multipliers;          // (lambda, mu)
  VecX constraint_residual;  // B * primal
  double energy_gap = 0.0;   // |a(x,x) - f(x)|
  double a_value = 0.0;      // a(x,x)
  double f_value = 0.0;      // f(x)
  int zero_pivots = 0;       // near-zero pivots of the factorization
  double residual_norm = 0.0;
  bool dense_path = true;

  Vec3 lambda() const { return multipliers.segment<3>(0); }
  Vec3 mu() const { return multipliers.segment<3>(3); }

  bool constraint_residual_ok() const {
    return constraint_residual.norm() <= 1e-9 * (1.0 + primal.norm());
  }
  bool energy_ok() const {
    return energy_gap <= 1e-8 * (1.0 + std::abs(f_value));
  }
};

SaddleSystem assemble_system(const Mesh& mesh, const BeamModel& beam,
                             const InterfaceSurface& surface,
                             const SolidMaterial& material,
                             const SolidLoads& solid_loads,
                             const BeamLoads& beam_loads,
                             double characteristic_length,
                             const std::string& interface_face_set = {},
                             bool parallel = false);

/// The symmetric KKT matrix [[K, B^T], [B, 0]].
SpMat kkt_matrix(const SaddleSystem& system);

/// Direct symmetric-indefinite solve of the KKT system. Throws
/// WellPosednessError when the factorization detects near-zero pivots,
/// unless allow_singular is set.
SolveReport solve(const SaddleSystem& system, const SolveOptions& options = {});

/// 1/2 x'Kx - f'x + q'(Bx).
double lagrangian_value(const SaddleSystem& system, const VecX& primal,
                        const VecX& multipliers);

/// Writes <prefix>_kkt.mtx (coordinate symmetric) and <prefix>_rhs.mtx
/// (array); with grams also <prefix>_gv.mtx and <prefix>_gq.mtx.
void export_system(const SaddleSystem& system, const std::string& prefix,
                   bool include_grams = false);

/// Flat key-value text record of a solve.
void write_solve_report(const SolveReport& report, const SaddleSystem& system,
                        const std::string& path);

}  // namespace beamsolid
