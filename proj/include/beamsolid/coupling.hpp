#pragma once

#include "beamsolid/dof_layout.hpp"
#include "beamsolid/geometry.hpp"
#include "beamsolid/types.hpp"

namespace beamsolid {

struct MultiplierState {
  Vec3 lambda = Vec3::Zero();  // rotation-constraint multiplier (moment-like)
  Vec3 mu = Vec3::Zero();      // displacement-constraint multiplier (force-like)
};

/// Constraint rows over the primal DOFs, in integrated (unaveraged) form:
/// rows 0-2 tie the averaged surface rotation to theta_*,
/// rows 3-5 tie the integrated surface displacement to |Sigma| w_*.
struct ConstraintBlock {
  SpMat B;  // 6 x primal_dofs
};

/// Rows of  integral_Sigma u dA - |Sigma| w_*  (3 x primal).
SpMat displacement_constraint_rows(const InterfaceSurface& surface,
                                   const DofLayout& layout);

/// Rows of  integral_Sigma T^alpha x u_,alpha dA - J theta_*  (3 x primal).
SpMat rotation_constraint_rows(const InterfaceSurface& surface,
                               const DofLayout& layout);

/// Stacks rotation rows over displacement rows and verifies full row rank;
/// throws WellPosednessError otherwise, reporting the deficient directions.
ConstraintBlock assemble_B(const InterfaceSurface& surface, const DofLayout& layout);

/// Gram of the multiplier norm (||lambda||^2 / L^2 + ||mu||^2)^(1/2).
Mat6 q_norm_gram(double characteristic_length);

/// Norm of the difference between the integrated skew displacement-gradient
/// average and the integrated skew of (theta_* I_Sigma), through the
/// axial-vector identification. Zero (to quadrature accuracy) exactly when
/// the rotation constraint holds for (u, theta_*). Requires planar Sigma.
double skew_average_check(const InterfaceSurface& surface, const VecX& solid_u,
                          const Vec3& theta_star);

}  // namespace beamsolid
