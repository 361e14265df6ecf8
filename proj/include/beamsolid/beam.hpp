#pragma once

#include "beamsolid/geometry.hpp"
#include "beamsolid/section.hpp"
#include "beamsolid/types.hpp"

#include <utility>

namespace beamsolid {

struct BeamLoads {
  Vec3 distributed_force = Vec3::Zero();   // per unit length
  Vec3 distributed_moment = Vec3::Zero();  // per unit length
  Vec3 tip_force = Vec3::Zero();           // at s = L
  Vec3 tip_moment = Vec3::Zero();          // at s = L
};

/// Nodal state of a clamped beam: w and theta per node, zero at s = 0.
struct BeamState {
  std::vector<Vec3> w;
  std::vector<Vec3> theta;
};

struct BeamStrains {
  Vec3 gamma;  // shear and axial deformation
  Vec3 omega;  // bending curvatures and torsion
};

/// Linearized strain measures of the shear-deformable beam:
///   gamma = Lambda^T (w' - theta x r'),   omega = Lambda^T theta'.
/// A rigid pair (w = omega_0 x (r - p), theta = omega_0) yields zero strain.
BeamStrains beam_strains(const Vec3& w_prime, const Vec3& theta,
                         const Vec3& theta_prime, const Vec3& tangent,
                         const Mat3& rotation);

using BeamElementMatrix = Eigen::Matrix<double, 12, 12>;

/// 2-node element stiffness in global components, DOF order
/// (w1, theta1, w2, theta2). Bending blocks carry the exact shear-flexible
/// stiffness (nodally exact for end loads); axial and torsion are linear.
BeamElementMatrix beam_element_stiffness(double h, const BeamSection& section,
                                         const Mat3& rotation);

/// Stiffness of the full node set, clamped node included (node 0 first).
SpMat beam_full_stiffness(const BeamModel& beam);

/// Stiffness with the clamped DOFs (s = 0) eliminated; SPD.
SpMat assemble_beam(const BeamModel& beam);

/// Consistent nodal loads with the clamped DOFs eliminated; distributed
/// loads use linear interpolation, tip loads go to the last node.
VecX beam_load_vector(const BeamModel& beam, const BeamLoads& loads);

/// Gram matrix of ||w||_W^2 + L^2 ||theta||_R^2 with
/// ||v||^2 = ||v||_L2^2 + L^2 ||v'||_L2^2, clamped DOFs eliminated.
SpMat beam_norm_gram(const BeamModel& beam, double characteristic_length);

/// Support force and moment at the clamp for a solved reduced state:
/// rows of the full stiffness at node 0 minus the applied loads there.
std::pair<Vec3, Vec3> clamp_reactions(const BeamModel& beam,
                                      const VecX& reduced_state,
                                      const BeamLoads& loads);

}  // namespace beamsolid
