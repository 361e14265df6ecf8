#pragma once

#include "beamsolid/geometry.hpp"
#include "beamsolid/types.hpp"

#include <string>
#include <vector>

namespace beamsolid {

/// Linear isotropic material in Lame form.
struct SolidMaterial {
  double lambda = 0.0;
  double mu = 0.0;

  static SolidMaterial from_lame(double lambda, double mu);
  static SolidMaterial from_young_poisson(double E, double nu);

  void validate() const;
};

struct SurfaceTraction {
  std::string face_set;
  Vec3 traction = Vec3::Zero();  // force per unit area
};

struct SolidLoads {
  Vec3 body_force = Vec3::Zero();  // force per unit volume
  std::vector<SurfaceTraction> tractions;
};

/// Symmetric part of a displacement gradient.
inline Mat3 small_strain(const Mat3& grad) {
  return 0.5 * (grad + grad.transpose());
}

using SolidElementMatrix = Eigen::Matrix<double, 24, 24>;

/// Hex8 stiffness, full 2x2x2 integration. Throws GeometryError on an
/// inverted element.
SolidElementMatrix solid_element_stiffness(const std::array<Vec3, 8>& coords,
                                           const SolidMaterial& material);

SpMat assemble_solid(const Mesh& mesh, const SolidMaterial& material,
                     bool parallel = false);

/// Consistent nodal loads from the body force and the named surface
/// tractions. Traction face sets must not intersect the interface set
/// (pass an empty name when there is none).
VecX solid_load_vector(const Mesh& mesh, const SolidLoads& loads,
                       const std::string& interface_face_set = {});

/// Gram matrix of ||v||_L2^2 + L^2 ||grad v||_L2^2 over the mesh.
SpMat u_norm_gram(const Mesh& mesh, double characteristic_length);

/// Gram matrix of the plain L2 inner product (vector mass matrix).
SpMat l2_gram(const Mesh& mesh);

}  // namespace beamsolid
