#include "beamsolid/solid.hpp"

#include "beamsolid/hex8.hpp"

#include <algorithm>
#include <cmath>

namespace beamsolid {

SolidMaterial SolidMaterial::from_lame(double lambda, double mu) {
  SolidMaterial m{lambda, mu};
  m.validate();
  return m;
}

SolidMaterial SolidMaterial::from_young_poisson(double E, double nu) {
  if (!(E > 0.0)) {
    throw std::invalid_argument("material: youngs_modulus must be positive");
  }
  if (!(nu > -1.0 && nu < 0.5)) {
    throw std::invalid_argument("material: poisson_ratio must lie in (-1, 0.5)");
  }
  SolidMaterial m;
  m.lambda = E * nu / ((1.0 + nu) * (1.0 - 2.0 * nu));
  m.mu = E / (2.0 * (1.0 + nu));
  m.validate();
  return m;
}

void SolidMaterial::validate() const {
  if (!(mu > 0.0)) {
    throw std::invalid_argument("material: shear modulus mu must be positive");
  }
  if (!(lambda + 2.0 * mu / 3.0 > 0.0)) {
    throw std::invalid_argument("material: bulk modulus must be positive");
  }
}

namespace {

// Voigt order [xx, yy, zz, xy, yz, zx] with engineering shear strains.
Mat6 isotropic_voigt(const SolidMaterial& m) {
  Mat6 d = Mat6::Zero();
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) d(i, j) = m.lambda;
    d(i, i) += 2.0 * m.mu;
    d(3 + i, 3 + i) = m.mu;
  }
  return d;
}

}  // namespace

SolidElementMatrix solid_element_stiffness(const std::array<Vec3, 8>& coords,
                                           const SolidMaterial& material) {
  material.validate();
  const Mat6 d = isotropic_voigt(material);
  SolidElementMatrix k = SolidElementMatrix::Zero();

  for (const Vec3& xi : hex8::gauss_points()) {
    const auto dn = hex8::shape_gradients(xi);
    Mat3 jac = Mat3::Zero();
    for (int a = 0; a < 8; ++a) {
      jac += coords[a] * dn.row(a);
    }
    const double det = jac.determinant();
    if (!(det > 0.0)) {
      throw GeometryError("solid_element_stiffness: inverted element");
    }
    const Eigen::Matrix<double, 8, 3> grad = dn * jac.inverse();

    Eigen::Matrix<double, 6, 24> b = Eigen::Matrix<double, 6, 24>::Zero();
    for (int a = 0; a < 8; ++a) {
      const double gx = grad(a, 0), gy = grad(a, 1), gz = grad(a, 2);
      b(0, 3 * a + 0) = gx;
      b(1, 3 * a + 1) = gy;
      b(2, 3 * a + 2) = gz;
      b(3, 3 * a + 0) = gy;
      b(3, 3 * a + 1) = gx;
      b(4, 3 * a + 1) = gz;
      b(4, 3 * a + 2) = gy;
      b(5, 3 * a + 0) = gz;
      b(5, 3 * a + 2) = gx;
    }
    k += b.transpose() * d * b * det;
  }
  return k;
}

SpMat assemble_solid(const Mesh& mesh, const SolidMaterial& material,
                     bool parallel) {
  const int ne = mesh.element_count();
  std::vector<SolidElementMatrix> element_k(ne);

#pragma omp parallel for if (parallel) schedule(static)
  for (int e = 0; e < ne; ++e) {
    element_k[e] = solid_element_stiffness(element_coords(mesh, e), material);
  }

  std::vector<Triplet> trips;
  trips.reserve(static_cast<size_t>(ne) * 24 * 24);
  for (int e = 0; e < ne; ++e) {
    const auto& elem = mesh.elements[e];
    for (int a = 0; a < 8; ++a) {
      for (int b = 0; b < 8; ++b) {
        for (int i = 0; i < 3; ++i) {
          for (int j = 0; j < 3; ++j) {
            trips.emplace_back(3 * elem[a] + i, 3 * elem[b] + j,
                               element_k[e](3 * a + i, 3 * b + j));
          }
        }
      }
    }
  }

  SpMat k(3 * mesh.node_count(), 3 * mesh.node_count());
  k.setFromTriplets(trips.begin(), trips.end());
  return k;
}

VecX solid_load_vector(const Mesh& mesh, const SolidLoads& loads,
                       const std::string& interface_face_set) {
  VecX f = VecX::Zero(3 * mesh.node_count());

  if (!loads.body_force.isZero(0.0)) {
    for (int e = 0; e < mesh.element_count(); ++e) {
      const auto coords = element_coords(mesh, e);
      const auto& elem = mesh.elements[e];
      for (const Vec3& xi : hex8::gauss_points()) {
        const auto n = hex8::shape(xi);
        const auto dn = hex8::shape_gradients(xi);
        Mat3 jac = Mat3::Zero();
        for (int a = 0; a < 8; ++a) jac += coords[a] * dn.row(a);
        const double det = jac.determinant();
        if (!(det > 0.0)) {
          throw GeometryError("solid_load_vector: inverted element");
        }
        for (int a = 0; a < 8; ++a) {
          f.segment<3>(3 * elem[a]) += n[a] * det * loads.body_force;
        }
      }
    }
  }

  const std::vector<FaceRef>* interface_faces = nullptr;
  if (!interface_face_set.empty()) {
    const auto it = mesh.face_sets.find(interface_face_set);
    if (it != mesh.face_sets.end()) interface_faces = &it->second;
  }

  const double g = hex8::kGauss;
  const std::array<std::array<double, 2>, 4> qp_coords{
      {{-g, -g}, {g, -g}, {g, g}, {-g, g}}};

  for (const auto& traction : loads.tractions) {
    const auto it = mesh.face_sets.find(traction.face_set);
    if (it == mesh.face_sets.end()) {
      throw ConfigError("solid_load_vector: unknown traction face set '" +
                        traction.face_set + "'");
    }
    if (interface_faces != nullptr) {
      for (const auto& face : it->second) {
        if (std::find(interface_faces->begin(), interface_faces->end(), face) !=
            interface_faces->end()) {
          throw ConfigError(
              "solid_load_vector: traction applied on the interface surface");
        }
      }
    }
    for (const auto& face : it->second) {
      const auto nodes = face_nodes(mesh, face);
      std::array<Vec3, 4> coords;
      for (int i = 0; i < 4; ++i) coords[i] = mesh.nodes[nodes[i]];
      for (const auto& [a, b] : qp_coords) {
        const auto n = hex8::face_shape(a, b);
        const auto dn = hex8::face_shape_gradients(a, b);
        Vec3 t1 = Vec3::Zero(), t2 = Vec3::Zero();
        for (int i = 0; i < 4; ++i) {
          t1 += dn(i, 0) * coords[i];
          t2 += dn(i, 1) * coords[i];
        }
        const double dA = t1.cross(t2).norm();
        for (int i = 0; i < 4; ++i) {
          f.segment<3>(3 * nodes[i]) += n[i] * dA * traction.traction;
        }
      }
    }
  }
  return f;
}

namespace {

SpMat scalar_gram(const Mesh& mesh, double mass_weight, double grad_weight) {
  std::vector<Triplet> trips;
  trips.reserve(static_cast<size_t>(mesh.element_count()) * 24 * 24);
  for (int e = 0; e < mesh.element_count(); ++e) {
    const auto coords = element_coords(mesh, e);
    const auto& elem = mesh.elements[e];
    for (const Vec3& xi : hex8::gauss_points()) {
      const auto n = hex8::shape(xi);
      const auto dn = hex8::shape_gradients(xi);
      Mat3 jac = Mat3::Zero();
      for (int a = 0; a < 8; ++a) jac += coords[a] * dn.row(a);
      const double det = jac.determinant();
      if (!(det > 0.0)) {
        throw GeometryError("gram assembly: inverted element");
      }
      const Eigen::Matrix<double, 8, 3> grad = dn * jac.inverse();
      for (int a = 0; a < 8; ++a) {
        for (int b = 0; b < 8; ++b) {
          const double s =
              (mass_weight * n[a] * n[b] + grad_weight * grad.row(a).dot(grad.row(b))) *
              det;
          for (int c = 0; c < 3; ++c) {
            trips.emplace_back(3 * elem[a] + c, 3 * elem[b] + c, s);
          }
        }
      }
    }
  }
  SpMat gram(3 * mesh.node_count(), 3 * mesh.node_count());
  gram.setFromTriplets(trips.begin(), trips.end());
  return gram;
}

}  // namespace

SpMat u_norm_gram(const Mesh& mesh, double characteristic_length) {
  if (!(characteristic_length > 0.0)) {
    throw std::invalid_argument("u_norm_gram: characteristic length must be positive");
  }
  return scalar_gram(mesh, 1.0, characteristic_length * characteristic_length);
}

SpMat l2_gram(const Mesh& mesh) { return scalar_gram(mesh, 1.0, 0.0); }

}  // namespace beamsolid
