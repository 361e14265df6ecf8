#pragma once

// Test-only reference computations, independent of the library's quadrature
// and assembly paths.

#include "beamsolid/geometry.hpp"
#include "beamsolid/hex8.hpp"
#include "beamsolid/solid.hpp"
#include "beamsolid/types.hpp"

#include <functional>
#include <random>

namespace oracles {

using beamsolid::Mat3;
using beamsolid::MatX;
using beamsolid::Vec3;
using beamsolid::VecX;

struct SurfacePoint {
  std::array<int, 4> nodes;
  Eigen::Matrix<double, 4, 1> shape;
  Eigen::Matrix<double, 4, 2> dshape;
  Vec3 x;
  Vec3 tangent[2];
  Vec3 dual[2];
  double dA;
};

/// Midpoint-rule quadrature over m x m subcells of each face of a face set.
/// Refined enough, this converges to the exact surface integral for any
/// smooth integrand of the bilinear face map.
inline void subdivided_surface_quadrature(
    const beamsolid::Mesh& mesh, const std::string& face_set, int subdivisions,
    const std::function<void(const SurfacePoint&)>& visit) {
  const auto& faces = mesh.face_sets.at(face_set);
  for (const auto& face : faces) {
    const auto nodes = beamsolid::face_nodes(mesh, face);
    std::array<Vec3, 4> coords;
    for (int i = 0; i < 4; ++i) coords[i] = mesh.nodes[nodes[i]];

    const double h = 2.0 / subdivisions;
    for (int i = 0; i < subdivisions; ++i) {
      for (int j = 0; j < subdivisions; ++j) {
        const double a = -1.0 + (i + 0.5) * h;
        const double b = -1.0 + (j + 0.5) * h;

        SurfacePoint p;
        p.nodes = nodes;
        p.shape = beamsolid::hex8::face_shape(a, b);
        p.dshape = beamsolid::hex8::face_shape_gradients(a, b);
        p.x = Vec3::Zero();
        p.tangent[0] = p.tangent[1] = Vec3::Zero();
        for (int k = 0; k < 4; ++k) {
          p.x += p.shape[k] * coords[k];
          p.tangent[0] += p.dshape(k, 0) * coords[k];
          p.tangent[1] += p.dshape(k, 1) * coords[k];
        }
        Eigen::Matrix2d metric;
        metric << p.tangent[0].dot(p.tangent[0]), p.tangent[0].dot(p.tangent[1]),
            p.tangent[1].dot(p.tangent[0]), p.tangent[1].dot(p.tangent[1]);
        const Eigen::Matrix2d inv = metric.inverse();
        for (int alpha = 0; alpha < 2; ++alpha) {
          p.dual[alpha] = inv(alpha, 0) * p.tangent[0] + inv(alpha, 1) * p.tangent[1];
        }
        p.dA = std::sqrt(metric.determinant()) * h * h;
        visit(p);
      }
    }
  }
}

/// Brute-force J: quadrature of (2I - T^alpha x T_alpha) by subdivision.
inline Mat3 brute_force_J(const beamsolid::Mesh& mesh, const std::string& face_set,
                          int subdivisions = 16) {
  Mat3 j = Mat3::Zero();
  subdivided_surface_quadrature(mesh, face_set, subdivisions,
                                [&j](const SurfacePoint& p) {
                                  Mat3 projector = Mat3::Zero();
                                  for (int alpha = 0; alpha < 2; ++alpha) {
                                    projector +=
                                        p.dual[alpha] * p.tangent[alpha].transpose();
                                  }
                                  j += (2.0 * Mat3::Identity() - projector) * p.dA;
                                });
  return j;
}

/// Brute-force rotation measure: integral of T^alpha x u_,alpha over the set,
/// with u the FE interpolant of the given nodal vector.
inline Vec3 brute_force_rotation_measure(const beamsolid::Mesh& mesh,
                                         const std::string& face_set,
                                         const VecX& solid_u,
                                         int subdivisions = 16) {
  Vec3 measure = Vec3::Zero();
  subdivided_surface_quadrature(
      mesh, face_set, subdivisions, [&](const SurfacePoint& p) {
        Vec3 du[2] = {Vec3::Zero(), Vec3::Zero()};
        for (int a = 0; a < 4; ++a) {
          const Vec3 u_a = solid_u.segment<3>(3 * p.nodes[a]);
          du[0] += p.dshape(a, 0) * u_a;
          du[1] += p.dshape(a, 1) * u_a;
        }
        for (int alpha = 0; alpha < 2; ++alpha) {
          measure += p.dual[alpha].cross(du[alpha]) * p.dA;
        }
      });
  return measure;
}

/// Element-by-element scatter into a dense matrix, independent of the sparse
/// assembly path.
inline MatX dense_solid_assembly(const beamsolid::Mesh& mesh,
                                 const beamsolid::SolidMaterial& material) {
  MatX k = MatX::Zero(3 * mesh.node_count(), 3 * mesh.node_count());
  for (int e = 0; e < mesh.element_count(); ++e) {
    const auto k_e =
        beamsolid::solid_element_stiffness(beamsolid::element_coords(mesh, e),
                                           material);
    const auto& elem = mesh.elements[e];
    for (int a = 0; a < 8; ++a) {
      for (int b = 0; b < 8; ++b) {
        k.block<3, 3>(3 * elem[a], 3 * elem[b]) += k_e.block<3, 3>(3 * a, 3 * b);
      }
    }
  }
  return k;
}

inline std::mt19937& rng(unsigned seed = 0x5eed) {
  static std::mt19937 gen(seed);
  return gen;
}

inline Vec3 random_vec3(std::mt19937& gen, double scale = 1.0) {
  std::uniform_real_distribution<double> dist(-scale, scale);
  return Vec3(dist(gen), dist(gen), dist(gen));
}

inline VecX random_vector(std::mt19937& gen, Eigen::Index size, double scale = 1.0) {
  std::uniform_real_distribution<double> dist(-scale, scale);
  VecX v(size);
  for (Eigen::Index i = 0; i < size; ++i) v[i] = dist(gen);
  return v;
}

}  // namespace oracles
