#pragma once

#include "beamsolid/types.hpp"

#include <array>

namespace beamsolid::hex8 {

// Reference cube [-1,1]^3, node a at (kXi[a], kEta[a], kZeta[a]).
inline constexpr std::array<double, 8> kXi{-1, 1, 1, -1, -1, 1, 1, -1};
inline constexpr std::array<double, 8> kEta{-1, -1, 1, 1, -1, -1, 1, 1};
inline constexpr std::array<double, 8> kZeta{-1, -1, -1, -1, 1, 1, 1, 1};

// Local faces, node sequence oriented so T_1 x T_2 points outward.
// Order: -z, +z, -y, +x, +y, -x.
inline constexpr std::array<std::array<int, 4>, 6> kFaceNodes{{
    {0, 3, 2, 1},  // zeta = -1
    {4, 5, 6, 7},  // zeta = +1
    {0, 1, 5, 4},  // eta  = -1
    {1, 2, 6, 5},  // xi   = +1
    {2, 3, 7, 6},  // eta  = +1
    {3, 0, 4, 7},  // xi   = -1
}};

inline constexpr double kGauss = 0.5773502691896257;  // 1/sqrt(3)

inline Eigen::Matrix<double, 8, 1> shape(const Vec3& xi) {
  Eigen::Matrix<double, 8, 1> n;
  for (int a = 0; a < 8; ++a) {
    n[a] = 0.125 * (1.0 + kXi[a] * xi.x()) * (1.0 + kEta[a] * xi.y()) *
           (1.0 + kZeta[a] * xi.z());
  }
  return n;
}

/// dN[a][j] = dN_a / dxi_j on the reference cube.
inline Eigen::Matrix<double, 8, 3> shape_gradients(const Vec3& xi) {
  Eigen::Matrix<double, 8, 3> d;
  for (int a = 0; a < 8; ++a) {
    d(a, 0) = 0.125 * kXi[a] * (1.0 + kEta[a] * xi.y()) * (1.0 + kZeta[a] * xi.z());
    d(a, 1) = 0.125 * kEta[a] * (1.0 + kXi[a] * xi.x()) * (1.0 + kZeta[a] * xi.z());
    d(a, 2) = 0.125 * kZeta[a] * (1.0 + kXi[a] * xi.x()) * (1.0 + kEta[a] * xi.y());
  }
  return d;
}

/// 2x2x2 Gauss points of the reference cube, all with unit weight.
inline std::array<Vec3, 8> gauss_points() {
  std::array<Vec3, 8> pts;
  int q = 0;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      for (int k = 0; k < 2; ++k)
        pts[q++] = Vec3((i ? kGauss : -kGauss), (j ? kGauss : -kGauss),
                        (k ? kGauss : -kGauss));
  return pts;
}

// Bilinear face map on [-1,1]^2; node a at (kFaceXi[a], kFaceEta[a]).
inline constexpr std::array<double, 4> kFaceXi{-1, 1, 1, -1};
inline constexpr std::array<double, 4> kFaceEta{-1, -1, 1, 1};

inline Eigen::Matrix<double, 4, 1> face_shape(double a, double b) {
  Eigen::Matrix<double, 4, 1> n;
  for (int i = 0; i < 4; ++i) {
    n[i] = 0.25 * (1.0 + kFaceXi[i] * a) * (1.0 + kFaceEta[i] * b);
  }
  return n;
}

/// dN[i][alpha] = dN_i / dxi^alpha on the reference square.
inline Eigen::Matrix<double, 4, 2> face_shape_gradients(double a, double b) {
  Eigen::Matrix<double, 4, 2> d;
  for (int i = 0; i < 4; ++i) {
    d(i, 0) = 0.25 * kFaceXi[i] * (1.0 + kFaceEta[i] * b);
    d(i, 1) = 0.25 * kFaceEta[i] * (1.0 + kFaceXi[i] * a);
  }
  return d;
}

}  // namespace beamsolid::hex8
