#pragma once

#include <Eigen/Dense>
#include <Eigen/Sparse>

#include <stdexcept>
#include <string>

namespace beamsolid {

using Vec3 = Eigen::Vector3d;
using Mat3 = Eigen::Matrix3d;
using Vec6 = Eigen::Matrix<double, 6, 1>;
using Mat6 = Eigen::Matrix<double, 6, 6>;
using VecX = Eigen::VectorXd;
using MatX = Eigen::MatrixXd;
using SpMat = Eigen::SparseMatrix<double>;
using Triplet = Eigen::Triplet<double>;

/// Degenerate or inverted geometry (non-positive Jacobian, zero face metric, ...).
class GeometryError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Invalid model or scenario configuration.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The assembled system violates a well-posedness requirement
/// (singular factorization, rank-deficient constraint block, ...).
class WellPosednessError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Skew tensor of v: skew(v) * x == v.cross(x).
inline Mat3 skew(const Vec3& v) {
  Mat3 m;
  m << 0.0, -v.z(), v.y(),
       v.z(), 0.0, -v.x(),
      -v.y(), v.x(), 0.0;
  return m;
}

/// Axial vector of the skew part of m; inverse of skew() on skew tensors.
inline Vec3 axial(const Mat3& m) {
  return 0.5 * Vec3(m(2, 1) - m(1, 2), m(0, 2) - m(2, 0), m(1, 0) - m(0, 1));
}

/// Right-handed orthonormal frame whose third column is the unit tangent.
/// The first two columns are a deterministic completion, used as section
/// principal directions when none are prescribed.
inline Mat3 axis_frame(const Vec3& tangent) {
  const Vec3 t = tangent.normalized();
  Vec3 ref = std::abs(t.x()) < 0.9 ? Vec3::UnitX() : Vec3::UnitY();
  Vec3 d1 = (ref - ref.dot(t) * t).normalized();
  Vec3 d2 = t.cross(d1);
  Mat3 frame;
  frame.col(0) = d1;
  frame.col(1) = d2;
  frame.col(2) = t;
  return frame;
}

/// Contiguous row slice [begin, end) of a sparse matrix.
inline SpMat take_rows(const SpMat& a, int begin, int end) {
  SpMat out(end - begin, a.cols());
  std::vector<Triplet> trips;
  for (int k = 0; k < a.outerSize(); ++k) {
    for (SpMat::InnerIterator it(a, k); it; ++it) {
      if (it.row() >= begin && it.row() < end) {
        trips.emplace_back(it.row() - begin, it.col(), it.value());
      }
    }
  }
  out.setFromTriplets(trips.begin(), trips.end());
  return out;
}

}  // namespace beamsolid
