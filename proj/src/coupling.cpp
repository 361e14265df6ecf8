#include "beamsolid/coupling.hpp"

#include <Eigen/SVD>

#include <sstream>

namespace beamsolid {

SpMat displacement_constraint_rows(const InterfaceSurface& surface,
                                   const DofLayout& layout) {
  if (surface.quad_points.empty()) {
    throw GeometryError("displacement_constraint_rows: empty surface");
  }
  std::vector<Triplet> trips;
  for (const auto& qp : surface.quad_points) {
    for (int a = 0; a < 4; ++a) {
      const double w = qp.shape[a] * qp.dA;
      for (int c = 0; c < 3; ++c) {
        trips.emplace_back(c, layout.solid_dof(qp.nodes[a], c), w);
      }
    }
  }
  for (int c = 0; c < 3; ++c) {
    trips.emplace_back(c, layout.tip_w_dof(c), -surface.area);
  }
  SpMat rows(3, layout.primal_dofs());
  rows.setFromTriplets(trips.begin(), trips.end());
  return rows;
}

SpMat rotation_constraint_rows(const InterfaceSurface& surface,
                               const DofLayout& layout) {
  if (surface.quad_points.empty()) {
    throw GeometryError("rotation_constraint_rows: empty surface");
  }
  std::vector<Triplet> trips;
  for (const auto& qp : surface.quad_points) {
    for (int a = 0; a < 4; ++a) {
      // T^alpha x u_a picks up dN_a/dxi^alpha from the surface gradient.
      const Mat3 block = (qp.dshape(a, 0) * skew(qp.dual[0]) +
                          qp.dshape(a, 1) * skew(qp.dual[1])) *
                         qp.dA;
      for (int r = 0; r < 3; ++r) {
        for (int c = 0; c < 3; ++c) {
          trips.emplace_back(r, layout.solid_dof(qp.nodes[a], c), block(r, c));
        }
      }
    }
  }
  for (int r = 0; r < 3; ++r) {
    for (int c = 0; c < 3; ++c) {
      trips.emplace_back(r, layout.tip_theta_dof(c), -surface.J(r, c));
    }
  }
  SpMat rows(3, layout.primal_dofs());
  rows.setFromTriplets(trips.begin(), trips.end());
  return rows;
}

ConstraintBlock assemble_B(const InterfaceSurface& surface, const DofLayout& layout) {
  const SpMat rotation = rotation_constraint_rows(surface, layout);
  const SpMat displacement = displacement_constraint_rows(surface, layout);

  std::vector<Triplet> trips;
  auto append = [&trips](const SpMat& rows, int offset) {
    for (int c = 0; c < rows.outerSize(); ++c) {
      for (SpMat::InnerIterator it(rows, c); it; ++it) {
        trips.emplace_back(it.row() + offset, it.col(), it.value());
      }
    }
  };
  append(rotation, 0);
  append(displacement, 3);

  ConstraintBlock block;
  block.B.resize(6, layout.primal_dofs());
  block.B.setFromTriplets(trips.begin(), trips.end());

  // Rank check on the 6 x N block via SVD of its transpose.
  const MatX bt = MatX(block.B).transpose();
  Eigen::BDCSVD<MatX> svd(bt, Eigen::ComputeThinV);
  const VecX sigma = svd.singularValues();
  const double tol = 1e-12 * sigma[0];
  if (sigma.minCoeff() <= tol) {
    std::ostringstream msg;
    msg << "assemble_B: constraint block is rank deficient; singular values";
    for (int i = 0; i < sigma.size(); ++i) msg << ' ' << sigma[i];
    msg << "; deficient row-space directions:";
    for (int i = 0; i < sigma.size(); ++i) {
      if (sigma[i] <= tol) {
        msg << " [" << svd.matrixV().col(i).transpose() << "]";
      }
    }
    throw WellPosednessError(msg.str());
  }
  return block;
}

Mat6 q_norm_gram(double characteristic_length) {
  if (!(characteristic_length > 0.0)) {
    throw std::invalid_argument("q_norm_gram: characteristic length must be positive");
  }
  Mat6 gram = Mat6::Identity();
  gram.topLeftCorner<3, 3>() /=
      characteristic_length * characteristic_length;
  return gram;
}

double skew_average_check(const InterfaceSurface& surface, const VecX& solid_u,
                          const Vec3& theta_star) {
  if (!surface.is_planar) {
    throw ConfigError(
        "skew_average_check: unsupported configuration, surface is not planar");
  }

  // integral of grad u = u_,alpha x T^alpha and of the tangential identity.
  Mat3 grad_integral = Mat3::Zero();
  Mat3 tangential_integral = Mat3::Zero();
  for (const auto& qp : surface.quad_points) {
    Vec3 du[2] = {Vec3::Zero(), Vec3::Zero()};
    for (int a = 0; a < 4; ++a) {
      const Vec3 u_a = solid_u.segment<3>(3 * qp.nodes[a]);
      du[0] += qp.dshape(a, 0) * u_a;
      du[1] += qp.dshape(a, 1) * u_a;
    }
    for (int alpha = 0; alpha < 2; ++alpha) {
      grad_integral += du[alpha] * qp.dual[alpha].transpose() * qp.dA;
      tangential_integral +=
          qp.tangent[alpha] * qp.dual[alpha].transpose() * qp.dA;
    }
  }

  const Mat3 lhs = 0.5 * (grad_integral - grad_integral.transpose());
  const Mat3 rhs_full = skew(theta_star) * tangential_integral;
  const Mat3 rhs = 0.5 * (rhs_full - rhs_full.transpose());
  return (axial(lhs) - axial(rhs)).norm();
}

}  // namespace beamsolid
