#include "beamsolid/beam.hpp"

#include <cmath>

namespace beamsolid {

BeamStrains beam_strains(const Vec3& w_prime, const Vec3& theta,
                         const Vec3& theta_prime, const Vec3& tangent,
                         const Mat3& rotation) {
  BeamStrains strains;
  strains.gamma = rotation.transpose() * (w_prime - theta.cross(tangent));
  strains.omega = rotation.transpose() * theta_prime;
  return strains;
}

namespace {

// Exact shear-flexible bending block for DOFs (v, psi, v, psi) with the
// kinematic relation gamma = v' - psi; phi = 12 EI / (G As h^2).
Eigen::Matrix4d bending_block(double h, double ei, double gas) {
  const double phi = 12.0 * ei / (gas * h * h);
  const double c = ei / ((1.0 + phi) * h * h * h);
  Eigen::Matrix4d k;
  const double h2 = h * h;
  k << 12.0, 6.0 * h, -12.0, 6.0 * h,
      6.0 * h, (4.0 + phi) * h2, -6.0 * h, (2.0 - phi) * h2,
      -12.0, -6.0 * h, 12.0, -6.0 * h,
      6.0 * h, (2.0 - phi) * h2, -6.0 * h, (4.0 + phi) * h2;
  return c * k;
}

void scatter_block(BeamElementMatrix& k, const Eigen::Matrix4d& block,
                   const std::array<int, 4>& dofs, const std::array<double, 4>& sign) {
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) {
      k(dofs[i], dofs[j]) += sign[i] * sign[j] * block(i, j);
    }
  }
}

SpMat drop_clamped(const SpMat& full) {
  std::vector<Triplet> trips;
  for (int c = 0; c < full.outerSize(); ++c) {
    for (SpMat::InnerIterator it(full, c); it; ++it) {
      if (it.row() >= 6 && it.col() >= 6) {
        trips.emplace_back(it.row() - 6, it.col() - 6, it.value());
      }
    }
  }
  SpMat reduced(full.rows() - 6, full.cols() - 6);
  reduced.setFromTriplets(trips.begin(), trips.end());
  return reduced;
}

VecX full_load_vector(const BeamModel& beam, const BeamLoads& loads) {
  const int n_nodes = beam.node_count();
  VecX f = VecX::Zero(6 * n_nodes);
  const double h = beam.element_length();
  for (int e = 0; e < beam.n_elements; ++e) {
    for (int local = 0; local < 2; ++local) {
      f.segment<3>(6 * (e + local)) += 0.5 * h * loads.distributed_force;
      f.segment<3>(6 * (e + local) + 3) += 0.5 * h * loads.distributed_moment;
    }
  }
  f.segment<3>(6 * (n_nodes - 1)) += loads.tip_force;
  f.segment<3>(6 * (n_nodes - 1) + 3) += loads.tip_moment;
  return f;
}

}  // namespace

BeamElementMatrix beam_element_stiffness(double h, const BeamSection& section,
                                         const Mat3& rotation) {
  if (!(h > 0.0)) {
    throw std::invalid_argument("beam_element_stiffness: element length must be positive");
  }
  section.validate();

  BeamElementMatrix k_local = BeamElementMatrix::Zero();

  // Axial (w3) and torsion (theta3): linear 2-node bars.
  const double ea_h = section.E * section.A / h;
  const double git_h = section.G * section.It / h;
  for (auto [dof, stiff] : {std::pair{2, ea_h}, std::pair{5, git_h}}) {
    k_local(dof, dof) += stiff;
    k_local(dof + 6, dof + 6) += stiff;
    k_local(dof, dof + 6) -= stiff;
    k_local(dof + 6, dof) -= stiff;
  }

  // Bending plane (w1, theta2): gamma_1 = w1' - theta2.
  scatter_block(k_local,
                bending_block(h, section.E * section.I2, section.G * section.A1),
                {0, 4, 6, 10}, {1.0, 1.0, 1.0, 1.0});
  // Bending plane (w2, theta1): gamma_2 = w2' + theta1, so psi = -theta1.
  scatter_block(k_local,
                bending_block(h, section.E * section.I1, section.G * section.A2),
                {1, 3, 7, 9}, {1.0, -1.0, 1.0, -1.0});

  BeamElementMatrix t = BeamElementMatrix::Zero();
  for (int b = 0; b < 4; ++b) {
    t.block<3, 3>(3 * b, 3 * b) = rotation;
  }
  return t * k_local * t.transpose();
}

SpMat beam_full_stiffness(const BeamModel& beam) {
  const BeamElementMatrix k_e = beam_element_stiffness(
      beam.element_length(), beam.section, beam.reference_rotation);

  std::vector<Triplet> trips;
  trips.reserve(static_cast<size_t>(beam.n_elements) * 144);
  for (int e = 0; e < beam.n_elements; ++e) {
    const int base = 6 * e;
    for (int i = 0; i < 12; ++i) {
      for (int j = 0; j < 12; ++j) {
        trips.emplace_back(base + i, base + j, k_e(i, j));
      }
    }
  }
  SpMat k(6 * beam.node_count(), 6 * beam.node_count());
  k.setFromTriplets(trips.begin(), trips.end());
  return k;
}

SpMat assemble_beam(const BeamModel& beam) {
  return drop_clamped(beam_full_stiffness(beam));
}

VecX beam_load_vector(const BeamModel& beam, const BeamLoads& loads) {
  return full_load_vector(beam, loads).tail(6 * (beam.node_count() - 1));
}

SpMat beam_norm_gram(const BeamModel& beam, double characteristic_length) {
  if (!(characteristic_length > 0.0)) {
    throw std::invalid_argument("beam_norm_gram: characteristic length must be positive");
  }
  const double L2 = characteristic_length * characteristic_length;
  const double h = beam.element_length();

  Eigen::Matrix2d mass, stiff;
  mass << 2.0, 1.0, 1.0, 2.0;
  mass *= h / 6.0;
  stiff << 1.0, -1.0, -1.0, 1.0;
  stiff /= h;

  const Eigen::Matrix2d h1 = mass + L2 * stiff;  // per-component H1 block

  std::vector<Triplet> trips;
  for (int e = 0; e < beam.n_elements; ++e) {
    for (int i = 0; i < 2; ++i) {
      for (int j = 0; j < 2; ++j) {
        for (int c = 0; c < 3; ++c) {
          trips.emplace_back(6 * (e + i) + c, 6 * (e + j) + c, h1(i, j));
          trips.emplace_back(6 * (e + i) + 3 + c, 6 * (e + j) + 3 + c,
                             L2 * h1(i, j));
        }
      }
    }
  }
  SpMat gram(6 * beam.node_count(), 6 * beam.node_count());
  gram.setFromTriplets(trips.begin(), trips.end());
  return drop_clamped(gram);
}

std::pair<Vec3, Vec3> clamp_reactions(const BeamModel& beam,
                                      const VecX& reduced_state,
                                      const BeamLoads& loads) {
  VecX full = VecX::Zero(6 * beam.node_count());
  full.tail(reduced_state.size()) = reduced_state;
  const VecX residual = beam_full_stiffness(beam) * full - full_load_vector(beam, loads);
  return {residual.segment<3>(0), residual.segment<3>(3)};
}

}  // namespace beamsolid
